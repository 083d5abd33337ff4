#include "dot/mul.hpp"

#include <stdexcept>
#include <utility>

namespace dot {

// ============================================================
// Column pipeline
// ============================================================

ColumnBuffers gather_columns(const Limbs& a, const Limbs& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot mul: operand lengths differ (caller pads)");
    const std::size_t m = a.size();
    if (m == 0) throw std::invalid_argument("dot mul: operands need at least one limb");
    if (m > kMaxMulLimbs)
        throw std::invalid_argument("dot mul: limb count exceeds the column accumulator bound");

    ColumnBuffers buf;
    buf.m = m;
    buf.m_a.reserve(m * m);
    buf.m_b.reserve(m * m);
    for (std::size_t c = 0; c + 1 < 2 * m; ++c) {
        const std::size_t i_lo = c + 1 >= m ? c + 1 - m : 0;
        const std::size_t i_hi = std::min(c, m - 1);
        for (std::size_t i = i_lo; i <= i_hi; ++i) {
            buf.m_a.push_back(a[i]);
            buf.m_b.push_back(b[c - i]);
        }
    }
    buf.p_lo.assign(m * m, 0);
    buf.p_hi.assign(m * m, 0);
    buf.col_lo.assign(2 * m, 0);
    return buf;
}

void compute_partials(ColumnBuffers& buf, RadixConfig cfg, Width w) {
    check_radix(cfg);
    const unsigned k = cfg.limb_bits;
    const limb_t mask = cfg.limb_mask();
    const std::size_t total = buf.m_a.size();
    const std::size_t lanes = lane_count(w);
    for (std::size_t base = 0; base < total; base += lanes) {
        const std::size_t end = std::min(base + lanes, total);
        for (std::size_t t = base; t < end; ++t) {
            const u128 p = u128(buf.m_a[t]) * buf.m_b[t];
            buf.p_lo[t] = limb_t(p) & mask;
            buf.p_hi[t] = limb_t(p >> k);
        }
    }
}

std::span<const u128> align_and_reduce(ColumnBuffers& buf) {
    const std::size_t m = buf.m;
    std::fill(buf.col_lo.begin(), buf.col_lo.end(), u128(0));
    // Deposit both halves in one flat pass: the low half stays in its column,
    // the high half lands one column up. Slot 2m-1 only ever receives highs.
    std::size_t t = 0;
    for (std::size_t c = 0; c + 1 < 2 * m; ++c) {
        const std::size_t pairs = num_pairs(c, m);
        for (std::size_t p = 0; p < pairs; ++p, ++t) {
            buf.col_lo[c] += buf.p_lo[t];
            buf.col_lo[c + 1] += buf.p_hi[t];
        }
    }
    return {buf.col_lo.data(), buf.col_lo.size()};
}

Limbs carry_pass(std::span<const u128> columns, RadixConfig cfg) {
    check_radix(cfg);
    const unsigned k = cfg.limb_bits;
    const limb_t mask = cfg.limb_mask();
    Limbs out;
    out.reserve(columns.size() + 2);
    u128 carry = 0;
    for (const u128 col : columns) {
        const u128 v = col + carry;
        // col + carry can exceed 128 bits for extreme raw columns; fold the
        // wrapped bit back in at weight 2^(128-k).
        const u128 wrapped = v < col ? u128(1) << (128 - k) : u128(0);
        out.push_back(limb_t(v) & mask);
        carry = (v >> k) + wrapped;
    }
    while (carry != 0) {
        out.push_back(limb_t(carry) & mask);
        carry >>= k;
    }
    return out;
}

// ============================================================
// Products
// ============================================================

Limbs dot_mul_words(const Limbs& a, const Limbs& b, RadixConfig cfg, Width w) {
    check_radix(cfg);
    check_limbs(a, cfg);
    check_limbs(b, cfg);
    ColumnBuffers buf = gather_columns(a, b);
    compute_partials(buf, cfg, w);
    return carry_pass(align_and_reduce(buf), cfg);
}

namespace {

struct PairIdx {
    unsigned char i, j;
};

// The 25 pairs of the 5x5 product in column order (i + j ascending, i
// ascending within a column), frozen at compile time.
constexpr PairIdx k5x5Pairs[25] = {
    {0, 0},                                  // c = 0
    {0, 1}, {1, 0},                          // c = 1
    {0, 2}, {1, 1}, {2, 0},                  // c = 2
    {0, 3}, {1, 2}, {2, 1}, {3, 0},          // c = 3
    {0, 4}, {1, 3}, {2, 2}, {3, 1}, {4, 0},  // c = 4
    {1, 4}, {2, 3}, {3, 2}, {4, 1},          // c = 5
    {2, 4}, {3, 3}, {4, 2},                  // c = 6
    {3, 4}, {4, 3},                          // c = 7
    {4, 4},                                  // c = 8
};

}  // namespace

Limbs dot_mul_5x5(const Limbs& a, const Limbs& b) {
    if (a.size() != 5 || b.size() != 5)
        throw std::invalid_argument("dot mul 5x5: operands must be exactly 5 limbs");
    check_limbs(a, kUnsaturated);
    check_limbs(b, kUnsaturated);

    constexpr unsigned k = 52;
    constexpr limb_t mask = (limb_t(1) << k) - 1;
    u128 col[10] = {};
    for (const PairIdx e : k5x5Pairs) {
        const u128 p = u128(a[e.i]) * b[e.j];
        col[e.i + e.j] += limb_t(p) & mask;
        col[e.i + e.j + 1] += limb_t(p >> k);
    }
    Limbs out(10);
    u128 carry = 0;
    for (unsigned c = 0; c < 10; ++c) {
        const u128 v = col[c] + carry;
        out[c] = limb_t(v) & mask;
        carry = v >> k;
    }
    // A 260x260-bit product fits the 520 bits of 10 unsaturated limbs.
    return out;
}

Limbs dot_mul_4x4(const Limbs& a, const Limbs& b) {
    if (a.size() != 4 || b.size() != 4)
        throw std::invalid_argument("dot mul 4x4: operands must be exactly 4 limbs");
    const Limbs prod = dot_mul_5x5(pack_64_to_52(a), pack_64_to_52(b));
    Limbs out = unpack_52_to_64(prod);
    out.resize(8, 0);
    return out;
}

// ============================================================
// Karatsuba recursion
// ============================================================

namespace {

// out[at..] += v with the final carry rippled onward. The combinations below
// always fit inside out, so the carry dies before the end.
void add_at(Limbs& out, const Limbs& v, std::size_t at) {
    const std::span<limb_t> win(out.data() + at, v.size());
    unsigned carry = dot_add_words(win, win, v);
    for (std::size_t i = at + v.size(); carry && i < out.size(); ++i)
        carry = ++out[i] == 0 ? 1u : 0u;
}

// Equal-length operands; returns exactly 2 * a.size() limbs.
Limbs kara_rec(Limbs a, Limbs b, const std::size_t theta) {
    const std::size_t m_in = a.size();
    if (m_in <= theta)
        return m_in == 4 ? dot_mul_4x4(a, b) : dot_mul_words(a, b);

    if (m_in & 1) {
        a.push_back(0);
        b.push_back(0);
    }
    const std::size_t m = a.size();
    const std::size_t half = m / 2;
    const Limbs a_lo(a.begin(), a.begin() + half);
    const Limbs a_hi(a.begin() + half, a.end());
    const Limbs b_lo(b.begin(), b.begin() + half);
    const Limbs b_hi(b.begin() + half, b.end());

    const Limbs p1 = kara_rec(a_hi, b_hi, theta);
    const Limbs p0 = kara_rec(a_lo, b_lo, theta);

    // |A_H - A_L| and |B_H - B_L|; the borrow-free direction fixes the sign.
    const int sx = compare(a_hi, a_lo);
    const int sy = compare(b_hi, b_lo);
    const Limbs dx = (sx >= 0 ? dot_sub_words(a_hi, a_lo) : dot_sub_words(a_lo, a_hi)).limbs;
    const Limbs dy = (sy >= 0 ? dot_sub_words(b_hi, b_lo) : dot_sub_words(b_lo, b_hi)).limbs;
    const Limbs pd = kara_rec(dx, dy, theta);

    // mid = P1 + P0 -+ PD = A_H*B_L + A_L*B_H, never negative and below
    // 2^(64*(m+1)), so the carry limb absorbs the intermediate overflow.
    WordsResult sum = dot_add_words(p1, p0);
    Limbs mid = std::move(sum.limbs);
    mid.push_back(sum.flag);
    mid = (sx * sy >= 0 ? dot_sub_words(mid, pd) : dot_add_words(mid, pd)).limbs;

    // P1 and P0 fill disjoint halves; mid lands shifted by one half.
    Limbs out(2 * m, 0);
    std::copy(p0.begin(), p0.end(), out.begin());
    std::copy(p1.begin(), p1.end(), out.begin() + m);
    add_at(out, mid, half);

    // Padding added for an odd split only ever holds zeros at the top.
    out.resize(2 * m_in, 0);
    return out;
}

}  // namespace

Limbs karatsuba_mul(const Limbs& a, const Limbs& b, KaratsubaConfig cfg) {
    if (cfg.theta < 1)
        throw std::invalid_argument("karatsuba: threshold must be at least 1");
    Limbs ta = normalized(a);
    Limbs tb = normalized(b);
    if (ta.empty() || tb.empty()) return {};
    const std::size_t m = std::max(ta.size(), tb.size());
    ta.resize(m, 0);
    tb.resize(m, 0);
    return normalized(kara_rec(std::move(ta), std::move(tb), cfg.theta));
}

}  // namespace dot
