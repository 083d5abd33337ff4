#include "dot/oracle.hpp"

#include <stdexcept>

namespace dot {

namespace {

void require_equal_lengths(const Limbs& a, const Limbs& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("oracle add/sub: operand lengths differ (caller pads)");
}

}  // namespace

WordsResult oracle_add(const Limbs& a, const Limbs& b) {
    require_equal_lengths(a, b);
    WordsResult out;
    out.limbs.resize(a.size());
    unsigned carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        limb_t r = a[i] + carry;
        unsigned c = r < limb_t(carry);
        r += b[i];
        c += r < b[i];
        out.limbs[i] = r;
        carry = c;  // c is 0 or 1: both wraps cannot happen for one limb
    }
    out.flag = carry;
    return out;
}

WordsResult oracle_sub(const Limbs& a, const Limbs& b) {
    require_equal_lengths(a, b);
    WordsResult out;
    out.limbs.resize(a.size());
    unsigned borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        limb_t r = a[i] - borrow;
        unsigned bw = r > a[i];
        bw += r < b[i];
        r -= b[i];
        out.limbs[i] = r;
        borrow = bw;
    }
    out.flag = borrow;
    return out;
}

Limbs oracle_mul(const Limbs& a, const Limbs& b) {
    if (a.empty() || b.empty()) return {};
    Limbs out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        limb_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const u128 t = u128(a[i]) * b[j] + out[i + j] + carry;
            out[i + j] = static_cast<limb_t>(t);
            carry = static_cast<limb_t>(t >> 64);
        }
        out[i + b.size()] = carry;
    }
    return normalized(std::move(out));
}

CensusCounts carry_census(unsigned k) {
    if (k < 1 || k > 16) throw std::invalid_argument("carry_census: k must be in 1..16");
    const std::uint64_t n = std::uint64_t(1) << k;
    const std::uint64_t max = n - 1;
    CensusCounts counts;
    for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t y = 0; y < n; ++y) {
            const std::uint64_t s = x + y;
            counts.max_sum_pairs += s == max;
            counts.carry_pairs += s >= n;
        }
    }
    return counts;
}

}  // namespace dot
