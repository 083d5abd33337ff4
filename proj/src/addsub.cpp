#include "dot/addsub.hpp"

#include <stdexcept>

#include "kernels.hpp"

namespace dot {

namespace {

using detail::ChunkOut;
using detail::chunk_fn;
using detail::PhaseTimer;

// ------------------------------------------------------------
// Scalar lane emulation
// ------------------------------------------------------------
// Reference realization of the four phases on plain integers. Serves as the
// portability fallback and as the self-check target for the specialized
// kernels, which must match it bit for bit.
template <bool Sub, bool Timed>
ChunkOut chunk_generic(limb_t* out, const limb_t* a, const limb_t* b, unsigned carry_in,
                       unsigned t, AddSubStats* st) {
    PhaseTimer<Timed> pt(st);

    pt.start();
    limb_t av[8], bv[8];
    for (unsigned i = 0; i < t; ++i) {
        av[i] = a[i];
        bv[i] = b[i];
    }
    pt.lap(&AddSubStats::load_ticks);

    // Phase 1: lane-independent sums, wrap-around permitted.
    limb_t r[8];
    for (unsigned i = 0; i < t; ++i) r[i] = Sub ? av[i] - bv[i] : av[i] + bv[i];
    pt.lap(&AddSubStats::add_ticks);

    // Phase 2: collect lane carries, capture the chunk's outgoing bit from the
    // top lane, then realign the rest to the lanes they feed into.
    LaneMask c{0, t};
    for (unsigned i = 0; i < t; ++i)
        c.bits |= std::uint32_t(Sub ? av[i] < bv[i] : r[i] < av[i]) << i;
    unsigned flag_out = c.top_lane();
    c = c.shifted_in(carry_in);
    pt.lap(&AddSubStats::carry_gen_ticks);

    // Phase 3: apply the aligned carries lane-wise.
    limb_t f[8];
    for (unsigned i = 0; i < t; ++i)
        f[i] = Sub ? r[i] - limb_t(c.test(i)) : r[i] + limb_t(c.test(i));
    pt.lap(&AddSubStats::carry_add_ticks);

    // Secondary mask: lanes whose carry add itself wrapped.
    LaneMask sec{0, t};
    for (unsigned i = 0; i < t; ++i)
        sec.bits |= std::uint32_t(Sub ? f[i] > r[i] : f[i] < r[i]) << i;
    const bool fired = sec.bits != 0;
    pt.lap(&AddSubStats::store_ticks);

    if (fired) {
        // Phase 4: a wrapped lane injects a carry one lane up; runs of
        // saturated lanes (all ones when adding, zero when subtracting)
        // propagate it. One integer addition of the two masks settles every
        // run at once; the xor recovers exactly the lanes to adjust, and bit
        // t is a carry that escaped past the top lane.
        const std::uint32_t inject = sec.bits << 1;
        std::uint32_t prop = 0;
        for (unsigned i = 0; i < t; ++i)
            prop |= std::uint32_t(Sub ? f[i] == 0 : f[i] == ~limb_t(0)) << i;
        const std::uint32_t settled = inject + prop;
        flag_out |= (settled >> t) & 1u;
        const std::uint32_t adjust = (settled ^ prop) & ((1u << t) - 1u);
        for (unsigned i = 0; i < t; ++i) {
            const limb_t bit = (adjust >> i) & 1u;
            f[i] = Sub ? f[i] - bit : f[i] + bit;
        }
        pt.lap(&AddSubStats::overflow_ticks);
    }

    for (unsigned i = 0; i < t; ++i) out[i] = f[i];
    pt.lap(&AddSubStats::store_ticks);
    return {flag_out, fired};
}

// ------------------------------------------------------------
// Dispatch
// ------------------------------------------------------------

chunk_fn resolve_full(Width w, bool sub, bool timed) {
#if defined(DOT_X86_KERNELS)
    switch (w) {
        case Width::w2:
            if (detail::cpu_has_sse42())
                return sub ? (timed ? detail::sub_chunk_sse42_timed : detail::sub_chunk_sse42)
                           : (timed ? detail::add_chunk_sse42_timed : detail::add_chunk_sse42);
            break;
        case Width::w4:
            if (detail::cpu_has_avx2())
                return sub ? (timed ? detail::sub_chunk_avx2_timed : detail::sub_chunk_avx2)
                           : (timed ? detail::add_chunk_avx2_timed : detail::add_chunk_avx2);
            break;
        case Width::w8:
            if (detail::cpu_has_avx512f())
                return sub ? (timed ? detail::sub_chunk_avx512_timed : detail::sub_chunk_avx512)
                           : (timed ? detail::add_chunk_avx512_timed : detail::add_chunk_avx512);
            break;
        default:
            break;
    }
#else
    (void)w;
#endif
    return sub ? (timed ? chunk_generic<true, true> : chunk_generic<true, false>)
               : (timed ? chunk_generic<false, true> : chunk_generic<false, false>);
}

// Partial trailing chunks: the 8-wide kernel has masked forms; the narrower
// ones fall back to the emulation, which is bit-identical by contract.
chunk_fn resolve_tail(Width w, bool sub, bool timed) {
    if (w == Width::w8) return resolve_full(w, sub, timed);
    return resolve_full(Width::scalar, sub, timed);
}

void validate_width(Width w) {
    switch (w) {
        case Width::scalar:
        case Width::w2:
        case Width::w4:
        case Width::w8:
            return;
    }
    throw std::invalid_argument("unknown width selector");
}

unsigned run_words(bool sub, std::span<limb_t> out, std::span<const limb_t> a,
                   std::span<const limb_t> b, Width w, AddSubStats* st) {
    validate_width(w);
    if (a.size() != b.size() || out.size() != a.size())
        throw std::invalid_argument("dot add/sub: operand lengths differ (caller pads)");

    const unsigned lanes = lane_count(w);
    const bool timed = st != nullptr && st->collect_ticks;
    const chunk_fn full = resolve_full(w, sub, timed);
    const chunk_fn tail = resolve_tail(w, sub, timed);

    unsigned carry = 0;
    std::uint64_t chunks = 0;
    std::uint64_t fires = 0;
    const std::size_t m = a.size();
    std::size_t i = 0;
    for (; i + lanes <= m; i += lanes) {
        const ChunkOut r = full(out.data() + i, a.data() + i, b.data() + i, carry, lanes, st);
        carry = r.carry;
        ++chunks;
        fires += r.phase4;
    }
    if (i < m) {
        const ChunkOut r =
            tail(out.data() + i, a.data() + i, b.data() + i, carry, unsigned(m - i), st);
        carry = r.carry;
        ++chunks;
        fires += r.phase4;
    }
    if (st != nullptr) {
        st->chunks_processed += chunks;
        st->phase4_triggers += fires;
    }
    return carry;
}

ChunkResult run_chunk(bool sub, std::span<const limb_t> a, std::span<const limb_t> b,
                      unsigned carry_in, unsigned w) {
    if (w < 1 || w > 8) throw std::invalid_argument("chunk width must be in 1..8");
    if (a.size() != w || b.size() != w)
        throw std::invalid_argument("chunk operands must have exactly w limbs");
    if (carry_in > 1) throw std::invalid_argument("carry_in must be 0 or 1");

    Width sel = Width::scalar;
    if (w == 2) sel = Width::w2;
    if (w == 4) sel = Width::w4;
    if (w == 8) sel = Width::w8;

    ChunkResult res;
    const ChunkOut r =
        resolve_full(sel, sub, false)(res.sums.data(), a.data(), b.data(), carry_in, w, nullptr);
    res.carry_out = r.carry;
    res.phase4_fired = r.phase4;
    return res;
}

WordsResult run_limbs(bool sub, const Limbs& a, const Limbs& b, Width w, AddSubStats* st) {
    const std::size_t m = std::max(a.size(), b.size());
    const Limbs* pa = &a;
    const Limbs* pb = &b;
    Limbs pad_a, pad_b;
    if (a.size() != m) {
        pad_a = a;
        pad_a.resize(m, 0);
        pa = &pad_a;
    }
    if (b.size() != m) {
        pad_b = b;
        pad_b.resize(m, 0);
        pb = &pad_b;
    }
    WordsResult res;
    res.limbs.resize(m);
    res.flag = run_words(sub, res.limbs, *pa, *pb, w, st);
    return res;
}

}  // namespace

// ------------------------------------------------------------
// Public surface
// ------------------------------------------------------------

std::string_view to_string(Width w) {
    switch (w) {
        case Width::scalar: return "scalar";
        case Width::w2: return "2";
        case Width::w4: return "4";
        case Width::w8: return "8";
    }
    return "?";
}

Width width_from_string(std::string_view s) {
    if (s == "scalar") return Width::scalar;
    if (s == "2") return Width::w2;
    if (s == "4") return Width::w4;
    if (s == "8") return Width::w8;
    throw std::invalid_argument("unknown width: expected one of 2, 4, 8, scalar");
}

std::string_view dispatch_note(Width w) {
#if defined(DOT_X86_KERNELS)
    switch (w) {
        case Width::w2:
            if (detail::cpu_has_sse42()) return "sse4.2";
            break;
        case Width::w4:
            if (detail::cpu_has_avx2()) return "avx2";
            break;
        case Width::w8:
            if (detail::cpu_has_avx512f()) return "avx512f";
            break;
        default:
            break;
    }
#else
    (void)w;
#endif
    return "generic";
}

double AddSubStats::carry_to_add_ratio() const {
    if (add_ticks == 0) return 0.0;
    const std::uint64_t carry_side =
        carry_gen_ticks + carry_add_ticks + store_ticks + overflow_ticks;
    return double(carry_side) / double(add_ticks);
}

void AddSubStats::merge(const AddSubStats& other) {
    chunks_processed += other.chunks_processed;
    phase4_triggers += other.phase4_triggers;
    load_ticks += other.load_ticks;
    add_ticks += other.add_ticks;
    carry_gen_ticks += other.carry_gen_ticks;
    carry_add_ticks += other.carry_add_ticks;
    store_ticks += other.store_ticks;
    overflow_ticks += other.overflow_ticks;
}

ChunkResult add_w_limbs(std::span<const limb_t> a, std::span<const limb_t> b,
                        unsigned carry_in, unsigned w) {
    return run_chunk(false, a, b, carry_in, w);
}

ChunkResult sub_w_limbs(std::span<const limb_t> a, std::span<const limb_t> b,
                        unsigned borrow_in, unsigned w) {
    return run_chunk(true, a, b, borrow_in, w);
}

unsigned dot_add_words(std::span<limb_t> out, std::span<const limb_t> a,
                       std::span<const limb_t> b, Width w, AddSubStats* stats) {
    return run_words(false, out, a, b, w, stats);
}

unsigned dot_sub_words(std::span<limb_t> out, std::span<const limb_t> a,
                       std::span<const limb_t> b, Width w, AddSubStats* stats) {
    return run_words(true, out, a, b, w, stats);
}

WordsResult dot_add_words(const Limbs& a, const Limbs& b, Width w, AddSubStats* stats) {
    return run_limbs(false, a, b, w, stats);
}

WordsResult dot_sub_words(const Limbs& a, const Limbs& b, Width w, AddSubStats* stats) {
    return run_limbs(true, a, b, w, stats);
}

}  // namespace dot
