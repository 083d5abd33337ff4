// 2-lane kernels, same construction as the 4-lane ones: sign-flipped signed
// compares stand in for unsigned ones and the two mask bits come from
// movemask on the compare result.
#include "kernels.hpp"

#if defined(DOT_X86_KERNELS)

#include <immintrin.h>

namespace dot::detail {

namespace {

inline std::uint32_t mask_of(__m128i cmp) {
    return static_cast<std::uint32_t>(_mm_movemask_pd(_mm_castsi128_pd(cmp)));
}

// x < y, both unsigned.
inline __m128i ltu(__m128i x, __m128i y) {
    const __m128i sign = _mm_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
    return _mm_cmpgt_epi64(_mm_xor_si128(y, sign), _mm_xor_si128(x, sign));
}

inline __m128i bits_of(std::uint32_t m) {
    return _mm_set_epi64x(static_cast<long long>((m >> 1) & 1u),
                          static_cast<long long>(m & 1u));
}

template <bool Sub, bool Timed>
ChunkOut chunk_sse42(limb_t* out, const limb_t* a, const limb_t* b, unsigned carry_in,
                     unsigned /*t = 2*/, AddSubStats* st) {
    PhaseTimer<Timed> pt(st);

    pt.start();
    const __m128i va = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a));
    const __m128i vb = _mm_loadu_si128(reinterpret_cast<const __m128i*>(b));
    pt.lap(&AddSubStats::load_ticks);

    const __m128i vr = Sub ? _mm_sub_epi64(va, vb) : _mm_add_epi64(va, vb);
    pt.lap(&AddSubStats::add_ticks);

    std::uint32_t c = Sub ? mask_of(ltu(va, vb)) : mask_of(ltu(vr, va));
    unsigned flag_out = (c >> 1) & 1u;
    c = ((c << 1) | carry_in) & 0x3u;
    pt.lap(&AddSubStats::carry_gen_ticks);

    __m128i vf = Sub ? _mm_sub_epi64(vr, bits_of(c)) : _mm_add_epi64(vr, bits_of(c));
    pt.lap(&AddSubStats::carry_add_ticks);

    const std::uint32_t sec = Sub ? mask_of(ltu(vr, vf)) : mask_of(ltu(vf, vr));
    const bool fired = sec != 0;
    pt.lap(&AddSubStats::store_ticks);

    if (fired) {
        const __m128i sentinel = Sub ? _mm_setzero_si128() : _mm_set1_epi64x(-1);
        const std::uint32_t prop = mask_of(_mm_cmpeq_epi64(vf, sentinel));
        const std::uint32_t settled = (sec << 1) + prop;
        flag_out |= (settled >> 2) & 1u;
        const std::uint32_t adjust = (settled ^ prop) & 0x3u;
        vf = Sub ? _mm_sub_epi64(vf, bits_of(adjust)) : _mm_add_epi64(vf, bits_of(adjust));
        pt.lap(&AddSubStats::overflow_ticks);
    }

    _mm_storeu_si128(reinterpret_cast<__m128i*>(out), vf);
    pt.lap(&AddSubStats::store_ticks);
    return {flag_out, fired};
}

}  // namespace

ChunkOut add_chunk_sse42(limb_t* out, const limb_t* a, const limb_t* b, unsigned carry_in,
                         unsigned t, AddSubStats* st) {
    return chunk_sse42<false, false>(out, a, b, carry_in, t, st);
}
ChunkOut sub_chunk_sse42(limb_t* out, const limb_t* a, const limb_t* b, unsigned carry_in,
                         unsigned t, AddSubStats* st) {
    return chunk_sse42<true, false>(out, a, b, carry_in, t, st);
}
ChunkOut add_chunk_sse42_timed(limb_t* out, const limb_t* a, const limb_t* b,
                               unsigned carry_in, unsigned t, AddSubStats* st) {
    return chunk_sse42<false, true>(out, a, b, carry_in, t, st);
}
ChunkOut sub_chunk_sse42_timed(limb_t* out, const limb_t* a, const limb_t* b,
                               unsigned carry_in, unsigned t, AddSubStats* st) {
    return chunk_sse42<true, true>(out, a, b, carry_in, t, st);
}

}  // namespace dot::detail

#endif  // DOT_X86_KERNELS
