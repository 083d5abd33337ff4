// 8-lane kernels. Carry and propagate masks live in 8-bit mask registers, so
// phases 2 and 4 are a handful of scalar bit operations between vector steps.
// Partial chunks (t < 8) use masked loads/stores over the same code path.
#include "kernels.hpp"

#if defined(DOT_X86_KERNELS)

#include <immintrin.h>

namespace dot::detail {

namespace {

template <bool Sub, bool Timed>
ChunkOut chunk_avx512(limb_t* out, const limb_t* a, const limb_t* b, unsigned carry_in,
                      unsigned t, AddSubStats* st) {
    PhaseTimer<Timed> pt(st);
    const std::uint32_t lane_bits = (t >= 8) ? 0xFFu : ((1u << t) - 1u);
    const __mmask8 lanes = static_cast<__mmask8>(lane_bits);

    pt.start();
    const __m512i va = _mm512_maskz_loadu_epi64(lanes, a);
    const __m512i vb = _mm512_maskz_loadu_epi64(lanes, b);
    pt.lap(&AddSubStats::load_ticks);

    const __m512i vr = Sub ? _mm512_sub_epi64(va, vb) : _mm512_add_epi64(va, vb);
    pt.lap(&AddSubStats::add_ticks);

    std::uint32_t c = Sub ? _mm512_mask_cmplt_epu64_mask(lanes, va, vb)
                          : _mm512_mask_cmplt_epu64_mask(lanes, vr, va);
    unsigned flag_out = (c >> (t - 1)) & 1u;
    c = ((c << 1) | carry_in) & lane_bits;
    pt.lap(&AddSubStats::carry_gen_ticks);

    const __m512i ones = _mm512_set1_epi64(1);
    __m512i vf = Sub ? _mm512_mask_sub_epi64(vr, static_cast<__mmask8>(c), vr, ones)
                     : _mm512_mask_add_epi64(vr, static_cast<__mmask8>(c), vr, ones);
    pt.lap(&AddSubStats::carry_add_ticks);

    const std::uint32_t sec = Sub ? _mm512_mask_cmpgt_epu64_mask(lanes, vf, vr)
                                  : _mm512_mask_cmplt_epu64_mask(lanes, vf, vr);
    const bool fired = sec != 0;
    pt.lap(&AddSubStats::store_ticks);

    if (fired) {
        // Lanes that absorb and forward a carry: all-ones when adding, zero
        // when subtracting. The lane pre-mask keeps inactive tail lanes
        // (zeroed by the masked load) out of the subtraction propagate mask.
        const __m512i sentinel = Sub ? _mm512_setzero_si512() : _mm512_set1_epi64(-1);
        const std::uint32_t prop = _mm512_mask_cmpeq_epi64_mask(lanes, vf, sentinel);
        const std::uint32_t settled = (sec << 1) + prop;
        flag_out |= (settled >> t) & 1u;
        const std::uint32_t adjust = (settled ^ prop) & lane_bits;
        vf = Sub ? _mm512_mask_sub_epi64(vf, static_cast<__mmask8>(adjust), vf, ones)
                 : _mm512_mask_add_epi64(vf, static_cast<__mmask8>(adjust), vf, ones);
        pt.lap(&AddSubStats::overflow_ticks);
    }

    _mm512_mask_storeu_epi64(out, lanes, vf);
    pt.lap(&AddSubStats::store_ticks);
    return {flag_out, fired};
}

}  // namespace

ChunkOut add_chunk_avx512(limb_t* out, const limb_t* a, const limb_t* b, unsigned carry_in,
                          unsigned t, AddSubStats* st) {
    return chunk_avx512<false, false>(out, a, b, carry_in, t, st);
}
ChunkOut sub_chunk_avx512(limb_t* out, const limb_t* a, const limb_t* b, unsigned carry_in,
                          unsigned t, AddSubStats* st) {
    return chunk_avx512<true, false>(out, a, b, carry_in, t, st);
}
ChunkOut add_chunk_avx512_timed(limb_t* out, const limb_t* a, const limb_t* b,
                                unsigned carry_in, unsigned t, AddSubStats* st) {
    return chunk_avx512<false, true>(out, a, b, carry_in, t, st);
}
ChunkOut sub_chunk_avx512_timed(limb_t* out, const limb_t* a, const limb_t* b,
                                unsigned carry_in, unsigned t, AddSubStats* st) {
    return chunk_avx512<true, true>(out, a, b, carry_in, t, st);
}

}  // namespace dot::detail

#endif  // DOT_X86_KERNELS
