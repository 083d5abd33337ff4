// 4-lane kernels. AVX2 lacks unsigned 64-bit compares and mask registers:
// compares go through a sign-bit flip, masks live in the low 4 bits of a
// scalar, and aligned carries re-enter the vector domain via variable shifts.
#include "kernels.hpp"

#if defined(DOT_X86_KERNELS)

#include <immintrin.h>

namespace dot::detail {

namespace {

inline std::uint32_t mask_of(__m256i cmp) {
    return static_cast<std::uint32_t>(_mm256_movemask_pd(_mm256_castsi256_pd(cmp)));
}

// x < y, both unsigned.
inline __m256i ltu(__m256i x, __m256i y) {
    const __m256i sign = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
    return _mm256_cmpgt_epi64(_mm256_xor_si256(y, sign), _mm256_xor_si256(x, sign));
}

// Per-lane 0/1 vector from the low 4 bits of a scalar mask.
inline __m256i bits_of(std::uint32_t m) {
    const __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);
    return _mm256_and_si256(_mm256_srlv_epi64(_mm256_set1_epi64x(static_cast<long long>(m)), idx),
                            _mm256_set1_epi64x(1));
}

template <bool Sub, bool Timed>
ChunkOut chunk_avx2(limb_t* out, const limb_t* a, const limb_t* b, unsigned carry_in,
                    unsigned /*t = 4*/, AddSubStats* st) {
    PhaseTimer<Timed> pt(st);

    pt.start();
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b));
    pt.lap(&AddSubStats::load_ticks);

    const __m256i vr = Sub ? _mm256_sub_epi64(va, vb) : _mm256_add_epi64(va, vb);
    pt.lap(&AddSubStats::add_ticks);

    std::uint32_t c = Sub ? mask_of(ltu(va, vb)) : mask_of(ltu(vr, va));
    unsigned flag_out = (c >> 3) & 1u;
    c = ((c << 1) | carry_in) & 0xFu;
    pt.lap(&AddSubStats::carry_gen_ticks);

    __m256i vf = Sub ? _mm256_sub_epi64(vr, bits_of(c)) : _mm256_add_epi64(vr, bits_of(c));
    pt.lap(&AddSubStats::carry_add_ticks);

    const std::uint32_t sec = Sub ? mask_of(ltu(vr, vf)) : mask_of(ltu(vf, vr));
    const bool fired = sec != 0;
    pt.lap(&AddSubStats::store_ticks);

    if (fired) {
        const __m256i sentinel = Sub ? _mm256_setzero_si256() : _mm256_set1_epi64x(-1);
        const std::uint32_t prop = mask_of(_mm256_cmpeq_epi64(vf, sentinel));
        const std::uint32_t settled = (sec << 1) + prop;
        flag_out |= (settled >> 4) & 1u;
        const std::uint32_t adjust = (settled ^ prop) & 0xFu;
        vf = Sub ? _mm256_sub_epi64(vf, bits_of(adjust)) : _mm256_add_epi64(vf, bits_of(adjust));
        pt.lap(&AddSubStats::overflow_ticks);
    }

    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out), vf);
    pt.lap(&AddSubStats::store_ticks);
    return {flag_out, fired};
}

}  // namespace

ChunkOut add_chunk_avx2(limb_t* out, const limb_t* a, const limb_t* b, unsigned carry_in,
                        unsigned t, AddSubStats* st) {
    return chunk_avx2<false, false>(out, a, b, carry_in, t, st);
}
ChunkOut sub_chunk_avx2(limb_t* out, const limb_t* a, const limb_t* b, unsigned carry_in,
                        unsigned t, AddSubStats* st) {
    return chunk_avx2<true, false>(out, a, b, carry_in, t, st);
}
ChunkOut add_chunk_avx2_timed(limb_t* out, const limb_t* a, const limb_t* b, unsigned carry_in,
                              unsigned t, AddSubStats* st) {
    return chunk_avx2<false, true>(out, a, b, carry_in, t, st);
}
ChunkOut sub_chunk_avx2_timed(limb_t* out, const limb_t* a, const limb_t* b, unsigned carry_in,
                              unsigned t, AddSubStats* st) {
    return chunk_avx2<true, true>(out, a, b, carry_in, t, st);
}

}  // namespace dot::detail

#endif  // DOT_X86_KERNELS
