// kernels.hpp - Internal chunk-kernel contracts shared by the dispatch layer
// and the per-ISA translation units. Not installed.
#pragma once

#include "dot/addsub.hpp"
#include "dot/timer.hpp"

namespace dot::detail {

struct ChunkOut {
    unsigned carry = 0;
    bool phase4 = false;
};

// All chunk kernels share one shape: t lanes (1 <= t <= 8), inputs and output
// may fully alias, stats is only dereferenced by the timed instantiations.
using chunk_fn = ChunkOut (*)(limb_t* out, const limb_t* a, const limb_t* b,
                              unsigned carry_in, unsigned t, AddSubStats* stats);

// Per-phase lap timer; compiles to nothing when Timed is false.
template <bool Timed>
struct PhaseTimer {
    std::uint64_t t0 = 0;
    AddSubStats* st = nullptr;

    explicit PhaseTimer(AddSubStats* s) : st(s) {}
    void start() {
        if constexpr (Timed) t0 = ticks_now();
    }
    void lap(std::uint64_t AddSubStats::*bucket) {
        if constexpr (Timed) {
            const std::uint64_t t1 = ticks_now();
            st->*bucket += t1 - t0;
            t0 = t1;
        }
    }
};

#if defined(DOT_X86_KERNELS)
bool cpu_has_sse42();
bool cpu_has_avx2();
bool cpu_has_avx512f();

// t must equal 2.
ChunkOut add_chunk_sse42(limb_t*, const limb_t*, const limb_t*, unsigned, unsigned,
                         AddSubStats*);
ChunkOut sub_chunk_sse42(limb_t*, const limb_t*, const limb_t*, unsigned, unsigned,
                         AddSubStats*);
ChunkOut add_chunk_sse42_timed(limb_t*, const limb_t*, const limb_t*, unsigned, unsigned,
                               AddSubStats*);
ChunkOut sub_chunk_sse42_timed(limb_t*, const limb_t*, const limb_t*, unsigned, unsigned,
                               AddSubStats*);

// t must equal 4.
ChunkOut add_chunk_avx2(limb_t*, const limb_t*, const limb_t*, unsigned, unsigned,
                        AddSubStats*);
ChunkOut sub_chunk_avx2(limb_t*, const limb_t*, const limb_t*, unsigned, unsigned,
                        AddSubStats*);
ChunkOut add_chunk_avx2_timed(limb_t*, const limb_t*, const limb_t*, unsigned, unsigned,
                              AddSubStats*);
ChunkOut sub_chunk_avx2_timed(limb_t*, const limb_t*, const limb_t*, unsigned, unsigned,
                              AddSubStats*);

// Any t in 1..8: partial chunks use masked loads/stores.
ChunkOut add_chunk_avx512(limb_t*, const limb_t*, const limb_t*, unsigned, unsigned,
                          AddSubStats*);
ChunkOut sub_chunk_avx512(limb_t*, const limb_t*, const limb_t*, unsigned, unsigned,
                          AddSubStats*);
ChunkOut add_chunk_avx512_timed(limb_t*, const limb_t*, const limb_t*, unsigned, unsigned,
                                AddSubStats*);
ChunkOut sub_chunk_avx512_timed(limb_t*, const limb_t*, const limb_t*, unsigned, unsigned,
                                AddSubStats*);
#endif

}  // namespace dot::detail
