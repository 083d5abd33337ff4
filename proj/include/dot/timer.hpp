// timer.hpp - Raw tick source for instrumentation and benchmarking.
#pragma once

#include <chrono>
#include <cstdint>

#if defined(__x86_64__) || defined(_M_X64)
#include <x86intrin.h>
#define DOT_TICKS_ARE_CYCLES 1
#else
#define DOT_TICKS_ARE_CYCLES 0
#endif

namespace dot {

// Cycle counter on x86-64, monotonic nanoseconds elsewhere. Tick deltas are
// only comparable against other deltas from the same source.
inline std::uint64_t ticks_now() {
#if DOT_TICKS_ARE_CYCLES
    return __rdtsc();
#else
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now().time_since_epoch())
            .count());
#endif
}

constexpr bool ticks_are_cycles() { return DOT_TICKS_ARE_CYCLES != 0; }

}  // namespace dot
