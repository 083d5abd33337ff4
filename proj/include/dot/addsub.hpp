// addsub.hpp - Lane-parallel multi-word addition and subtraction.
//
// Each chunk of w limbs goes through four phases:
//   1. lane-independent limb sums (or differences),
//   2. carry mask extraction, chunk carry-out capture, mask shift/insert,
//   3. aligned carry add plus a secondary overflow check,
//   4. (rare) cascade resolution: carries that rippled through saturated
//      lanes are settled with one mask addition, no per-lane loop.
// Chunks are chained by threading carry-out into the next chunk's carry-in.
// All widths, the scalar lane emulation included, produce bit-identical
// results; the specialized kernels are picked at run time when the CPU
// supports them and fall back to the emulation otherwise.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "dot/limbs.hpp"

namespace dot {

// ============================================================
// Width selection
// ============================================================

// scalar = lane-emulation kernel (processes 8-limb chunks in plain code);
// w2/w4/w8 = width-specialized kernels with the same chunk semantics.
enum class Width : std::uint8_t { scalar = 0, w2 = 2, w4 = 4, w8 = 8 };

inline constexpr std::array<Width, 4> kAllWidths{Width::scalar, Width::w2, Width::w4,
                                                 Width::w8};

constexpr unsigned lane_count(Width w) {
    return w == Width::scalar ? 8u : static_cast<unsigned>(w);
}

std::string_view to_string(Width w);
Width width_from_string(std::string_view s);  // throws std::invalid_argument

// Describes what the dispatcher would run for this width on this machine:
// "sse4.2", "avx2", "avx512f", or "generic".
std::string_view dispatch_note(Width w);

// ============================================================
// Instrumentation
// ============================================================

// Counters are filled whenever a stats object is passed; the per-phase tick
// accumulators additionally require collect_ticks. The default entry points
// take no stats object and carry zero instrumentation overhead.
struct AddSubStats {
    std::uint64_t chunks_processed = 0;
    std::uint64_t phase4_triggers = 0;

    bool collect_ticks = false;
    std::uint64_t load_ticks = 0;       // phase 1: operand loads
    std::uint64_t add_ticks = 0;        // phase 1: lane add/sub
    std::uint64_t carry_gen_ticks = 0;  // phase 2: mask compare, shift, insert
    std::uint64_t carry_add_ticks = 0;  // phase 3: aligned carry add
    std::uint64_t store_ticks = 0;      // phase 3: overflow check + result store
    std::uint64_t overflow_ticks = 0;   // phase 4: cascade resolution

    // Carry-handling ticks (phases 2-4 plus the check/store step) relative to
    // the plain lane additions of phase 1.
    double carry_to_add_ratio() const;
    double phase4_rate() const {
        return chunks_processed ? double(phase4_triggers) / double(chunks_processed) : 0.0;
    }
    void merge(const AddSubStats& other);
};

// ============================================================
// Chunk-level operations
// ============================================================

struct ChunkResult {
    std::array<limb_t, 8> sums{};  // first w entries valid
    unsigned carry_out = 0;        // borrow_out for subtraction
    bool phase4_fired = false;
};

// One chunk of w lanes, 1 <= w <= 8; calling with w below the full width is
// the masked-tail form. Requires a.size() == b.size() == w and carry_in <= 1.
ChunkResult add_w_limbs(std::span<const limb_t> a, std::span<const limb_t> b,
                        unsigned carry_in, unsigned w);
ChunkResult sub_w_limbs(std::span<const limb_t> a, std::span<const limb_t> b,
                        unsigned borrow_in, unsigned w);

// ============================================================
// Word-level operations
// ============================================================

// out = a + b (mod 2^(64*m)); returns the carry of weight 2^(64*m). Spans
// must have equal length; out may alias a or b exactly (partial overlap is
// undefined). The trailing m % lanes limbs run through the masked-tail path.
unsigned dot_add_words(std::span<limb_t> out, std::span<const limb_t> a,
                       std::span<const limb_t> b, Width w = Width::w8,
                       AddSubStats* stats = nullptr);
unsigned dot_sub_words(std::span<limb_t> out, std::span<const limb_t> a,
                       std::span<const limb_t> b, Width w = Width::w8,
                       AddSubStats* stats = nullptr);

// Value-semantic forms; unequal lengths are zero-padded to the longer one.
WordsResult dot_add_words(const Limbs& a, const Limbs& b, Width w = Width::w8,
                          AddSubStats* stats = nullptr);
WordsResult dot_sub_words(const Limbs& a, const Limbs& b, Width w = Width::w8,
                          AddSubStats* stats = nullptr);

}  // namespace dot
