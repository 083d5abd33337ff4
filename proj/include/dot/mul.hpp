// mul.hpp - Column-structured multiplication over limb vectors.
//
// The generic product runs a five-step pipeline: gather operand limbs into
// diagonal columns, compute independent partial products split at bit k,
// align high halves into the next column, reduce each column into a wide
// accumulator, then one sequential carry pass renormalizes to base 2^k.
// Fixed-size routes: a 5x5 kernel over unsaturated 52-bit limbs and a 4x4
// kernel over saturated 64-bit limbs that radix-converts through it.
// Karatsuba recursion sits on top and bottoms out in those base cases.
#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "dot/addsub.hpp"
#include "dot/limbs.hpp"

namespace dot {

// ============================================================
// Column pipeline
// ============================================================

// Column accumulators are 128-bit. For k = 52 a column of m pairs sums below
// m * 2^104, so the 24 spare bits cap m at 2^24 pairs per column; for k = 64
// the accumulated halves are single limbs and the same cap is comfortably
// safe.
inline constexpr std::size_t kMaxMulLimbs = std::size_t(1) << 24;

// Pair count of column c for m-limb operands; columns run c = 0 .. 2m-2 and
// index 2m-1 is the carry overflow slot (0 pairs). Requires c <= 2m-1.
constexpr std::size_t num_pairs(std::size_t c, std::size_t m) {
    return std::min({c + 1, m, 2 * m - 1 - c});
}

// Flat m^2 buffers in column order: pairs (i, j) with i + j = c are grouped
// contiguously, c ascending, i ascending within a column.
struct ColumnBuffers {
    std::size_t m = 0;
    std::vector<limb_t> m_a;   // gathered a_i per pair
    std::vector<limb_t> m_b;   // gathered b_j per pair
    std::vector<limb_t> p_lo;  // product low halves, mod 2^k
    std::vector<limb_t> p_hi;  // product high halves, floor(/ 2^k)
    std::vector<u128> col_lo;  // 2m column accumulators
};

// Requires a.size() == b.size() >= 1. Throws std::invalid_argument on length
// mismatch, empty operands, or m beyond kMaxMulLimbs.
ColumnBuffers gather_columns(const Limbs& a, const Limbs& b);

// p_lo[t] = (m_a[t] * m_b[t]) mod 2^k, p_hi[t] = floor(.. / 2^k). Entries are
// mutually independent; w only fixes the evaluation grouping (chunks of
// lane_count(w) with a shorter remainder chunk).
void compute_partials(ColumnBuffers& buf, RadixConfig cfg, Width w = Width::w8);

// col_lo[c] += p_lo[t] and col_lo[c+1] += p_hi[t] for every pair t of column
// c, one fused flat pass. Returns a view of the 2m column sums.
std::span<const u128> align_and_reduce(ColumnBuffers& buf);

// Sequential renormalization: out[c] = (col + carry) mod 2^k, carry moves on
// shifted down by k. Total over arbitrary column values; a nonzero residual
// carry is appended as one extra limb per k bits. Pipeline-produced columns
// never leave a residual, so products come back with exactly columns.size()
// limbs.
Limbs carry_pass(std::span<const u128> columns, RadixConfig cfg);

// ============================================================
// Products
// ============================================================

// Generic pipeline product. Requires equal limb counts m >= 1 and limbs
// within cfg's radix; returns exactly 2m limbs (high ones possibly zero).
Limbs dot_mul_words(const Limbs& a, const Limbs& b, RadixConfig cfg = kSaturated,
                    Width w = Width::w8);

// Fixed 5-limb product over unsaturated 52-bit limbs; the column walk follows
// a frozen 25-entry index pattern. Returns exactly 10 limbs.
Limbs dot_mul_5x5(const Limbs& a, const Limbs& b);

// Fixed 4-limb product over saturated 64-bit limbs: re-slice both operands to
// five 52-bit limbs, run the 5x5 kernel, re-slice back. Returns exactly 8
// limbs.
Limbs dot_mul_4x4(const Limbs& a, const Limbs& b);

// ============================================================
// Karatsuba recursion
// ============================================================

struct KaratsubaConfig {
    std::size_t theta = 4;  // limb count at or below which the base case runs
};

// Recursive split A = A_H * 2^(64h) + A_L with three half-size products
// P1 = A_H*B_H, P0 = A_L*B_L, PD = |A_H - A_L| * |B_H - B_L|, combined as
// P1 * 2^(128h) + (P1 + P0 -+ PD) * 2^(64h) + P0 (PD is subtracted when the
// difference signs agree, added otherwise). Odd levels are zero-padded to an
// even split; the base case at m <= theta is dot_mul_4x4 for exactly 4 limbs
// and dot_mul_words otherwise. Unequal input lengths are padded at entry;
// the result is trimmed. Saturated 64-bit limbs only.
Limbs karatsuba_mul(const Limbs& a, const Limbs& b, KaratsubaConfig cfg = {});

}  // namespace dot
