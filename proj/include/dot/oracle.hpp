// oracle.hpp - Deliberately naive limb-serial reference arithmetic.
//
// These routines are the trusted baseline for every vectorized kernel: one
// limb at a time, carries threaded sequentially, no lane tricks. Keep them
// boring. Test vectors freeze their outputs, so behavior changes here are
// breaking changes.
#pragma once

#include <cstdint>

#include "dot/limbs.hpp"

namespace dot {

// Schoolbook add/sub over saturated 64-bit limbs. Both operands must have the
// same length (callers pad); the result has that length plus a carry/borrow
// flag of weight 2^(64*m).
WordsResult oracle_add(const Limbs& a, const Limbs& b);
WordsResult oracle_sub(const Limbs& a, const Limbs& b);

// Schoolbook product with 128-bit intermediates. Accepts unequal lengths;
// result is computed into a.len + b.len limbs, then trimmed.
Limbs oracle_mul(const Limbs& a, const Limbs& b);

// Exhaustive enumeration of (x, y) in [0, 2^k)^2 for small k (k <= 16):
//   max_sum_pairs  counts pairs with x + y == 2^k - 1 (carry-primed sums),
//   carry_pairs    counts pairs with x + y >= 2^k (sums that wrap).
struct CensusCounts {
    std::uint64_t max_sum_pairs = 0;
    std::uint64_t carry_pairs = 0;
};
CensusCounts carry_census(unsigned k);

}  // namespace dot
