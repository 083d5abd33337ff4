// testgen.hpp - Deterministic test-vector generation and JSONL exchange.
//
// Corpora are reproducible: one MT19937-64 engine per generation call, seeded
// explicitly, limbs taken as raw 64-bit outputs in a fixed draw order. The
// expected field always comes from the oracle module, never from the kernels
// the vectors are meant to check.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dot/limbs.hpp"

namespace dot {

// ============================================================
// Case taxonomy
// ============================================================

enum class Op : std::uint8_t { add, sub, mul };

enum class Category : std::uint8_t {
    random,
    full_propagation,  // one generated carry/borrow ripples across every limb
    maxed_limbs,       // random limb subsets pinned to 2^64 - 1
    zero_limbs,        // random limb subsets pinned to 0
    frequent_carries,  // both operands' limb top bits forced on
    frequent_borrows,  // a's top bits cleared, b's forced on
    mixed,             // cycles through the five shapes above plus random
};

inline constexpr std::array<Category, 6> kPathologicalCategories{
    Category::full_propagation, Category::maxed_limbs,      Category::zero_limbs,
    Category::frequent_carries, Category::frequent_borrows, Category::mixed,
};

std::string_view to_string(Op op);
Op op_from_string(std::string_view s);  // throws std::invalid_argument

std::string_view to_string(Category c);
Category category_from_string(std::string_view s);  // throws std::invalid_argument

// ============================================================
// Generation
// ============================================================

struct RngSpec {
    std::uint64_t seed = 0;
};

struct TestCase {
    Op op = Op::add;
    unsigned bits = 0;
    Category category = Category::random;
    Limbs a;
    Limbs b;
    Limbs expected;     // oracle output; trimmed for mul, bits/64 limbs otherwise
    unsigned flag = 0;  // carry/borrow bit; always 0 for mul

    bool operator==(const TestCase&) const = default;
};

// The twelve default operand sizes: 512 * {1,2,3,4,6,8,12,16,24,32,48,64}.
std::vector<unsigned> default_bit_sizes();

// bits must be a positive multiple of 64 (std::invalid_argument otherwise).
std::vector<TestCase> gen_random(RngSpec spec, Op op, unsigned bits, std::size_t count);
std::vector<TestCase> gen_pathological(RngSpec spec, Op op, unsigned bits, Category category,
                                       std::size_t count);

// ============================================================
// JSONL exchange
// ============================================================

// One case per line: op, bits, category, a, b, expected as lowercase hex,
// flag as 0/1 (omitted for mul). Field order is fixed, so equal corpora
// serialize to identical bytes.
void write_vectors(const std::vector<TestCase>& cases, std::ostream& out);
void write_vectors(const std::vector<TestCase>& cases, const std::string& path);

// Returns the full corpus; blank lines are skipped. Throws std::runtime_error
// naming the 1-based line number on any malformed line.
std::vector<TestCase> read_vectors(const std::string& path);

}  // namespace dot
