// bench.hpp - Verification runs, tick measurement, and CSV reporting.
//
// Verification is the pass/fail authority: a kernel must reproduce every
// oracle-populated expected value bit for bit before any timing row is
// worth emitting. Timing reports ticks per operation from whichever source
// the platform offers (cycle counter or monotonic clock) and says which.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dot/addsub.hpp"
#include "dot/testgen.hpp"

namespace dot {

// ============================================================
// Timer identity
// ============================================================

struct TimerSource {
    enum class Kind { cycle_counter, monotonic_clock };
    Kind kind = Kind::monotonic_clock;
    std::string_view note = "";

    static TimerSource detect();
};

std::string_view to_string(TimerSource::Kind k);
TimerSource::Kind timer_kind_from_string(std::string_view s);  // throws std::invalid_argument

// ============================================================
// Kernels under test
// ============================================================

// Registry names: dot_add, dot_sub, dot_mul, dot_mul_4x4, dot_mul_5x5,
// karatsuba, oracle_add, oracle_sub, oracle_mul. "auto" routes each case to
// the vector kernel for its op. The fixed-size mul kernels accept 256-bit
// cases only (dot_mul_5x5 goes through the 52-bit radix bridge).
std::vector<std::string_view> kernel_names();

// ============================================================
// Verification
// ============================================================

struct VerifyOutcome {
    std::uint64_t cases = 0;       // cases the kernel actually processed
    std::uint64_t mismatches = 0;
    std::vector<std::size_t> mismatch_ids;  // corpus indices, line order
    AddSubStats stats;             // filled by the vector add/sub kernels
};

// Runs every applicable corpus case through the kernel and compares against
// the stored expected values. Throws std::invalid_argument on an unknown
// kernel name. Cases an explicit kernel cannot process (other op, wrong
// fixed size) are skipped, not failed.
VerifyOutcome run_verify(const std::vector<TestCase>& corpus, std::string_view kernel,
                         Width w = Width::w8);

// ============================================================
// Timing
// ============================================================

struct BenchRequest {
    Op op = Op::add;
    unsigned bits = 512;
    Width w = Width::w8;
    std::string kernel = "auto";
    Category category = Category::random;
    std::size_t cases = 1000;
    std::uint64_t seed = 1;
    unsigned reps = 20;       // timing samples for the mean and CI
    bool instrument = false;  // per-phase tick pass (vector add/sub only)
};

struct BenchRow {
    std::string op;
    unsigned bits = 0;
    std::string w;
    std::string kernel;
    std::uint64_t cases = 0;
    double ticks_per_op_mean = 0.0;
    double ci95 = 0.0;  // half-width, Student-t over the repetition samples
    // Phase shares in percent; zero unless the instrumented pass ran.
    double pct_load = 0.0;
    double pct_add = 0.0;
    double pct_carry_gen = 0.0;
    double pct_carry_add = 0.0;
    double pct_store = 0.0;
    double pct_overflow = 0.0;
    double carry_add_ratio = 0.0;
    double phase4_rate = 0.0;
    std::uint64_t mismatches = 0;
    std::string timer;

    bool operator==(const BenchRow&) const = default;
};

struct BenchReport {
    TimerSource timer = TimerSource::detect();
    std::vector<BenchRow> rows;
};

// Verifies first, then times. A failed verification comes back as a row with
// mismatches > 0 and no timing content; callers must not emit such a row.
BenchRow run_bench(const BenchRequest& req);

// ============================================================
// Statistics checks
// ============================================================

struct CensusRow {
    unsigned k = 0;
    std::uint64_t max_sum_pairs = 0;
    std::uint64_t closed_max_sum = 0;  // 2^k
    std::uint64_t carry_pairs = 0;
    std::uint64_t closed_carry = 0;    // 2^k (2^k - 1) / 2
    bool match = false;
};

struct StatsReport {
    std::vector<CensusRow> census;     // k = 1 .. k_max
    std::uint64_t mc_samples = 0;
    double mc_carry_freq = 0.0;        // expected 1/2 - 2^-65
    bool mc_within_tolerance = false;  // |freq - 0.5| <= 0.001
    bool all_match() const;
};

// k_max in 1..16. The Monte-Carlo pass draws sample pairs of full 64-bit
// limbs and measures the carry-out frequency.
StatsReport run_stats(unsigned k_max, std::uint64_t mc_samples = 10'000'000,
                      std::uint64_t seed = 1);

// ============================================================
// CSV exchange
// ============================================================

// Fixed header and field order; doubles rendered with six decimals, so equal
// reports serialize to identical bytes.
std::string to_csv(const BenchReport& report);
void emit_csv(const BenchReport& report, const std::string& path);
BenchReport parse_csv(const std::string& path);  // throws std::runtime_error

}  // namespace dot
