#include "dot/bench.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dot/mul.hpp"
#include "dot/oracle.hpp"
#include "dot/timer.hpp"

namespace dot {

// ============================================================
// Timer identity
// ============================================================

TimerSource TimerSource::detect() {
    if constexpr (ticks_are_cycles())
        return {Kind::cycle_counter, "rdtsc"};
    else
        return {Kind::monotonic_clock, "steady_clock nanoseconds"};
}

std::string_view to_string(TimerSource::Kind k) {
    return k == TimerSource::Kind::cycle_counter ? "cycle-counter" : "monotonic-clock";
}

TimerSource::Kind timer_kind_from_string(std::string_view s) {
    if (s == "cycle-counter") return TimerSource::Kind::cycle_counter;
    if (s == "monotonic-clock") return TimerSource::Kind::monotonic_clock;
    throw std::invalid_argument("unknown timer kind: " + std::string(s));
}

// ============================================================
// Kernel registry
// ============================================================

namespace {

struct KernelSpec {
    std::string_view name;
    Op op;
    bool vector_addsub;  // fills AddSubStats
};

constexpr KernelSpec kKernels[] = {
    {"dot_add", Op::add, true},      {"dot_sub", Op::sub, true},
    {"dot_mul", Op::mul, false},     {"dot_mul_4x4", Op::mul, false},
    {"dot_mul_5x5", Op::mul, false}, {"karatsuba", Op::mul, false},
    {"oracle_add", Op::add, false},  {"oracle_sub", Op::sub, false},
    {"oracle_mul", Op::mul, false},
};

const KernelSpec* find_kernel(std::string_view name) {
    for (const KernelSpec& ks : kKernels)
        if (ks.name == name) return &ks;
    return nullptr;
}

std::string_view auto_kernel(Op op) {
    switch (op) {
        case Op::add: return "dot_add";
        case Op::sub: return "dot_sub";
        case Op::mul: return "dot_mul";
    }
    throw std::invalid_argument("unknown op value");
}

bool kernel_accepts(const KernelSpec& ks, const TestCase& tc) {
    if (ks.op != tc.op) return false;
    if ((ks.name == "dot_mul_4x4" || ks.name == "dot_mul_5x5") && tc.bits != 256)
        return false;
    return true;
}

struct CaseRun {
    bool ok = true;
    limb_t fold = 0;
};

// Executes one case. check=false skips the expected-value comparison for
// timing loops; the fold keeps results live against dead-code elimination.
CaseRun exec_case(const KernelSpec& ks, const TestCase& tc, Width w, AddSubStats* st,
                  bool check) {
    CaseRun run;
    const auto fold_words = [&run](const WordsResult& r) {
        run.fold ^= (r.limbs.empty() ? 0 : r.limbs[0]) ^ r.flag;
    };
    const auto fold_limbs = [&run](const Limbs& r) { run.fold ^= r.empty() ? 0 : r[0]; };

    if (ks.name == "dot_add" || ks.name == "dot_sub") {
        const WordsResult r = ks.op == Op::add ? dot_add_words(tc.a, tc.b, w, st)
                                               : dot_sub_words(tc.a, tc.b, w, st);
        fold_words(r);
        if (check) run.ok = r.limbs == tc.expected && r.flag == tc.flag;
    } else if (ks.name == "oracle_add" || ks.name == "oracle_sub") {
        const WordsResult r = ks.op == Op::add ? oracle_add(tc.a, tc.b) : oracle_sub(tc.a, tc.b);
        fold_words(r);
        if (check) run.ok = r.limbs == tc.expected && r.flag == tc.flag;
    } else {
        Limbs r;
        if (ks.name == "dot_mul")
            r = dot_mul_words(tc.a, tc.b);
        else if (ks.name == "dot_mul_4x4")
            r = dot_mul_4x4(tc.a, tc.b);
        else if (ks.name == "dot_mul_5x5")
            r = unpack_52_to_64(dot_mul_5x5(pack_64_to_52(tc.a), pack_64_to_52(tc.b)));
        else if (ks.name == "karatsuba")
            r = karatsuba_mul(tc.a, tc.b);
        else
            r = oracle_mul(tc.a, tc.b);
        fold_limbs(r);
        if (check) run.ok = eq(r, tc.expected);
    }
    return run;
}

volatile limb_t g_bench_sink;

// Two-sided 95% Student-t quantile by degrees of freedom.
double t95(unsigned df) {
    static constexpr double kT[30] = {
        12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
        2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
        2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042,
    };
    if (df == 0) return 0.0;
    return df <= 30 ? kT[df - 1] : 1.960;
}

}  // namespace

std::vector<std::string_view> kernel_names() {
    std::vector<std::string_view> names;
    for (const KernelSpec& ks : kKernels) names.push_back(ks.name);
    return names;
}

// ============================================================
// Verification
// ============================================================

VerifyOutcome run_verify(const std::vector<TestCase>& corpus, std::string_view kernel,
                         Width w) {
    const bool routed = kernel == "auto";
    if (!routed && find_kernel(kernel) == nullptr)
        throw std::invalid_argument("unknown kernel: " + std::string(kernel));

    VerifyOutcome out;
    limb_t fold = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const TestCase& tc = corpus[i];
        const KernelSpec* ks = find_kernel(routed ? auto_kernel(tc.op) : kernel);
        if (!kernel_accepts(*ks, tc)) continue;
        ++out.cases;
        const CaseRun run =
            exec_case(*ks, tc, w, ks->vector_addsub ? &out.stats : nullptr, true);
        fold ^= run.fold;
        if (!run.ok) {
            ++out.mismatches;
            out.mismatch_ids.push_back(i);
        }
    }
    g_bench_sink = fold;
    return out;
}

// ============================================================
// Timing
// ============================================================

BenchRow run_bench(const BenchRequest& req) {
    const std::string kernel_name(req.kernel == "auto" ? auto_kernel(req.op) : req.kernel);
    const KernelSpec* ks = find_kernel(kernel_name);
    if (ks == nullptr) throw std::invalid_argument("unknown kernel: " + kernel_name);
    if (ks->op != req.op)
        throw std::invalid_argument("kernel " + kernel_name + " does not implement op " +
                                    std::string(to_string(req.op)));
    if ((kernel_name == "dot_mul_4x4" || kernel_name == "dot_mul_5x5") && req.bits != 256)
        throw std::invalid_argument(kernel_name + " accepts 256-bit operands only");
    if (req.reps == 0 || req.cases == 0)
        throw std::invalid_argument("bench needs at least one repetition and one case");

    const std::vector<TestCase> corpus =
        req.category == Category::random
            ? gen_random({.seed = req.seed}, req.op, req.bits, req.cases)
            : gen_pathological({.seed = req.seed}, req.op, req.bits, req.category, req.cases);

    BenchRow row;
    row.op = to_string(req.op);
    row.bits = req.bits;
    row.w = to_string(req.w);
    row.kernel = kernel_name;
    row.cases = corpus.size();
    row.timer = to_string(TimerSource::detect().kind);

    // Gate: no timing content for a kernel that cannot reproduce the oracle.
    const VerifyOutcome gate = run_verify(corpus, kernel_name, req.w);
    row.mismatches = gate.mismatches;
    if (gate.mismatches != 0) return row;

    std::vector<double> samples(req.reps);
    limb_t fold = 0;
    for (unsigned rep = 0; rep < req.reps; ++rep) {
        const std::uint64_t t0 = ticks_now();
        for (const TestCase& tc : corpus) fold ^= exec_case(*ks, tc, req.w, nullptr, false).fold;
        const std::uint64_t t1 = ticks_now();
        samples[rep] = double(t1 - t0) / double(corpus.size());
    }
    g_bench_sink = fold;

    double mean = 0.0;
    for (const double s : samples) mean += s;
    mean /= double(req.reps);
    double var = 0.0;
    for (const double s : samples) var += (s - mean) * (s - mean);
    row.ticks_per_op_mean = mean;
    if (req.reps > 1) {
        var /= double(req.reps - 1);
        row.ci95 = t95(req.reps - 1) * std::sqrt(var / double(req.reps));
    }

    if (ks->vector_addsub) {
        AddSubStats st;
        st.collect_ticks = req.instrument;
        for (const TestCase& tc : corpus) fold ^= exec_case(*ks, tc, req.w, &st, false).fold;
        g_bench_sink = fold;
        row.phase4_rate = st.phase4_rate();
        if (req.instrument) {
            const double total = double(st.load_ticks) + double(st.add_ticks) +
                                 double(st.carry_gen_ticks) + double(st.carry_add_ticks) +
                                 double(st.store_ticks) + double(st.overflow_ticks);
            if (total > 0) {
                row.pct_load = 100.0 * double(st.load_ticks) / total;
                row.pct_add = 100.0 * double(st.add_ticks) / total;
                row.pct_carry_gen = 100.0 * double(st.carry_gen_ticks) / total;
                row.pct_carry_add = 100.0 * double(st.carry_add_ticks) / total;
                row.pct_store = 100.0 * double(st.store_ticks) / total;
                row.pct_overflow = 100.0 * double(st.overflow_ticks) / total;
            }
            row.carry_add_ratio = st.carry_to_add_ratio();
        }
    }
    return row;
}

// ============================================================
// Statistics checks
// ============================================================

bool StatsReport::all_match() const {
    for (const CensusRow& r : census)
        if (!r.match) return false;
    return mc_within_tolerance;
}

StatsReport run_stats(unsigned k_max, std::uint64_t mc_samples, std::uint64_t seed) {
    if (k_max < 1 || k_max > 16)
        throw std::invalid_argument("stats: k_max must be in 1..16");
    StatsReport rep;
    for (unsigned k = 1; k <= k_max; ++k) {
        const CensusCounts counts = carry_census(k);
        CensusRow row;
        row.k = k;
        row.max_sum_pairs = counts.max_sum_pairs;
        row.carry_pairs = counts.carry_pairs;
        row.closed_max_sum = std::uint64_t(1) << k;
        row.closed_carry = (std::uint64_t(1) << (k - 1)) * ((std::uint64_t(1) << k) - 1);
        row.match =
            row.max_sum_pairs == row.closed_max_sum && row.carry_pairs == row.closed_carry;
        rep.census.push_back(row);
    }

    std::mt19937_64 rng(seed);
    std::uint64_t carries = 0;
    for (std::uint64_t n = 0; n < mc_samples; ++n) {
        const limb_t x = rng();
        const limb_t sum = x + rng();
        carries += sum < x;
    }
    rep.mc_samples = mc_samples;
    rep.mc_carry_freq = mc_samples ? double(carries) / double(mc_samples) : 0.0;
    rep.mc_within_tolerance = mc_samples && std::abs(rep.mc_carry_freq - 0.5) <= 0.001;
    return rep;
}

// ============================================================
// CSV exchange
// ============================================================

namespace {

constexpr std::string_view kCsvHeader =
    "op,bits,w,kernel,cases,ticks_per_op_mean,ci95,pct_load,pct_add,pct_carry_gen,"
    "pct_carry_add,pct_store,pct_overflow,carry_add_ratio,phase4_rate,mismatches,timer";

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

std::string to_csv(const BenchReport& report) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const BenchRow& r : report.rows) {
        char head[160];
        std::snprintf(head, sizeof head, "%s,%u,%s,%s,%" PRIu64 ",", r.op.c_str(), r.bits,
                      r.w.c_str(), r.kernel.c_str(), r.cases);
        out += head;
        for (const double v :
             {r.ticks_per_op_mean, r.ci95, r.pct_load, r.pct_add, r.pct_carry_gen,
              r.pct_carry_add, r.pct_store, r.pct_overflow, r.carry_add_ratio, r.phase4_rate}) {
            out += fmt_double(v);
            out += ',';
        }
        char tail[96];
        std::snprintf(tail, sizeof tail, "%" PRIu64 ",%s\n", r.mismatches, r.timer.c_str());
        out += tail;
    }
    return out;
}

void emit_csv(const BenchReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("bench: cannot open for writing: " + path);
    out << to_csv(report);
    if (!out) throw std::runtime_error("bench: write failed: " + path);
}

BenchReport parse_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("bench: cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != split_csv_line(std::string(kCsvHeader)))
        throw std::runtime_error("bench: " + path + ": missing or unexpected CSV header");

    BenchReport report;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv_line(line);
        try {
            if (f.size() != 17) throw std::invalid_argument("expected 17 fields");
            BenchRow r;
            r.op = f[0];
            r.bits = unsigned(std::stoul(f[1]));
            r.w = f[2];
            r.kernel = f[3];
            r.cases = std::stoull(f[4]);
            r.ticks_per_op_mean = std::stod(f[5]);
            r.ci95 = std::stod(f[6]);
            r.pct_load = std::stod(f[7]);
            r.pct_add = std::stod(f[8]);
            r.pct_carry_gen = std::stod(f[9]);
            r.pct_carry_add = std::stod(f[10]);
            r.pct_store = std::stod(f[11]);
            r.pct_overflow = std::stod(f[12]);
            r.carry_add_ratio = std::stod(f[13]);
            r.phase4_rate = std::stod(f[14]);
            r.mismatches = std::stoull(f[15]);
            r.timer = f[16];
            report.timer.kind = timer_kind_from_string(r.timer);
            report.rows.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw std::runtime_error("bench: " + path + ": parse error at line " +
                                     std::to_string(lineno) + ": " + e.what());
        }
    }
    return report;
}

}  // namespace dot
