// dotarith - corpus generation, kernel verification, timing, and statistics
// for the limb arithmetic library.
//
// Exit codes: 0 = pass, 1 = kernel mismatch (or failed stats check),
// 2 = usage or input error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dot/bench.hpp"
#include "dot/mul.hpp"
#include "dot/testgen.hpp"

namespace {

using namespace dot;

// --pathological <category|all>; an empty flag means the random category.
std::vector<Category> categories_from_flag(const std::string& flag) {
    if (flag.empty()) return {Category::random};
    if (flag == "all")
        return {kPathologicalCategories.begin(), kPathologicalCategories.end()};
    return {category_from_string(flag)};
}

int cmd_gen(Op op, const std::vector<unsigned>& bits, const std::string& pathological,
            std::uint64_t seed, std::size_t cases, const std::string& out_path) {
    const std::vector<Category> cats = categories_from_flag(pathological);
    std::ofstream file;
    if (out_path != "-") {
        file.open(out_path, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot open for writing: " + out_path);
    }
    std::ostream& out = out_path == "-" ? std::cout : file;

    // Shards draw from seed + shard index in a fixed order, so a corpus is a
    // pure function of the command line.
    std::uint64_t shard = 0;
    for (const unsigned b : bits)
        for (const Category cat : cats) {
            write_vectors(cat == Category::random
                              ? gen_random({.seed = seed + shard}, op, b, cases)
                              : gen_pathological({.seed = seed + shard}, op, b, cat, cases),
                          out);
            ++shard;
        }
    out.flush();
    if (!out) throw std::runtime_error("vector write failed");
    return 0;
}

int cmd_verify(const std::string& in_path, const std::string& kernel,
               const std::string& width) {
    const Width w = width_from_string(width);
    const std::vector<TestCase> corpus = read_vectors(in_path);
    const VerifyOutcome out = run_verify(corpus, kernel, w);

    std::printf("kernel %s (w=%s, %s): %llu cases, %llu mismatches\n", kernel.c_str(),
                std::string(to_string(w)).c_str(),
                std::string(dispatch_note(w)).c_str(),
                static_cast<unsigned long long>(out.cases),
                static_cast<unsigned long long>(out.mismatches));
    if (out.stats.chunks_processed > 0)
        std::printf("chunks %llu, phase4 triggers %llu (rate %.6f)\n",
                    static_cast<unsigned long long>(out.stats.chunks_processed),
                    static_cast<unsigned long long>(out.stats.phase4_triggers),
                    out.stats.phase4_rate());
    std::size_t shown = 0;
    for (const std::size_t id : out.mismatch_ids) {
        if (shown++ == 10) {
            std::printf("  ... %zu more\n", out.mismatch_ids.size() - 10);
            break;
        }
        std::printf("  mismatch at case %zu\n", id);
    }
    return out.mismatches == 0 ? 0 : 1;
}

void print_rows(const BenchReport& report, bool instrument) {
    std::printf("%-4s %6s %7s %-12s %7s %14s %10s %8s %7s %s\n", "op", "bits", "w",
                "kernel", "cases", "ticks/op", "ci95", "phase4", "c/a", "timer");
    for (const BenchRow& r : report.rows) {
        std::printf("%-4s %6u %7s %-12s %7llu %14.2f %10.2f %8.4f %7.2f %s\n", r.op.c_str(),
                    r.bits, r.w.c_str(), r.kernel.c_str(),
                    static_cast<unsigned long long>(r.cases), r.ticks_per_op_mean, r.ci95,
                    r.phase4_rate, r.carry_add_ratio, r.timer.c_str());
        if (instrument)
            std::printf("     phases%%: load %.2f add %.2f carry_gen %.2f carry_add %.2f "
                        "store %.2f overflow %.2f\n",
                        r.pct_load, r.pct_add, r.pct_carry_gen, r.pct_carry_add, r.pct_store,
                        r.pct_overflow);
    }
}

int cmd_bench(Op op, const std::vector<unsigned>& bits, const std::string& width,
              const std::string& kernel, const std::string& pathological,
              std::uint64_t seed, std::size_t cases, unsigned reps, bool instrument,
              const std::string& csv_path) {
    const Width w = width_from_string(width);
    const std::vector<Category> cats = categories_from_flag(pathological);

    BenchReport report;
    bool mismatched = false;
    for (const unsigned b : bits)
        for (const Category cat : cats) {
            BenchRequest req;
            req.op = op;
            req.bits = b;
            req.w = w;
            req.kernel = kernel;
            req.category = cat;
            req.cases = cases;
            req.seed = seed;
            req.reps = reps;
            req.instrument = instrument;
            const BenchRow row = run_bench(req);
            if (row.mismatches != 0) {
                // No row for a kernel that fails verification.
                std::fprintf(stderr,
                             "bench: %s failed verification at %u bits (%s): %llu mismatches\n",
                             row.kernel.c_str(), b, std::string(to_string(cat)).c_str(),
                             static_cast<unsigned long long>(row.mismatches));
                mismatched = true;
                continue;
            }
            report.rows.push_back(row);
        }

    print_rows(report, instrument);
    std::printf("timer: %s (%s)\n", std::string(to_string(report.timer.kind)).c_str(),
                std::string(report.timer.note).c_str());
    if (!csv_path.empty()) emit_csv(report, csv_path);
    return mismatched ? 1 : 0;
}

int cmd_stats(unsigned k_max, std::uint64_t mc_samples, std::uint64_t seed) {
    const StatsReport rep = run_stats(k_max, mc_samples, seed);
    std::printf("%3s %22s %22s %s\n", "k", "max-sum (got/closed)", "carry (got/closed)",
                "match");
    for (const CensusRow& r : rep.census)
        std::printf("%3u %10llu /%10llu %10llu /%10llu %s\n", r.k,
                    static_cast<unsigned long long>(r.max_sum_pairs),
                    static_cast<unsigned long long>(r.closed_max_sum),
                    static_cast<unsigned long long>(r.carry_pairs),
                    static_cast<unsigned long long>(r.closed_carry),
                    r.match ? "yes" : "NO");
    std::printf("monte-carlo: %llu samples, carry frequency %.6f (0.5 +/- 0.001: %s)\n",
                static_cast<unsigned long long>(rep.mc_samples), rep.mc_carry_freq,
                rep.mc_within_tolerance ? "yes" : "NO");
    return rep.all_match() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"limb arithmetic corpus, verification, and timing tool"};
    app.require_subcommand(1);

    std::string op_name = "add";
    std::vector<unsigned> bits;
    std::string width = "8";
    std::string kernel = "auto";
    std::string pathological;
    std::string in_path;
    std::string out_path = "-";
    std::string csv_path;
    std::uint64_t seed = 1;
    std::size_t cases = 100;
    unsigned reps = 20;
    unsigned k_max = 12;
    std::uint64_t mc_samples = 10'000'000;
    bool instrument = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--op", op_name, "operation: add, sub, mul");
        cmd->add_option("--bits", bits, "operand sizes in bits (comma list)")
            ->delimiter(',');
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--cases", cases, "cases per size and category");
        cmd->add_option("--pathological", pathological,
                        "pathological category (or `all`) instead of random operands");
    };

    CLI::App* gen = app.add_subcommand("gen", "emit a JSONL test-vector corpus");
    add_common(gen);
    gen->add_option("-o,--out", out_path, "output path (default: stdout)");

    CLI::App* verify = app.add_subcommand("verify", "check a corpus against a kernel");
    verify->add_option("corpus", in_path, "JSONL corpus path")->required();
    verify->add_option("--kernel", kernel, "kernel name or `auto`");
    verify->add_option("--width", width, "vector width: 2, 4, 8, scalar");

    CLI::App* bench = app.add_subcommand("bench", "time kernels over generated corpora");
    add_common(bench);
    bench->add_option("--width", width, "vector width: 2, 4, 8, scalar");
    bench->add_option("--kernel", kernel, "kernel name or `auto`");
    bench->add_option("--reps", reps, "timing repetitions");
    bench->add_option("--csv", csv_path, "also write rows to this CSV path");
    bench->add_flag("--instrument", instrument, "collect per-phase ticks (vector add/sub)");

    CLI::App* stats = app.add_subcommand("stats", "carry census and Monte-Carlo checks");
    stats->add_option("--kmax", k_max, "census upper k (1..16)");
    stats->add_option("--mc-samples", mc_samples, "Monte-Carlo sample count");
    stats->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            const Op op = op_from_string(op_name);
            if (bits.empty()) bits = default_bit_sizes();
            if (gen->count("--cases") == 0) cases = 100;
            return cmd_gen(op, bits, pathological, seed, cases, out_path);
        }
        if (verify->parsed()) return cmd_verify(in_path, kernel, width);
        if (bench->parsed()) {
            const Op op = op_from_string(op_name);
            if (bits.empty()) bits = {512};
            if (bench->count("--cases") == 0) cases = 1000;
            return cmd_bench(op, bits, width, kernel, pathological, seed, cases, reps,
                             instrument, csv_path);
        }
        if (stats->parsed()) return cmd_stats(k_max, mc_samples, seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "dotarith: %s\n", e.what());
        return 2;
    }
    return 2;
}
