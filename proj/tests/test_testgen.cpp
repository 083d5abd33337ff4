// Vector generation and JSONL exchange: determinism, category shape
// guarantees, oracle-populated expectations, and parse-error reporting.
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "dot/addsub.hpp"
#include "dot/oracle.hpp"
#include "dot/testgen.hpp"

using namespace dot;

namespace {

// Unique scratch file under the system temp dir, removed on scope exit.
struct TempFile {
    std::string path;
    explicit TempFile(const std::string& tag) {
        static std::mt19937_64 rng(std::random_device{}());
        path = (std::filesystem::temp_directory_path() /
                ("dot-testgen-" + tag + "-" + std::to_string(rng()) + ".jsonl"))
                   .string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("testgen") {

// ============================================================
// Naming
// ============================================================

TEST_CASE("op and category names round-trip") {
    for (const Op op : {Op::add, Op::sub, Op::mul})
        CHECK(op_from_string(to_string(op)) == op);
    CHECK(category_from_string(to_string(Category::random)) == Category::random);
    for (const Category c : kPathologicalCategories)
        CHECK(category_from_string(to_string(c)) == c);
    CHECK_THROWS_AS(op_from_string("xor"), std::invalid_argument);
    CHECK_THROWS_AS(category_from_string("weird"), std::invalid_argument);
}

TEST_CASE("default size grid is the documented twelve") {
    const auto sizes = default_bit_sizes();
    REQUIRE(sizes.size() == 12);
    CHECK(sizes.front() == 512);
    CHECK(sizes.back() == 32768);
    for (const unsigned bits : sizes) CHECK(bits % 64 == 0);
}

// ============================================================
// Generation
// ============================================================

TEST_CASE("same seed, same corpus") {
    const auto once = gen_random({.seed = 1}, Op::add, 512, 3);
    const auto twice = gen_random({.seed = 1}, Op::add, 512, 3);
    CHECK(once == twice);
    const auto other = gen_random({.seed = 2}, Op::add, 512, 3);
    CHECK(once != other);
}

TEST_CASE("bits must be a positive multiple of 64") {
    CHECK_THROWS_AS(gen_random({}, Op::add, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_random({}, Op::add, 100, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_pathological({}, Op::sub, 96, Category::mixed, 1),
                    std::invalid_argument);
}

TEST_CASE("expected fields are oracle outputs") {
    RngSpec spec{.seed = 42};
    for (const Op op : {Op::add, Op::sub, Op::mul}) {
        for (const Category cat : kPathologicalCategories) {
            for (const TestCase& tc : gen_pathological(spec, op, 256, cat, 20)) {
                CHECK(tc.a.size() == 4);
                CHECK(tc.b.size() == 4);
                switch (op) {
                    case Op::add: {
                        const WordsResult r = oracle_add(tc.a, tc.b);
                        CHECK(tc.expected == r.limbs);
                        CHECK(tc.flag == r.flag);
                        break;
                    }
                    case Op::sub: {
                        const WordsResult r = oracle_sub(tc.a, tc.b);
                        CHECK(tc.expected == r.limbs);
                        CHECK(tc.flag == r.flag);
                        break;
                    }
                    case Op::mul:
                        CHECK(tc.expected == oracle_mul(tc.a, tc.b));
                        CHECK(tc.flag == 0);
                        break;
                }
            }
        }
    }
}

TEST_CASE("full-propagation addition forces the cascade") {
    for (const TestCase& tc : gen_pathological({.seed = 5}, Op::add, 512,
                                               Category::full_propagation, 50)) {
        CHECK(tc.a == Limbs(8, ~limb_t(0)));
        CHECK((tc.b[0] & 1) == 1);
        for (std::size_t i = 1; i < 8; ++i) CHECK(tc.b[i] == 0);
        CHECK(tc.flag == 1);

        AddSubStats st;
        const WordsResult got = dot_add_words(tc.a, tc.b, Width::w8, &st);
        CHECK(got.limbs == tc.expected);
        CHECK(got.flag == tc.flag);
        CHECK(st.phase4_rate() == doctest::Approx(1.0));
    }
    for (const TestCase& tc : gen_pathological({.seed = 6}, Op::sub, 512,
                                               Category::full_propagation, 50)) {
        CHECK(tc.a == Limbs(8, 0));
        CHECK(tc.flag == 1);
        AddSubStats st;
        (void)dot_sub_words(tc.a, tc.b, Width::w8, &st);
        CHECK(st.phase4_rate() == doctest::Approx(1.0));
    }
}

TEST_CASE("random corpus never reaches phase 4") {
    AddSubStats st;
    for (const TestCase& tc : gen_random({.seed = 7}, Op::add, 512, 2000)) {
        const WordsResult got = dot_add_words(tc.a, tc.b, Width::w8, &st);
        CHECK(got.limbs == tc.expected);
        CHECK(got.flag == tc.flag);
    }
    CHECK(st.phase4_triggers == 0);
}

TEST_CASE("category shape guarantees") {
    const limb_t top = limb_t(1) << 63;
    for (const TestCase& tc :
         gen_pathological({.seed = 8}, Op::add, 512, Category::maxed_limbs, 100)) {
        bool has_max = false;
        for (const limb_t x : tc.a) has_max |= x == ~limb_t(0);
        CHECK(has_max);
    }
    for (const TestCase& tc :
         gen_pathological({.seed = 9}, Op::add, 512, Category::zero_limbs, 100)) {
        bool has_zero = false;
        for (const limb_t x : tc.a) has_zero |= x == 0;
        CHECK(has_zero);
    }
    for (const TestCase& tc :
         gen_pathological({.seed = 10}, Op::add, 512, Category::frequent_carries, 50)) {
        for (const limb_t x : tc.a) CHECK((x & top) == top);
        for (const limb_t x : tc.b) CHECK((x & top) == top);
    }
    for (const TestCase& tc :
         gen_pathological({.seed = 11}, Op::sub, 512, Category::frequent_borrows, 50)) {
        for (const limb_t x : tc.a) CHECK((x & top) == 0);
        for (const limb_t x : tc.b) CHECK((x & top) == top);
        CHECK(tc.flag == 1);  // a < b by construction of the top bits
    }
    for (const TestCase& tc :
         gen_pathological({.seed = 12}, Op::mul, 256, Category::mixed, 60))
        CHECK(tc.category == Category::mixed);
}

// ============================================================
// JSONL exchange
// ============================================================

TEST_CASE("write then read round-trips bit-exactly") {
    std::vector<TestCase> corpus;
    for (const Op op : {Op::add, Op::sub, Op::mul}) {
        auto part = gen_random({.seed = 13}, op, 256, 10);
        corpus.insert(corpus.end(), part.begin(), part.end());
        auto path_part =
            gen_pathological({.seed = 14}, op, 512, Category::full_propagation, 5);
        corpus.insert(corpus.end(), path_part.begin(), path_part.end());
    }
    TempFile f("roundtrip");
    write_vectors(corpus, f.path);
    CHECK(read_vectors(f.path) == corpus);
}

TEST_CASE("same corpus serializes to identical bytes") {
    const auto corpus = gen_random({.seed = 15}, Op::add, 1024, 25);
    TempFile f1("bytes1"), f2("bytes2");
    write_vectors(corpus, f1.path);
    write_vectors(corpus, f2.path);
    const std::string b1 = slurp(f1.path);
    CHECK(!b1.empty());
    CHECK(b1 == slurp(f2.path));
}

TEST_CASE("mul lines omit the flag field") {
    TempFile f("flags");
    write_vectors(gen_random({.seed = 16}, Op::mul, 128, 1), f.path);
    CHECK(slurp(f.path).find("\"flag\"") == std::string::npos);
    write_vectors(gen_random({.seed = 16}, Op::add, 128, 1), f.path);
    CHECK(slurp(f.path).find("\"flag\"") != std::string::npos);
}

TEST_CASE("empty file reads as an empty corpus") {
    TempFile f("empty");
    write_vectors({}, f.path);
    CHECK(read_vectors(f.path).empty());
    std::ofstream(f.path, std::ios::trunc) << "\n   \n";
    CHECK(read_vectors(f.path).empty());
}

TEST_CASE("parse errors name the offending line") {
    TempFile f("badline");
    const auto good = gen_random({.seed = 17}, Op::add, 128, 2);
    write_vectors(good, f.path);
    std::ofstream(f.path, std::ios::app) << "{broken\n";
    try {
        read_vectors(f.path);
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    // Structurally valid JSON with a bogus field also names its line.
    std::ofstream(f.path, std::ios::trunc)
        << R"({"op":"add","bits":64,"category":"random","a":"1","b":"1","expected":"2","flag":9})"
        << "\n";
    try {
        read_vectors(f.path);
        FAIL("expected a validation error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
    CHECK_THROWS_AS(read_vectors("/nonexistent/dir/vectors.jsonl"), std::runtime_error);
}

TEST_CASE("oversized operands are rejected on read") {
    TempFile f("toowide");
    std::ofstream(f.path, std::ios::trunc)
        << R"({"op":"add","bits":64,"category":"random","a":"1_0000_0000_0000_0000",)"
        << R"("b":"1","expected":"2","flag":0})" << "\n";
    CHECK_THROWS_AS(read_vectors(f.path), std::runtime_error);
}

}  // TEST_SUITE
