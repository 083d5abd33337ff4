#include "dot/testgen.hpp"

#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "dot/oracle.hpp"

namespace dot {

// ============================================================
// Names
// ============================================================

std::string_view to_string(Op op) {
    switch (op) {
        case Op::add: return "add";
        case Op::sub: return "sub";
        case Op::mul: return "mul";
    }
    throw std::invalid_argument("unknown op value");
}

Op op_from_string(std::string_view s) {
    if (s == "add") return Op::add;
    if (s == "sub") return Op::sub;
    if (s == "mul") return Op::mul;
    throw std::invalid_argument("unknown op name: " + std::string(s));
}

std::string_view to_string(Category c) {
    switch (c) {
        case Category::random: return "random";
        case Category::full_propagation: return "full-propagation";
        case Category::maxed_limbs: return "maxed-limbs";
        case Category::zero_limbs: return "zero-limbs";
        case Category::frequent_carries: return "frequent-carries";
        case Category::frequent_borrows: return "frequent-borrows";
        case Category::mixed: return "mixed";
    }
    throw std::invalid_argument("unknown category value");
}

Category category_from_string(std::string_view s) {
    if (s == "random") return Category::random;
    if (s == "full-propagation") return Category::full_propagation;
    if (s == "maxed-limbs") return Category::maxed_limbs;
    if (s == "zero-limbs") return Category::zero_limbs;
    if (s == "frequent-carries") return Category::frequent_carries;
    if (s == "frequent-borrows") return Category::frequent_borrows;
    if (s == "mixed") return Category::mixed;
    throw std::invalid_argument("unknown category name: " + std::string(s));
}

// ============================================================
// Generation
// ============================================================

std::vector<unsigned> default_bit_sizes() {
    std::vector<unsigned> sizes;
    for (const unsigned mult : {1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64})
        sizes.push_back(512 * mult);
    return sizes;
}

namespace {

constexpr limb_t kTop = limb_t(1) << 63;

Limbs draw(std::mt19937_64& rng, std::size_t m) {
    Limbs a(m);
    for (auto& x : a) x = rng();
    return a;
}

// Operand shapes per category. Draw order is fixed (a fully, then b, then
// any auxiliary draws) so corpora are byte-reproducible.
void fill_operands(std::mt19937_64& rng, Op op, std::size_t m, Category cat, Limbs& a,
                   Limbs& b) {
    switch (cat) {
        case Category::random:
            a = draw(rng, m);
            b = draw(rng, m);
            return;
        case Category::full_propagation:
            // One generated carry/borrow at limb 0, every other limb held at
            // the propagate value. For mul: worst-case carry chains instead.
            if (op == Op::mul) {
                a.assign(m, ~limb_t(0));
                b.assign(m, ~limb_t(0));
                return;
            }
            a.assign(m, op == Op::add ? ~limb_t(0) : 0);
            b.assign(m, 0);
            b[0] = rng() | 1;
            return;
        case Category::maxed_limbs:
            a = draw(rng, m);
            b = draw(rng, m);
            for (auto& x : a)
                if (rng() & 1) x = ~limb_t(0);
            for (auto& x : b)
                if (rng() & 1) x = ~limb_t(0);
            a[rng() % m] = ~limb_t(0);  // category guarantee: at least one
            return;
        case Category::zero_limbs:
            a = draw(rng, m);
            b = draw(rng, m);
            for (auto& x : a)
                if (rng() & 1) x = 0;
            for (auto& x : b)
                if (rng() & 1) x = 0;
            a[rng() % m] = 0;
            return;
        case Category::frequent_carries:
            a = draw(rng, m);
            b = draw(rng, m);
            for (auto& x : a) x |= kTop;
            for (auto& x : b) x |= kTop;
            return;
        case Category::frequent_borrows:
            a = draw(rng, m);
            b = draw(rng, m);
            for (auto& x : a) x &= ~kTop;
            for (auto& x : b) x |= kTop;
            return;
        case Category::mixed: {
            // Six-way interleave; the sub-shape draw comes first.
            static constexpr Category kCycle[6] = {
                Category::random,           Category::full_propagation,
                Category::maxed_limbs,      Category::zero_limbs,
                Category::frequent_carries, Category::frequent_borrows,
            };
            fill_operands(rng, op, m, kCycle[rng() % 6], a, b);
            return;
        }
    }
    throw std::invalid_argument("unknown category value");
}

std::vector<TestCase> gen_cases(RngSpec spec, Op op, unsigned bits, Category cat,
                                std::size_t count) {
    if (bits == 0 || bits % 64 != 0)
        throw std::invalid_argument("testgen: bits must be a positive multiple of 64");
    const std::size_t m = bits / 64;
    std::mt19937_64 rng(spec.seed);
    std::vector<TestCase> cases;
    cases.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        TestCase tc;
        tc.op = op;
        tc.bits = bits;
        tc.category = cat;
        fill_operands(rng, op, m, cat, tc.a, tc.b);
        switch (op) {
            case Op::add: {
                WordsResult r = oracle_add(tc.a, tc.b);
                tc.expected = std::move(r.limbs);
                tc.flag = r.flag;
                break;
            }
            case Op::sub: {
                WordsResult r = oracle_sub(tc.a, tc.b);
                tc.expected = std::move(r.limbs);
                tc.flag = r.flag;
                break;
            }
            case Op::mul:
                tc.expected = oracle_mul(tc.a, tc.b);
                tc.flag = 0;
                break;
        }
        cases.push_back(std::move(tc));
    }
    return cases;
}

}  // namespace

std::vector<TestCase> gen_random(RngSpec spec, Op op, unsigned bits, std::size_t count) {
    return gen_cases(spec, op, bits, Category::random, count);
}

std::vector<TestCase> gen_pathological(RngSpec spec, Op op, unsigned bits, Category category,
                                       std::size_t count) {
    return gen_cases(spec, op, bits, category, count);
}

// ============================================================
// JSONL exchange
// ============================================================

void write_vectors(const std::vector<TestCase>& cases, std::ostream& out) {
    for (const TestCase& tc : cases) {
        nlohmann::ordered_json line;
        line["op"] = to_string(tc.op);
        line["bits"] = tc.bits;
        line["category"] = to_string(tc.category);
        line["a"] = to_hex(tc.a);
        line["b"] = to_hex(tc.b);
        line["expected"] = to_hex(tc.expected);
        if (tc.op != Op::mul) line["flag"] = tc.flag;
        out << line.dump() << '\n';
    }
    if (!out) throw std::runtime_error("testgen: vector write failed");
}

void write_vectors(const std::vector<TestCase>& cases, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("testgen: cannot open for writing: " + path);
    write_vectors(cases, out);
}

std::vector<TestCase> read_vectors(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("testgen: cannot open for reading: " + path);
    std::vector<TestCase> cases;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const nlohmann::json j = nlohmann::json::parse(line);
            TestCase tc;
            tc.op = op_from_string(j.at("op").get<std::string>());
            tc.bits = j.at("bits").get<unsigned>();
            if (tc.bits == 0 || tc.bits % 64 != 0)
                throw std::invalid_argument("bits must be a positive multiple of 64");
            tc.category = category_from_string(j.at("category").get<std::string>());
            const std::size_t m = tc.bits / 64;
            tc.a = from_hex(j.at("a").get<std::string>(), kSaturated, m);
            tc.b = from_hex(j.at("b").get<std::string>(), kSaturated, m);
            if (tc.a.size() > m || tc.b.size() > m)
                throw std::invalid_argument("operand wider than the declared bits");
            // Hex is minimal, so expected re-pads to the operand limb count
            // for add/sub; products stay trimmed.
            const std::size_t want = tc.op == Op::mul ? 0 : m;
            tc.expected = from_hex(j.at("expected").get<std::string>(), kSaturated, want);
            if (tc.op != Op::mul) {
                tc.flag = j.at("flag").get<unsigned>();
                if (tc.flag > 1) throw std::invalid_argument("flag must be 0 or 1");
                if (tc.expected.size() != m)
                    throw std::invalid_argument("expected value wider than the operands");
            }
            cases.push_back(std::move(tc));
        } catch (const std::exception& e) {
            throw std::runtime_error("testgen: " + path + ": parse error at line " +
                                     std::to_string(lineno) + ": " + e.what());
        }
    }
    return cases;
}

}  // namespace dot
