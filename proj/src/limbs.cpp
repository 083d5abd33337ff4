#include "dot/limbs.hpp"

#include <algorithm>
#include <stdexcept>

namespace dot {

namespace {

constexpr unsigned kPackedBits = 52;

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

void check_radix(RadixConfig cfg) {
    if (cfg.limb_bits != 64 && cfg.limb_bits != kPackedBits)
        throw std::invalid_argument("RadixConfig: limb_bits must be 64 or 52");
}

void check_limbs(const Limbs& a, RadixConfig cfg) {
    check_radix(cfg);
    const limb_t mask = cfg.limb_mask();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~mask)
            throw std::invalid_argument("limb " + std::to_string(i) +
                                        " exceeds the configured limb width");
}

std::size_t sig_limbs(std::span<const limb_t> a) {
    std::size_t n = a.size();
    while (n > 0 && a[n - 1] == 0) --n;
    return n;
}

Limbs normalized(Limbs a) {
    a.resize(sig_limbs(a));
    return a;
}

int compare(std::span<const limb_t> a, std::span<const limb_t> b) {
    const std::size_t na = sig_limbs(a), nb = sig_limbs(b);
    if (na != nb) return na < nb ? -1 : 1;
    for (std::size_t i = na; i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

Limbs from_hex(std::string_view s, RadixConfig cfg, std::size_t min_limbs) {
    check_radix(cfg);
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);

    // Collect significant nibbles most-significant first.
    std::vector<std::uint8_t> nibbles;
    nibbles.reserve(s.size());
    bool seen_digit = false;
    for (char c : s) {
        if (c == '_') {
            if (!seen_digit) throw std::invalid_argument("hex numeral: leading '_' separator");
            continue;
        }
        const int d = hex_digit(c);
        if (d < 0)
            throw std::invalid_argument(std::string("hex numeral: invalid character '") + c + "'");
        seen_digit = true;
        if (!nibbles.empty() || d != 0) nibbles.push_back(static_cast<std::uint8_t>(d));
    }
    if (!seen_digit) throw std::invalid_argument("hex numeral: no digits");

    // Assemble saturated 64-bit limbs from the low end of the numeral.
    Limbs words;
    words.reserve((nibbles.size() + 15) / 16);
    std::size_t pos = nibbles.size();
    while (pos > 0) {
        const std::size_t take = std::min<std::size_t>(16, pos);
        limb_t w = 0;
        for (std::size_t i = pos - take; i < pos; ++i) w = (w << 4) | nibbles[i];
        words.push_back(w);
        pos -= take;
    }

    Limbs out = (cfg.limb_bits == 64) ? std::move(words) : normalized(pack_64_to_52(words));
    if (out.size() < min_limbs) out.resize(min_limbs, 0);
    return out;
}

std::string to_hex(const Limbs& a, RadixConfig cfg) {
    check_limbs(a, cfg);
    const Limbs& sat = (cfg.limb_bits == 64) ? a : unpack_52_to_64(a);
    const std::size_t n = sig_limbs(sat);
    if (n == 0) return "0";

    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(n * 16);
    bool leading = true;
    for (std::size_t i = n; i-- > 0;) {
        for (int shift = 60; shift >= 0; shift -= 4) {
            const unsigned d = static_cast<unsigned>((sat[i] >> shift) & 0xF);
            if (leading && d == 0) continue;
            leading = false;
            out.push_back(digits[d]);
        }
    }
    return out;
}

std::vector<std::uint8_t> to_bytes(const Limbs& a, RadixConfig cfg) {
    check_limbs(a, cfg);
    const Limbs& sat = (cfg.limb_bits == 64) ? a : unpack_52_to_64(a);
    const std::size_t n = sig_limbs(sat);
    std::vector<std::uint8_t> out;
    out.reserve(n * 8);
    for (std::size_t i = 0; i < n; ++i)
        for (unsigned byte = 0; byte < 8; ++byte)
            out.push_back(static_cast<std::uint8_t>(sat[i] >> (8 * byte)));
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

Limbs from_bytes(std::span<const std::uint8_t> bytes, RadixConfig cfg) {
    check_radix(cfg);
    Limbs words((bytes.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bytes.size(); ++i)
        words[i / 8] |= limb_t(bytes[i]) << (8 * (i % 8));
    words = normalized(std::move(words));
    return (cfg.limb_bits == 64) ? words : normalized(pack_64_to_52(words));
}

Limbs pack_64_to_52(const Limbs& a) {
    const std::size_t m = a.size();
    const std::size_t total_bits = m * 64;
    const std::size_t n_out = (total_bits + kPackedBits - 1) / kPackedBits;
    constexpr limb_t mask = (limb_t(1) << kPackedBits) - 1;

    Limbs out(n_out);
    for (std::size_t j = 0; j < n_out; ++j) {
        const std::size_t bit = j * kPackedBits;
        const std::size_t word = bit / 64;
        const unsigned off = bit % 64;
        limb_t v = a[word] >> off;
        if (off > 64 - kPackedBits && word + 1 < m) v |= a[word + 1] << (64 - off);
        out[j] = v & mask;
    }
    return out;
}

Limbs unpack_52_to_64(const Limbs& a) {
    check_limbs(a, kUnsaturated);
    const std::size_t total_bits = a.size() * kPackedBits;
    Limbs out((total_bits + 63) / 64, 0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        const std::size_t bit = j * kPackedBits;
        const std::size_t word = bit / 64;
        const unsigned off = bit % 64;
        out[word] |= a[j] << off;
        if (off > 64 - kPackedBits) out[word + 1] |= a[j] >> (64 - off);
    }
    return normalized(std::move(out));
}

}  // namespace dot
