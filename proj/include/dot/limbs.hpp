// limbs.hpp - Limb sequences, radix configuration, and representation helpers.
//
// A Limbs value is a little-endian sequence of 64-bit storage words: index 0 is
// the least significant limb. The empty sequence represents zero. Operations
// accept non-minimal (zero-padded) inputs; compare/eq ignore high zero limbs.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dot {

using limb_t = std::uint64_t;
using Limbs = std::vector<limb_t>;

#if defined(__SIZEOF_INT128__)
using u128 = unsigned __int128;
#else
#error "a 128-bit unsigned integer type is required"
#endif

// Result shape shared by the word-level add/sub routines and their oracle
// counterparts: m result limbs plus a carry/borrow flag of weight 2^(64*m).
struct WordsResult {
    Limbs limbs;
    unsigned flag = 0;
};

// ============================================================
// Radix configuration
// ============================================================

// limb_bits = 64: saturated limbs, every storage bit significant.
// limb_bits = 52: unsaturated limbs, 12 headroom bits per word must stay zero.
struct RadixConfig {
    unsigned limb_bits = 64;

    constexpr limb_t limb_mask() const {
        return limb_bits >= 64 ? ~limb_t(0) : ((limb_t(1) << limb_bits) - 1);
    }
    constexpr unsigned headroom_bits() const { return 64 - limb_bits; }
};

inline constexpr RadixConfig kSaturated{64};
inline constexpr RadixConfig kUnsaturated{52};

// Throws std::invalid_argument unless limb_bits is 64 or 52.
void check_radix(RadixConfig cfg);

// Throws std::invalid_argument if any headroom bit of a is set under cfg.
void check_limbs(const Limbs& a, RadixConfig cfg);

// ============================================================
// Lane masks
// ============================================================

// Carry/borrow mask for a chunk of width lanes. Bit i belongs to lane i; bit
// `width` is the transient overflow position used while resolving cascades.
struct LaneMask {
    std::uint32_t bits = 0;
    unsigned width = 0;

    constexpr bool test(unsigned i) const { return (bits >> i) & 1u; }
    constexpr std::uint32_t lane_bits() const { return bits & ((1u << width) - 1u); }
    constexpr bool top_lane() const { return test(width - 1); }
    constexpr bool overflow() const { return test(width); }
    // Shift every lane's bit up by one and insert the incoming carry at lane 0.
    constexpr LaneMask shifted_in(unsigned carry_in) const {
        return {((bits << 1) | (carry_in & 1u)) & ((1u << width) - 1u), width};
    }
};

// ============================================================
// Values and ordering
// ============================================================

std::size_t sig_limbs(std::span<const limb_t> a);  // limb count without high zeros
Limbs normalized(Limbs a);                         // trim high zero limbs

int compare(std::span<const limb_t> a, std::span<const limb_t> b);  // -1 / 0 / +1
inline int compare(const Limbs& a, const Limbs& b) {
    return compare(std::span<const limb_t>(a), std::span<const limb_t>(b));
}
inline bool eq(const Limbs& a, const Limbs& b) { return compare(a, b) == 0; }
inline bool is_zero(const Limbs& a) { return sig_limbs(a) == 0; }

// ============================================================
// Text and byte I/O
// ============================================================

// Parses a hexadecimal numeral. Accepts an optional 0x/0X prefix and '_'
// digit separators. The result is minimal unless min_limbs asks for padding.
// Throws std::invalid_argument on malformed input.
Limbs from_hex(std::string_view s, RadixConfig cfg = kSaturated, std::size_t min_limbs = 0);

// Lowercase, unprefixed, minimal digits; zero renders as "0".
std::string to_hex(const Limbs& a, RadixConfig cfg = kSaturated);

// Little-endian byte order; minimal length, zero is the empty sequence.
std::vector<std::uint8_t> to_bytes(const Limbs& a, RadixConfig cfg = kSaturated);
Limbs from_bytes(std::span<const std::uint8_t> bytes, RadixConfig cfg = kSaturated);

// ============================================================
// Radix conversion (64-bit <-> 52-bit limbs)
// ============================================================

// Re-slices the 64*m input bits into 52-bit groups, zero-padding the final
// group at the most significant end. Output length is ceil(64*m / 52).
Limbs pack_64_to_52(const Limbs& a);

// Inverse re-slicing; trims high zero words so a pack round-trip returns the
// original limb count. Throws std::invalid_argument if any word >= 2^52.
Limbs unpack_52_to_64(const Limbs& a);

}  // namespace dot
