#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace dynpdt {

// SplitMix64 output function: the golden-ratio increment followed by the
// finalizer from http://xorshift.di.unimi.it/splitmix64.c. Used to scatter keys
// in the plain hash tables.
inline std::uint64_t scramble(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Multiplicative inverse of an odd number modulo 2^64.
std::uint64_t inverse_mod_pow2(std::uint64_t odd);

// A permutation of [0, 2^z) built from an xorshift step followed by an odd
// multiplication, both invertible:
//
//   forward(x) = ((x ^ (x >> a)) * p) mod 2^z,   a = floor(z/2) + 1
//   inverse(y) = g(y * p^-1 mod 2^z),            g(x) = x ^ (x >> a)
//
// The xorshift step is its own inverse because 2a > z.
class BijectiveTransform {
  public:
    BijectiveTransform() : BijectiveTransform(1) {}
    explicit BijectiveTransform(std::uint32_t z);

    std::uint64_t forward(std::uint64_t x) const;
    std::uint64_t inverse(std::uint64_t y) const;

    // Same construction over [0, 2^new_z).
    BijectiveTransform rescale(std::uint32_t new_z) const { return BijectiveTransform(new_z); }

    std::uint32_t z() const { return z_; }
    std::uint32_t shift() const { return a_; }
    std::uint64_t multiplier() const { return p_; }
    std::uint64_t multiplier_inverse() const { return p_inv_; }
    std::uint64_t mask() const { return mask_; }

    std::uint64_t xorshift(std::uint64_t x) const { return x ^ (x >> a_); }

  private:
    std::uint32_t z_;
    std::uint32_t a_;
    std::uint64_t mask_;
    std::uint64_t p_;
    std::uint64_t p_inv_;
};

// VByte: 7 data bits per byte, least significant group first, high bit set on
// every byte except the last.

inline constexpr std::size_t kMaxVByteBytes = 10;

inline std::size_t vbyte_size(std::uint64_t n) {
    std::size_t k = 1;
    while (n >= 0x80) {
        n >>= 7;
        ++k;
    }
    return k;
}

// Writes n at out and returns the number of bytes written.
inline std::size_t vbyte_encode(std::uint64_t n, std::uint8_t* out) {
    std::size_t k = 0;
    while (n >= 0x80) {
        out[k++] = static_cast<std::uint8_t>(n | 0x80);
        n >>= 7;
    }
    out[k++] = static_cast<std::uint8_t>(n);
    return k;
}

std::string vbyte_encode(std::uint64_t n);

struct VByteDecoded {
    std::uint64_t value;
    std::size_t consumed;
};

// Throws CorruptionError if the code runs past the buffer or exceeds 64 bits.
VByteDecoded vbyte_decode(std::span<const std::uint8_t> buffer, std::size_t offset);

// Unchecked decode for trusted internal buffers.
inline VByteDecoded vbyte_decode_unchecked(const std::uint8_t* p) {
    std::uint64_t v = 0;
    std::size_t k = 0;
    std::uint32_t shift = 0;
    for (;;) {
        const std::uint8_t b = p[k++];
        v |= std::uint64_t{b & 0x7FU} << shift;
        if ((b & 0x80U) == 0) {
            return {v, k};
        }
        shift += 7;
    }
}

}  // namespace dynpdt
