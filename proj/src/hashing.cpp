#include "dynpdt/hashing.hpp"

#include "dynpdt/core.hpp"

namespace dynpdt {

std::uint64_t inverse_mod_pow2(std::uint64_t odd) {
    // Newton iteration; each step doubles the number of correct low bits and
    // x = odd is already correct to 3 bits.
    std::uint64_t x = odd;
    for (int i = 0; i < 5; ++i) {
        x *= 2 - odd * x;
    }
    return x;
}

BijectiveTransform::BijectiveTransform(std::uint32_t z) : z_(z), a_(z / 2 + 1) {
    if (z == 0 || z > 64) {
        throw ContractViolation("transform width must be in [1, 64]");
    }
    mask_ = z == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << z) - 1;
    // Golden-ratio constant truncated to z bits and forced odd.
    p_ = (0x9e3779b97f4a7c15ULL & mask_) | 1U;
    p_inv_ = inverse_mod_pow2(p_) & mask_;
}

std::uint64_t BijectiveTransform::forward(std::uint64_t x) const {
    if ((x & ~mask_) != 0) {
        throw ContractViolation("transform input outside [0, 2^z)");
    }
    return (xorshift(x) * p_) & mask_;
}

std::uint64_t BijectiveTransform::inverse(std::uint64_t y) const {
    if ((y & ~mask_) != 0) {
        throw ContractViolation("transform input outside [0, 2^z)");
    }
    return xorshift((y * p_inv_) & mask_);
}

std::string vbyte_encode(std::uint64_t n) {
    std::uint8_t buf[kMaxVByteBytes];
    const std::size_t k = vbyte_encode(n, buf);
    return std::string(reinterpret_cast<const char*>(buf), k);
}

VByteDecoded vbyte_decode(std::span<const std::uint8_t> buffer, std::size_t offset) {
    std::uint64_t v = 0;
    std::uint32_t shift = 0;
    for (std::size_t k = offset; k < buffer.size(); ++k) {
        const std::uint8_t b = buffer[k];
        if (shift > 63 || (shift == 63 && (b & 0x7EU) != 0)) {
            throw CorruptionError("vbyte code exceeds 64 bits");
        }
        v |= std::uint64_t{b & 0x7FU} << shift;
        if ((b & 0x80U) == 0) {
            return {v, k + 1 - offset};
        }
        shift += 7;
    }
    throw CorruptionError("vbyte code runs past the end of the buffer");
}

}  // namespace dynpdt
