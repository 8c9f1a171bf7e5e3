#include "dynpdt/bit_vector.hpp"

#include "dynpdt/core.hpp"

namespace dynpdt {

CompactVector::CompactVector(std::uint64_t size, std::uint32_t width, std::uint64_t init)
    : size_(size), width_(width), mask_(width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1) {
    if (width > 64) {
        throw ContractViolation("compact vector width exceeds 64 bits");
    }
    // One spare word keeps the straddling read in get() in bounds.
    words_.assign((size * width + 63) / 64 + 1, 0);
    if (init != 0 && init == mask_) {
        words_.assign(words_.size(), ~std::uint64_t{0});
    } else if (init != 0) {
        for (std::uint64_t i = 0; i < size; ++i) {
            set(i, init);
        }
    }
}

}  // namespace dynpdt
