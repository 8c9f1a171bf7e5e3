#pragma once

#include <cstdint>

#include "dynpdt/bit_vector.hpp"
#include "dynpdt/core.hpp"
#include "dynpdt/displacement.hpp"
#include "dynpdt/hashing.hpp"

namespace dynpdt {

// Closed hash tables with linear probing over keys u * sigma + c in [0, m * sigma).
// Neither supports deletion, so an entry never moves once placed.

// Stores whole keys; the all-ones value marks an empty slot.
class PlainKeyTable {
  public:
    static constexpr std::uint64_t npos = ~std::uint64_t{0};
    static constexpr bool kCompact = false;

    PlainKeyTable() = default;
    PlainKeyTable(std::uint64_t capacity, std::uint32_t sigma_bits)
        : capacity_(capacity),
          capacity_bits_(log2_floor(capacity)),
          sigma_bits_(sigma_bits),
          slots_(capacity, capacity_bits_ + sigma_bits, all_ones(capacity_bits_ + sigma_bits)) {}

    std::uint64_t initial_address(std::uint64_t key) const { return scramble(key) & (capacity_ - 1); }

    std::uint64_t find(std::uint64_t key) const {
        for (std::uint64_t i = initial_address(key);; i = next(i)) {
            const std::uint64_t k = slots_.get(i);
            if (k == key) {
                return i;
            }
            if (k == empty()) {
                return npos;
            }
        }
    }

    std::uint64_t insert(std::uint64_t key) {
        std::uint64_t i = initial_address(key);
        while (slots_.get(i) != empty()) {
            i = next(i);
        }
        slots_.set(i, key);
        ++size_;
        return i;
    }

    bool occupied(std::uint64_t slot) const { return slots_.get(slot) != empty(); }
    std::uint64_t key_at(std::uint64_t slot) const { return slots_.get(slot); }
    std::uint64_t displacement(std::uint64_t slot) const {
        return (slot - initial_address(slots_.get(slot))) & (capacity_ - 1);
    }

    // Raw slot access for reusing the array as scratch space while growing.
    CompactVector& raw() { return slots_; }

    std::uint64_t capacity() const { return capacity_; }
    std::uint64_t size() const { return size_; }
    std::uint32_t sigma_bits() const { return sigma_bits_; }
    std::uint32_t slot_bits() const { return slots_.width(); }
    std::size_t memory_bytes() const { return slots_.memory_bytes(); }

  private:
    static std::uint64_t all_ones(std::uint32_t w) { return w >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1; }
    std::uint64_t empty() const { return slots_.max_value(); }
    std::uint64_t next(std::uint64_t i) const { return (i + 1) & (capacity_ - 1); }

    std::uint64_t capacity_ = 0;
    std::uint32_t capacity_bits_ = 0;
    std::uint32_t sigma_bits_ = 0;
    std::uint64_t size_ = 0;
    CompactVector slots_;
};

// Stores only the quotient of the transformed key. The initial address of the
// entry in slot j is (j - D[j]) mod m, which together with the quotient
// reconstructs the transformed key and, through the inverse transform, the key.
class CompactKeyTable {
  public:
    static constexpr std::uint64_t npos = ~std::uint64_t{0};
    static constexpr bool kCompact = true;

    CompactKeyTable() = default;
    CompactKeyTable(std::uint64_t capacity, std::uint32_t sigma_bits)
        : capacity_(capacity),
          capacity_bits_(log2_floor(capacity)),
          sigma_bits_(sigma_bits),
          transform_(capacity_bits_ + sigma_bits),
          quotients_(capacity, sigma_bits),
          occupied_(capacity),
          displacement_(capacity) {}

    std::uint64_t initial_address(std::uint64_t key) const { return transform_.forward(key) & (capacity_ - 1); }

    std::uint64_t find(std::uint64_t key) const {
        const std::uint64_t h = transform_.forward(key);
        const std::uint64_t home = h & (capacity_ - 1);
        const std::uint64_t quo = h >> capacity_bits_;
        for (std::uint64_t i = home, d = 0; occupied_.get(i); i = next(i), ++d) {
            if (quotients_.get(i) == quo && displacement_.get(i) == d) {
                return i;
            }
        }
        return npos;
    }

    std::uint64_t insert(std::uint64_t key) {
        const std::uint64_t h = transform_.forward(key);
        const std::uint64_t home = h & (capacity_ - 1);
        std::uint64_t i = home;
        std::uint64_t d = 0;
        while (occupied_.get(i)) {
            i = next(i);
            ++d;
        }
        quotients_.set(i, h >> capacity_bits_);
        occupied_.set(i);
        displacement_.set(i, d);
        ++size_;
        return i;
    }

    bool occupied(std::uint64_t slot) const { return occupied_.get(slot); }
    std::uint64_t key_at(std::uint64_t slot) const {
        const std::uint64_t home = (slot - displacement_.get(slot)) & (capacity_ - 1);
        return transform_.inverse((quotients_.get(slot) << capacity_bits_) | home);
    }
    std::uint64_t displacement(std::uint64_t slot) const { return displacement_.get(slot); }
    std::uint64_t quotient(std::uint64_t slot) const { return quotients_.get(slot); }

    const DisplacementStore& displacements() const { return displacement_; }
    const BijectiveTransform& transform() const { return transform_; }

    std::uint64_t capacity() const { return capacity_; }
    std::uint64_t size() const { return size_; }
    std::uint32_t sigma_bits() const { return sigma_bits_; }
    std::size_t memory_bytes() const {
        return quotients_.memory_bytes() + occupied_.memory_bytes() + displacement_.memory_bytes();
    }

  private:
    std::uint64_t next(std::uint64_t i) const { return (i + 1) & (capacity_ - 1); }

    std::uint64_t capacity_ = 0;
    std::uint32_t capacity_bits_ = 0;
    std::uint32_t sigma_bits_ = 0;
    std::uint64_t size_ = 0;
    BijectiveTransform transform_;
    CompactVector quotients_;
    BitVector occupied_;
    DisplacementStore displacement_;
};

}  // namespace dynpdt
