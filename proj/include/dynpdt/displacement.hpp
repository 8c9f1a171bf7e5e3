#pragma once

#include <cstdint>
#include <functional>

#include "dynpdt/bit_vector.hpp"
#include "dynpdt/hashing.hpp"

namespace dynpdt {

// Cleary's compact hash table mapping keys in [0, universe) to small values.
//
// Only the quotient of each hashed key is stored. Entries that share an initial
// address form a contiguous group; groups inside a run of occupied slots are
// ordered by initial address. A virgin bit per address records that some key
// hashes there, and a change bit per slot marks the first entry of each group,
// so the k-th virgin bit in a run belongs to the k-th group of the run.
class ClearyTable {
  public:
    static constexpr std::uint64_t npos = ~std::uint64_t{0};

    ClearyTable() = default;
    ClearyTable(std::uint64_t universe, std::uint64_t capacity, std::uint32_t value_bits);

    // Returns npos when the key is absent.
    std::uint64_t find(std::uint64_t key) const;
    // Inserts or overwrites; doubles the table when the load would exceed 0.9.
    void put(std::uint64_t key, std::uint64_t value);
    // Value stored for key, or npos.
    std::uint64_t get(std::uint64_t key) const {
        const std::uint64_t s = find(key);
        return s == npos ? npos : values_.get(s);
    }

    void for_each(const std::function<void(std::uint64_t key, std::uint64_t value)>& fn) const;

    std::uint64_t size() const { return size_; }
    std::uint64_t capacity() const { return capacity_; }
    std::uint32_t quotient_bits() const { return quotients_.width(); }
    std::size_t memory_bytes() const;

  private:
    std::uint64_t next(std::uint64_t i) const { return (i + 1) & (capacity_ - 1); }
    std::uint64_t prev(std::uint64_t i) const { return (i - 1) & (capacity_ - 1); }
    std::uint64_t run_start(std::uint64_t i) const;
    std::uint64_t group_start(std::uint64_t home) const;
    void grow();

    BijectiveTransform transform_;
    std::uint64_t universe_ = 0;
    std::uint64_t capacity_ = 0;
    std::uint32_t capacity_bits_ = 0;
    std::uint64_t size_ = 0;
    CompactVector quotients_;
    CompactVector values_;
    BitVector occupied_;
    BitVector virgin_;
    BitVector change_;
};

// Closed hash table with linear probing for (key, value) pairs in [0, universe).
class OverflowTable {
  public:
    OverflowTable() = default;
    OverflowTable(std::uint64_t universe, std::uint64_t capacity);

    std::uint64_t get(std::uint64_t key) const;  // npos-like ~0 when absent
    void put(std::uint64_t key, std::uint64_t value);

    std::uint64_t size() const { return size_; }
    std::uint64_t capacity() const { return capacity_; }
    std::size_t memory_bytes() const { return keys_.memory_bytes() + values_.memory_bytes(); }

  private:
    void grow();

    std::uint64_t universe_ = 0;
    std::uint64_t capacity_ = 0;
    std::uint64_t size_ = 0;
    CompactVector keys_;  // key + 1, 0 = empty
    CompactVector values_;
};

// Probe distances of a compact hash table with m slots, tiered by magnitude:
//   d <  2^d1 - 1                  -> the d1-bit array (D1)
//   d <  2^d1 - 1 + 2^d2           -> D1 holds the escape, D2 holds d - (2^d1 - 1)
//   otherwise                      -> D1 holds the escape, D3 holds d
class DisplacementStore {
  public:
    static constexpr std::uint32_t kD1Bits = 4;
    static constexpr std::uint32_t kD2Bits = 7;
    static constexpr std::uint64_t kEscape = (std::uint64_t{1} << kD1Bits) - 1;
    static constexpr std::uint64_t kD2Limit = kEscape + (std::uint64_t{1} << kD2Bits);
    static constexpr std::uint64_t kD2InitialCapacity = std::uint64_t{1} << 12;
    static constexpr std::uint64_t kD3InitialCapacity = std::uint64_t{1} << 6;

    DisplacementStore() = default;
    explicit DisplacementStore(std::uint64_t m);

    std::uint64_t get(std::uint64_t i) const {
        const std::uint64_t d = d1_.get(i);
        return d < kEscape ? d : get_slow(i);
    }
    // Each slot is written once, when its entry is placed.
    void set(std::uint64_t i, std::uint64_t d);

    std::uint64_t d2_size() const { return d2_.size(); }
    std::uint64_t d3_size() const { return d3_.size(); }
    std::uint64_t d2_capacity() const { return d2_.capacity(); }
    std::uint64_t d3_capacity() const { return d3_.capacity(); }
    std::size_t memory_bytes() const { return d1_.memory_bytes() + d2_.memory_bytes() + d3_.memory_bytes(); }

  private:
    std::uint64_t get_slow(std::uint64_t i) const;

    CompactVector d1_;
    ClearyTable d2_;
    OverflowTable d3_;
};

}  // namespace dynpdt
