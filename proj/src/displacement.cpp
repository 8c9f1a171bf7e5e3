#include "dynpdt/displacement.hpp"

#include <algorithm>
#include <vector>

#include "dynpdt/core.hpp"

namespace dynpdt {

// ClearyTable

ClearyTable::ClearyTable(std::uint64_t universe, std::uint64_t capacity, std::uint32_t value_bits)
    : universe_(universe) {
    if (!is_power_of_two(universe) || universe < 2 || !is_power_of_two(capacity)) {
        throw ContractViolation("cleary table sizes must be powers of two");
    }
    capacity_ = std::min(capacity, universe);
    capacity_bits_ = log2_floor(capacity_);
    const std::uint32_t universe_bits = log2_floor(universe);
    transform_ = BijectiveTransform(universe_bits);
    quotients_ = CompactVector(capacity_, universe_bits - capacity_bits_);
    values_ = CompactVector(capacity_, value_bits);
    occupied_ = BitVector(capacity_);
    virgin_ = BitVector(capacity_);
    change_ = BitVector(capacity_);
}

std::uint64_t ClearyTable::run_start(std::uint64_t i) const {
    while (occupied_.get(prev(i))) {
        i = prev(i);
    }
    return i;
}

// First slot of the group of entries whose initial address is home.
// Requires virgin_[home].
std::uint64_t ClearyTable::group_start(std::uint64_t home) const {
    const std::uint64_t s = run_start(home);
    std::uint64_t rank = 0;
    for (std::uint64_t j = s;; j = next(j)) {
        rank += virgin_.get(j);
        if (j == home) {
            break;
        }
    }
    std::uint64_t j = s;
    for (;;) {
        if (change_.get(j) && --rank == 0) {
            return j;
        }
        j = next(j);
    }
}

std::uint64_t ClearyTable::find(std::uint64_t key) const {
    const std::uint64_t h = transform_.forward(key);
    const std::uint64_t home = h & (capacity_ - 1);
    if (!virgin_.get(home)) {
        return npos;
    }
    const std::uint64_t quo = h >> capacity_bits_;
    std::uint64_t j = group_start(home);
    do {
        if (quotients_.get(j) == quo) {
            return j;
        }
        j = next(j);
    } while (occupied_.get(j) && !change_.get(j));
    return npos;
}

void ClearyTable::put(std::uint64_t key, std::uint64_t value) {
    if (key >= universe_) {
        throw ContractViolation("cleary table key outside the universe");
    }
    if (const std::uint64_t s = find(key); s != npos) {
        values_.set(s, value);
        return;
    }
    if (exceeds_max_load(size_ + 1, capacity_)) {
        grow();
    }

    const std::uint64_t h = transform_.forward(key);
    const std::uint64_t home = h & (capacity_ - 1);
    const std::uint64_t quo = h >> capacity_bits_;

    if (!occupied_.get(home)) {
        quotients_.set(home, quo);
        values_.set(home, value);
        occupied_.set(home);
        virgin_.set(home);
        change_.set(home);
        ++size_;
        return;
    }

    const bool new_group = !virgin_.get(home);
    virgin_.set(home);
    const std::uint64_t s = run_start(home);
    std::uint64_t rank = 0;
    for (std::uint64_t j = s;; j = next(j)) {
        rank += virgin_.get(j);
        if (j == home) {
            break;
        }
    }

    // For a new group: where the rank-th group begins in the current layout
    // (or the end of the run). For an existing group: just past its last entry.
    std::uint64_t pos = s;
    std::uint64_t seen = 0;
    while (occupied_.get(pos)) {
        if (change_.get(pos) && ++seen == rank) {
            break;
        }
        pos = next(pos);
    }
    if (!new_group) {
        pos = next(pos);
        while (occupied_.get(pos) && !change_.get(pos)) {
            pos = next(pos);
        }
    }

    std::uint64_t end = pos;
    while (occupied_.get(end)) {
        end = next(end);
    }
    for (std::uint64_t j = end; j != pos; j = prev(j)) {
        const std::uint64_t p = prev(j);
        quotients_.set(j, quotients_.get(p));
        values_.set(j, values_.get(p));
        change_.set(j, change_.get(p));
    }
    occupied_.set(end);

    quotients_.set(pos, quo);
    values_.set(pos, value);
    change_.set(pos, new_group);
    ++size_;
}

void ClearyTable::for_each(const std::function<void(std::uint64_t, std::uint64_t)>& fn) const {
    if (size_ == 0) {
        return;
    }
    std::uint64_t origin = 0;
    while (occupied_.get(origin)) {
        origin = next(origin);
    }
    // Walk every run starting after an empty slot; homes of a run's groups are
    // its virgin bits in order.
    std::uint64_t j = next(origin);
    std::uint64_t home = 0;
    for (std::uint64_t steps = 0; steps < capacity_; ++steps, j = next(j)) {
        if (!occupied_.get(j)) {
            continue;
        }
        if (!occupied_.get(prev(j))) {
            home = prev(j);  // run start; the first virgin bit is at or after j
        }
        if (change_.get(j)) {
            do {
                home = next(home);
            } while (!virgin_.get(home));
        }
        const std::uint64_t h = (quotients_.get(j) << capacity_bits_) | home;
        fn(transform_.inverse(h), values_.get(j));
    }
}

void ClearyTable::grow() {
    if (capacity_ * 2 > universe_) {
        throw ResourceExhausted("cleary table cannot grow past its universe");
    }
    ClearyTable bigger(universe_, capacity_ * 2, values_.width());
    for_each([&](std::uint64_t k, std::uint64_t v) { bigger.put(k, v); });
    *this = std::move(bigger);
}

std::size_t ClearyTable::memory_bytes() const {
    return quotients_.memory_bytes() + values_.memory_bytes() + occupied_.memory_bytes() +
           virgin_.memory_bytes() + change_.memory_bytes();
}

// OverflowTable

OverflowTable::OverflowTable(std::uint64_t universe, std::uint64_t capacity)
    : universe_(universe), capacity_(capacity) {
    if (!is_power_of_two(capacity)) {
        throw ContractViolation("overflow table capacity must be a power of two");
    }
    keys_ = CompactVector(capacity, bits_for(universe + 1));
    values_ = CompactVector(capacity, bits_for(universe));
}

std::uint64_t OverflowTable::get(std::uint64_t key) const {
    const std::uint64_t mask = capacity_ - 1;
    for (std::uint64_t i = scramble(key) & mask;; i = (i + 1) & mask) {
        const std::uint64_t k = keys_.get(i);
        if (k == 0) {
            return ~std::uint64_t{0};
        }
        if (k == key + 1) {
            return values_.get(i);
        }
    }
}

void OverflowTable::put(std::uint64_t key, std::uint64_t value) {
    if (key >= universe_ || value >= universe_) {
        throw ContractViolation("overflow table entry outside the universe");
    }
    if (exceeds_max_load(size_ + 1, capacity_)) {
        grow();
    }
    const std::uint64_t mask = capacity_ - 1;
    for (std::uint64_t i = scramble(key) & mask;; i = (i + 1) & mask) {
        const std::uint64_t k = keys_.get(i);
        if (k == 0) {
            keys_.set(i, key + 1);
            values_.set(i, value);
            ++size_;
            return;
        }
        if (k == key + 1) {
            values_.set(i, value);
            return;
        }
    }
}

void OverflowTable::grow() {
    OverflowTable bigger(universe_, capacity_ * 2);
    for (std::uint64_t i = 0; i < capacity_; ++i) {
        if (const std::uint64_t k = keys_.get(i); k != 0) {
            bigger.put(k - 1, values_.get(i));
        }
    }
    *this = std::move(bigger);
}

// DisplacementStore

DisplacementStore::DisplacementStore(std::uint64_t m)
    : d1_(m, kD1Bits), d2_(m, kD2InitialCapacity, kD2Bits), d3_(m, kD3InitialCapacity) {}

void DisplacementStore::set(std::uint64_t i, std::uint64_t d) {
    if (d < kEscape) {
        d1_.set(i, d);
        return;
    }
    d1_.set(i, kEscape);
    if (d < kD2Limit) {
        d2_.put(i, d - kEscape);
    } else {
        d3_.put(i, d);
    }
}

std::uint64_t DisplacementStore::get_slow(std::uint64_t i) const {
    if (const std::uint64_t v = d2_.get(i); v != ClearyTable::npos) {
        return v + kEscape;
    }
    const std::uint64_t v = d3_.get(i);
    if (v == ~std::uint64_t{0}) {
        throw CorruptionError("displacement escape without an overflow entry");
    }
    return v;
}

}  // namespace dynpdt
