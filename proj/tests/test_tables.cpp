#include "doctest.h"

#include <map>
#include <random>
#include <vector>

#include "dynpdt/bit_vector.hpp"
#include "dynpdt/displacement.hpp"
#include "dynpdt/key_tables.hpp"

using namespace dynpdt;

TEST_CASE("compact vector against a plain vector") {
    std::mt19937_64 rng(1);
    for (std::uint32_t w : {0u, 1u, 3u, 7u, 13u, 31u, 33u, 63u, 64u}) {
        const std::uint64_t n = 1000;
        const std::uint64_t mask = w == 64 ? ~0ULL : (1ULL << w) - 1;
        CompactVector cv(n, w);
        std::vector<std::uint64_t> ref(n, 0);
        for (int i = 0; i < 20000; ++i) {
            const std::uint64_t k = rng() % n, v = rng() & mask;
            cv.set(k, v);
            ref[k] = v;
        }
        bool ok = true;
        for (std::uint64_t k = 0; k < n; ++k) ok = ok && cv.get(k) == ref[k];
        CAPTURE(w);
        CHECK(ok);
        CHECK(cv.max_value() == mask);
    }
    CompactVector ones(100, 11, 2047);
    for (std::uint64_t i = 0; i < 100; ++i) REQUIRE(ones.get(i) == 2047);
}

TEST_CASE("bit vector popcount against a per-bit counter") {
    std::mt19937_64 rng(2);
    BitVector bv(640);
    std::vector<bool> ref(640, false);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t k = rng() % 640;
        bv.set(k);
        ref[k] = true;
    }
    for (std::uint64_t begin = 0; begin < 640; begin += 8) {
        for (std::uint64_t end = begin; end <= begin - begin % 64 + 64 && end <= 640; ++end) {
            std::uint32_t naive = 0;
            for (std::uint64_t k = begin; k < end; ++k) naive += ref[k] ? 1 : 0;
            REQUIRE(bv.popcount_in_word(begin, end) == naive);
        }
    }
    bv.set(5, false);
    CHECK_FALSE(bv.get(5));
}

TEST_CASE("cleary table against a map") {
    for (std::uint64_t universe : {1ULL << 12, 1ULL << 20, 1ULL << 40}) {
        ClearyTable t(universe, 16, 7);
        std::map<std::uint64_t, std::uint64_t> ref;
        std::mt19937_64 rng(universe);
        const int n = universe == (1ULL << 12) ? 3000 : 20000;
        for (int i = 0; i < n; ++i) {
            const std::uint64_t k = rng() % universe, v = rng() % 128;
            t.put(k, v);
            ref[k] = v;
            if (i % 997 == 0) {
                for (const auto& [rk, rv] : ref) REQUIRE(t.get(rk) == rv);
            }
        }
        CAPTURE(universe);
        CHECK(t.size() == ref.size());
        CHECK(t.size() * 10 <= t.capacity() * 9);
        for (const auto& [k, v] : ref) REQUIRE(t.get(k) == v);
        int misses = 0;
        for (int i = 0; i < 5000; ++i) {
            const std::uint64_t k = rng() % universe;
            if (!ref.count(k)) {
                REQUIRE(t.find(k) == ClearyTable::npos);
                ++misses;
            }
        }
        std::map<std::uint64_t, std::uint64_t> listed;
        t.for_each([&](std::uint64_t k, std::uint64_t v) { listed[k] = v; });
        CHECK(listed == ref);
    }
}

TEST_CASE("overflow table against a map") {
    OverflowTable t(1ULL << 30, 4);
    std::map<std::uint64_t, std::uint64_t> ref;
    std::mt19937_64 rng(9);
    for (int i = 0; i < 5000; ++i) {
        const std::uint64_t k = rng() % (1ULL << 30), v = rng() % (1ULL << 30);
        t.put(k, v);
        ref[k] = v;
    }
    CHECK(t.size() == ref.size());
    for (const auto& [k, v] : ref) REQUIRE(t.get(k) == v);
    CHECK(t.get((1ULL << 30) - 1) == (ref.count((1ULL << 30) - 1) ? ref[(1ULL << 30) - 1] : ~0ULL));
}

TEST_CASE("displacement tiers") {
    DisplacementStore ds(1024);
    CHECK(ds.d2_capacity() == 1024);  // never larger than the slot universe
    CHECK(ds.d3_capacity() == DisplacementStore::kD3InitialCapacity);
    const std::vector<std::uint64_t> ds_values = {0, 1, 14, 15, 16, 142, 143, 144, 1000, 1023};
    for (std::size_t i = 0; i < ds_values.size(); ++i) ds.set(i * 3, ds_values[i]);
    for (std::size_t i = 0; i < ds_values.size(); ++i) CHECK(ds.get(i * 3) == ds_values[i]);
    // 15..142 in the middle tier, 143 and up in the overflow table.
    CHECK(ds.d2_size() == 3);
    CHECK(ds.d3_size() == 4);
    CHECK(ds.get(1) == 0);
}

TEST_CASE("displacement store against a vector") {
    const std::uint64_t m = 1 << 14;
    DisplacementStore ds(m);
    std::vector<std::uint64_t> ref(m, 0);
    std::mt19937_64 rng(4);
    for (std::uint64_t i = 0; i < m; ++i) {
        // Mostly small, with a heavy tail into both escape tiers.
        const std::uint64_t r = rng() % 100;
        const std::uint64_t d = r < 80 ? rng() % 15 : r < 97 ? rng() % 160 : rng() % m;
        ds.set(i, d);
        ref[i] = d;
    }
    bool ok = true;
    for (std::uint64_t i = 0; i < m; ++i) ok = ok && ds.get(i) == ref[i];
    CHECK(ok);
    CHECK(ds.d2_size() > DisplacementStore::kD2InitialCapacity / 2);
}

namespace {

template <class Table>
void check_key_table(std::uint32_t sigma_bits) {
    const std::uint64_t m = 1 << 10;
    Table t(m, sigma_bits);
    std::map<std::uint64_t, std::uint64_t> slot_of;
    std::mt19937_64 rng(sigma_bits);
    const std::uint64_t universe = m << sigma_bits;
    while (slot_of.size() < m * 9 / 10) {
        const std::uint64_t k = rng() % universe;
        if (slot_of.count(k)) continue;
        REQUIRE(t.find(k) == Table::npos);
        slot_of[k] = t.insert(k);
    }
    CHECK(t.size() == slot_of.size());
    for (const auto& [k, s] : slot_of) {
        REQUIRE(t.find(k) == s);
        REQUIRE(t.occupied(s));
        REQUIRE(t.key_at(s) == k);
        // No empty slot between the initial address and the entry.
        const std::uint64_t home = t.initial_address(k);
        REQUIRE(((s - home) & (m - 1)) == t.displacement(s));
        for (std::uint64_t i = home; i != s; i = (i + 1) & (m - 1)) REQUIRE(t.occupied(i));
    }
}

}  // namespace

TEST_CASE("key tables store, find and reconstruct keys") {
    check_key_table<PlainKeyTable>(11);
    check_key_table<CompactKeyTable>(11);
    check_key_table<CompactKeyTable>(17);
}

TEST_CASE("plain key table memory") {
    // m slots of log(m * sigma) bits, rounded to whole words plus one spare word.
    const PlainKeyTable t(1 << 16, 15);
    const std::size_t bits = (std::size_t{1} << 16) * 31;
    CHECK(t.memory_bytes() >= bits / 8);
    CHECK(t.memory_bytes() <= bits / 8 + 16);
}
