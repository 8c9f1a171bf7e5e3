#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dynpdt/core.hpp"

namespace dynpdt {

class IoError : public Error {
  public:
    using Error::Error;
};

class EmptyCorpus : public Error {
  public:
    using Error::Error;
};

struct CorpusStats {
    std::uint64_t size_bytes = 0;  // total keyword length, terminators excluded
    std::uint64_t count = 0;
    std::uint64_t min_len = 0;
    std::uint64_t max_len = 0;
    double ave_len = 0.0;
    std::uint32_t alphabet_size = 0;
    std::uint64_t blank_lines = 0;
    std::uint64_t invalid_lines = 0;
    std::uint64_t duplicates_removed = 0;
};

struct Corpus {
    std::vector<Keyword> keys;
    std::string source;
    CorpusStats stats;
};

// Validates raw keys, optionally drops repeated keys (first occurrence wins),
// and fills in the statistics. Throws EmptyCorpus when nothing valid remains.
Corpus make_corpus(const std::vector<std::string>& raw, std::string source, bool dedupe);

// One keyword per LF-terminated line; a trailing CR is stripped. Blank lines
// and lines containing 0x00 are skipped and counted.
Corpus load_corpus(const std::string& path, bool dedupe);

// Uniform draw from [0, n) by rejection, independent of the standard library's
// distribution implementations.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n);

// Fisher-Yates shuffle driven by mt19937_64 seeded with seed.
template <class T>
void shuffle_in_place(std::vector<T>& items, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = bounded_draw(rng, i);
        std::swap(items[i - 1], items[j]);
    }
}

Corpus shuffle(Corpus corpus, std::uint64_t seed);

// Deterministic synthetic corpora of n distinct keywords.
enum class SyntheticKind { Words, Kmers, Urls };

std::vector<std::string> synthetic_keys(SyntheticKind kind, std::size_t n, std::uint64_t seed);
SyntheticKind parse_synthetic_kind(const std::string& s);

}  // namespace dynpdt
