#include "dynpdt/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace dynpdt {

Corpus make_corpus(const std::vector<std::string>& raw, std::string source, bool dedupe) {
    Corpus c;
    c.source = std::move(source);
    std::unordered_set<std::string_view> seen;
    std::array<bool, 256> used{};
    for (const std::string& line : raw) {
        if (line.empty()) {
            ++c.stats.blank_lines;
            continue;
        }
        if (line.find(kTerminator) != std::string::npos) {
            ++c.stats.invalid_lines;
            continue;
        }
        if (dedupe && !seen.insert(line).second) {
            ++c.stats.duplicates_removed;
            continue;
        }
        c.keys.push_back(Keyword::from(line));
    }
    if (c.keys.empty()) {
        throw EmptyCorpus("no valid keywords in " + c.source);
    }

    CorpusStats& s = c.stats;
    s.count = c.keys.size();
    s.min_len = std::numeric_limits<std::uint64_t>::max();
    for (const Keyword& k : c.keys) {
        const std::uint64_t len = k.body().size();
        s.size_bytes += len;
        s.min_len = std::min(s.min_len, len);
        s.max_len = std::max(s.max_len, len);
        for (const char ch : k.body()) {
            used[static_cast<std::uint8_t>(ch)] = true;
        }
    }
    s.ave_len = static_cast<double>(s.size_bytes) / static_cast<double>(s.count);
    s.alphabet_size = static_cast<std::uint32_t>(std::count(used.begin(), used.end(), true));
    return c;
}

Corpus load_corpus(const std::string& path, bool dedupe) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(std::move(line));
    }
    if (in.bad()) {
        throw IoError("read error on " + path);
    }
    return make_corpus(lines, path, dedupe);
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    // Reject the low (2^64 mod n) outputs so every residue is equally likely.
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) {
            return r % n;
        }
    }
}

Corpus shuffle(Corpus corpus, std::uint64_t seed) {
    shuffle_in_place(corpus.keys, seed);
    return corpus;
}

namespace {

std::string random_word(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
    static constexpr std::string_view kLetters = "etaoinshrdlcumwfgypbvkjxqz";
    const std::size_t len = min_len + bounded_draw(rng, max_len - min_len + 1);
    std::string w;
    for (std::size_t i = 0; i < len; ++i) {
        // Skewed toward frequent letters: min of two draws.
        const std::size_t a = bounded_draw(rng, kLetters.size());
        const std::size_t b = bounded_draw(rng, kLetters.size());
        w.push_back(kLetters[std::min(a, b)]);
    }
    return w;
}

std::string make_word_key(std::mt19937_64& rng) {
    std::string k = random_word(rng, 2, 10);
    if (bounded_draw(rng, 3) == 0) {
        k.push_back(' ');
        k += random_word(rng, 2, 8);
    }
    k[0] = static_cast<char>(k[0] - 'a' + 'A');
    return k;
}

std::string make_kmer(std::mt19937_64& rng) {
    static constexpr std::string_view kBases = "ACGT";
    std::string k;
    for (int i = 0; i < 12; ++i) {
        k.push_back(kBases[bounded_draw(rng, 4)]);
    }
    return k;
}

struct UrlVocabulary {
    std::vector<std::string> hosts;
    std::vector<std::string> segments;
};

UrlVocabulary make_url_vocabulary(std::mt19937_64& rng, std::size_t n) {
    static constexpr std::array<std::string_view, 6> kTlds = {".com", ".org", ".net", ".co.uk", ".ac.uk", ".edu"};
    UrlVocabulary v;
    const std::size_t hosts = std::max<std::size_t>(4, n / 40);
    for (std::size_t i = 0; i < hosts; ++i) {
        std::string h = bounded_draw(rng, 2) == 0 ? "http://www." : "http://";
        h += random_word(rng, 4, 12);
        h += kTlds[bounded_draw(rng, kTlds.size())];
        v.hosts.push_back(std::move(h));
    }
    const std::size_t segs = std::max<std::size_t>(16, n / 20);
    for (std::size_t i = 0; i < segs; ++i) {
        v.segments.push_back(random_word(rng, 3, 10));
    }
    return v;
}

std::string make_url(std::mt19937_64& rng, const UrlVocabulary& v) {
    // Zipf-like host choice: a few hosts hold most of the pages.
    const std::size_t h = bounded_draw(rng, 1 + bounded_draw(rng, v.hosts.size()));
    std::string url = v.hosts[h];
    const std::size_t depth = 1 + bounded_draw(rng, 4);
    for (std::size_t i = 0; i < depth; ++i) {
        url.push_back('/');
        url += v.segments[bounded_draw(rng, 1 + bounded_draw(rng, v.segments.size()))];
    }
    switch (bounded_draw(rng, 4)) {
        case 0: url += ".html"; break;
        case 1: url += "/index.php?id=" + std::to_string(bounded_draw(rng, 100000)); break;
        case 2: url.push_back('/'); break;
        default: break;
    }
    return url;
}

}  // namespace

std::vector<std::string> synthetic_keys(SyntheticKind kind, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    UrlVocabulary vocab;
    if (kind == SyntheticKind::Urls) {
        vocab = make_url_vocabulary(rng, n);
    }
    std::unordered_set<std::string> seen;
    std::vector<std::string> keys;
    keys.reserve(n);
    std::size_t attempts = 0;
    while (keys.size() < n) {
        if (++attempts > 1000 * (n + 10)) {
            throw ResourceExhausted("cannot generate enough distinct synthetic keys");
        }
        std::string k;
        switch (kind) {
            case SyntheticKind::Words: k = make_word_key(rng); break;
            case SyntheticKind::Kmers: k = make_kmer(rng); break;
            case SyntheticKind::Urls: k = make_url(rng, vocab); break;
        }
        if (seen.insert(k).second) {
            keys.push_back(std::move(k));
        }
    }
    return keys;
}

SyntheticKind parse_synthetic_kind(const std::string& s) {
    if (s == "words") return SyntheticKind::Words;
    if (s == "kmers") return SyntheticKind::Kmers;
    if (s == "urls") return SyntheticKind::Urls;
    throw ContractViolation("unknown synthetic corpus kind: " + s);
}

}  // namespace dynpdt
