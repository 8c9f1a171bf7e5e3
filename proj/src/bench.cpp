#include "dynpdt/bench.hpp"

#include <array>
#include <chrono>
#include <numeric>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace dynpdt {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point t0) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count());
}

// Keeps the optimizer from discarding lookup results.
volatile std::uint64_t sink = 0;

}  // namespace

ReportFormat parse_report_format(const std::string& s) {
    if (s == "json") return ReportFormat::Json;
    if (s == "tsv") return ReportFormat::Tsv;
    throw ContractViolation("unknown report format: " + s);
}

std::pair<Dictionary, BenchReport> run_build(const Corpus& corpus, const Config& cfg) {
    Dictionary dict(cfg);
    BenchReport r;
    r.config = cfg;
    r.corpus = corpus.source;
    r.keys = corpus.keys.size();

    const auto t0 = Clock::now();
    for (std::size_t i = 0; i < corpus.keys.size(); ++i) {
        dict.insert(corpus.keys[i], static_cast<Value>(i));
    }
    r.build_ns = elapsed_ns(t0);
    r.insert_ns_per_op = static_cast<double>(r.build_ns) / static_cast<double>(corpus.keys.size());

    // Without deduplication a repeated key keeps its first value.
    std::vector<std::size_t> first(corpus.keys.size());
    std::iota(first.begin(), first.end(), 0);
    if (corpus.stats.duplicates_removed == 0) {
        std::unordered_map<std::string_view, std::size_t> seen;
        for (std::size_t i = 0; i < corpus.keys.size(); ++i) {
            first[i] = seen.emplace(corpus.keys[i].body(), i).first->second;
        }
    }
    for (std::size_t i = 0; i < corpus.keys.size(); ++i) {
        const std::optional<Value> v = dict.lookup(corpus.keys[i]);
        if (!v || *v != static_cast<Value>(first[i])) {
            ++r.wrong_hits;
        }
    }

    r.growth_count = dict.backend().growth_count();
    r.backend_bytes = dict.backend().memory_bytes();
    r.label_bytes = dict.labels().memory_bytes();
    r.memory_bytes = dict.memory_bytes();
    r.shape = shape_stats(dict);
    return {std::move(dict), r};
}

void run_query(const Dictionary& dict, const Corpus& corpus, std::uint64_t seed, std::uint32_t repeats,
               BenchReport& report, std::uint64_t max_queries) {
    const std::size_t n = corpus.keys.size();
    const std::size_t q = static_cast<std::size_t>(std::min<std::uint64_t>(max_queries, n));

    // Sample without replacement: a partial Fisher-Yates over positions.
    std::vector<std::size_t> pos(n);
    std::iota(pos.begin(), pos.end(), 0);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < q; ++i) {
        std::swap(pos[i], pos[i + bounded_draw(rng, n - i)]);
    }
    pos.resize(q);

    // Miss queries: replace the last byte with the first non-zero byte the
    // corpus never uses; drop the rare mutants that are still corpus keys.
    std::array<bool, 256> used{};
    for (const Keyword& k : corpus.keys) {
        for (const char ch : k.body()) {
            used[static_cast<std::uint8_t>(ch)] = true;
        }
    }
    int spare = 1;
    while (spare < 256 && used[spare]) {
        ++spare;
    }
    std::unordered_set<std::string_view> present;
    for (const Keyword& k : corpus.keys) {
        present.insert(k.body());
    }
    std::vector<Keyword> misses;
    for (const std::size_t p : pos) {
        std::string m(corpus.keys[p].body());
        if (spare < 256) {
            m.back() = static_cast<char>(spare);
        } else {
            m.back() = static_cast<char>(static_cast<std::uint8_t>(m.back()) % 255 + 1);
        }
        if (!present.contains(m)) {
            misses.push_back(Keyword::from(m));
        }
    }

    repeats = std::max<std::uint32_t>(repeats, 1);
    std::uint64_t hit_ns = 0, miss_ns = 0;
    report.false_hits = 0;
    for (std::uint32_t rep = 0; rep < repeats; ++rep) {
        auto t0 = Clock::now();
        std::uint64_t acc = 0;
        for (const std::size_t p : pos) {
            const std::optional<Value> v = dict.lookup(corpus.keys[p]);
            acc += v ? *v : 1;
        }
        hit_ns += elapsed_ns(t0);

        t0 = Clock::now();
        std::uint64_t found = 0;
        for (const Keyword& k : misses) {
            found += dict.lookup(k).has_value() ? 1 : 0;
        }
        miss_ns += elapsed_ns(t0);
        sink = sink + acc;
        if (rep == 0) {
            report.false_hits = found;
        }
    }

    report.queries = q;
    report.miss_queries = misses.size();
    report.repeats = repeats;
    report.lookup_ns_per_op = static_cast<double>(hit_ns) / static_cast<double>(repeats * std::max<std::size_t>(q, 1));
    report.miss_ns_per_op =
        static_cast<double>(miss_ns) / static_cast<double>(repeats * std::max<std::size_t>(misses.size(), 1));
}

nlohmann::ordered_json to_json(const BenchReport& r) {
    nlohmann::ordered_json j;
    j["repr"] = to_string(r.config.repr);
    j["nlm"] = to_string(r.config.nlm);
    j["lambda"] = r.config.lambda;
    j["ell"] = r.config.ell;
    j["initial_capacity"] = r.config.initial_capacity;
    j["corpus"] = r.corpus;
    j["keys"] = r.keys;
    j["node_count"] = r.shape.node_count;
    j["step_count"] = r.shape.step_count;
    j["growth_count"] = r.growth_count;
    j["build_ns"] = r.build_ns;
    j["insert_ns_per_op"] = r.insert_ns_per_op;
    j["lookup_ns_per_op"] = r.lookup_ns_per_op;
    j["miss_ns_per_op"] = r.miss_ns_per_op;
    j["queries"] = r.queries;
    j["miss_queries"] = r.miss_queries;
    j["repeats"] = r.repeats;
    j["backend_bytes"] = r.backend_bytes;
    j["label_bytes"] = r.label_bytes;
    j["memory_bytes"] = r.memory_bytes;
    j["ave_height"] = r.shape.ave_height;
    j["steps_pct"] = r.shape.steps_pct;
    j["ave_nll"] = r.shape.ave_nll;
    j["wrong_hits"] = r.wrong_hits;
    j["false_hits"] = r.false_hits;
    return j;
}

nlohmann::ordered_json to_json(const CorpusStats& s, const std::string& source) {
    nlohmann::ordered_json j;
    j["corpus"] = source;
    j["keys"] = s.count;
    j["size_bytes"] = s.size_bytes;
    j["min_len"] = s.min_len;
    j["max_len"] = s.max_len;
    j["ave_len"] = s.ave_len;
    j["alphabet_size"] = s.alphabet_size;
    j["blank_lines"] = s.blank_lines;
    j["invalid_lines"] = s.invalid_lines;
    j["duplicates_removed"] = s.duplicates_removed;
    return j;
}

void emit(const nlohmann::ordered_json& record, ReportFormat format, std::ostream& out, bool header) {
    if (format == ReportFormat::Json) {
        out << record.dump() << '\n';
        return;
    }
    auto cell = [](const nlohmann::ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (header) {
        bool first = true;
        for (const auto& [k, v] : record.items()) {
            out << (first ? "" : "\t") << k;
            first = false;
        }
        out << '\n';
    }
    bool first = true;
    for (const auto& [k, v] : record.items()) {
        out << (first ? "" : "\t") << cell(v);
        first = false;
    }
    out << '\n';
}

}  // namespace dynpdt
