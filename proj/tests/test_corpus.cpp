#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dynpdt/bench.hpp"
#include "dynpdt/corpus.hpp"

using namespace dynpdt;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("dynpdt_test_" + name);
    std::ofstream(path, std::ios::binary) << content;
    return path.string();
}

std::vector<std::string> bodies(const Corpus& c) {
    std::vector<std::string> out;
    for (const Keyword& k : c.keys) out.emplace_back(k.body());
    return out;
}

}  // namespace

TEST_CASE("load a four word corpus") {
    const std::string p = write_temp("tech_words", "technology\ntechnics\ntechnique\ntechnically\n");
    const Corpus c = load_corpus(p, false);
    CHECK(bodies(c) == std::vector<std::string>{"technology", "technics", "technique", "technically"});
    CHECK(c.stats.count == 4);
    CHECK(c.stats.size_bytes == 10 + 8 + 9 + 11);
    CHECK(c.stats.min_len == 8);
    CHECK(c.stats.max_len == 11);
    CHECK(c.stats.ave_len == doctest::Approx(38.0 / 4));
    CHECK(c.stats.alphabet_size == std::set<char>{'t', 'e', 'c', 'h', 'n', 'o', 'l', 'g', 'y', 'i', 's', 'q', 'u', 'a'}.size());
    CHECK(c.source == p);
}

TEST_CASE("blank, CRLF, invalid and duplicate lines") {
    const std::string p = write_temp("messy", std::string("b\r\na\n\nc\nb\nx\0y\na\nd", 17));
    const Corpus raw = load_corpus(p, false);
    CHECK(bodies(raw) == std::vector<std::string>{"b", "a", "c", "b", "a", "d"});
    CHECK(raw.stats.blank_lines == 1);
    CHECK(raw.stats.invalid_lines == 1);
    CHECK(raw.stats.duplicates_removed == 0);

    const Corpus dd = load_corpus(p, true);
    std::vector<std::string> sorted = bodies(raw);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    CHECK(dd.stats.count == sorted.size());
    CHECK(bodies(dd) == std::vector<std::string>{"b", "a", "c", "d"});
    CHECK(dd.stats.duplicates_removed == 2);
}

TEST_CASE("corpus errors") {
    CHECK_THROWS_AS(load_corpus("/nonexistent/dir/keys.txt", false), IoError);
    CHECK_THROWS_AS(load_corpus(write_temp("blank", "\n\r\n\n"), false), EmptyCorpus);
    CHECK_THROWS_AS(make_corpus({}, "none", false), EmptyCorpus);
}

TEST_CASE("shuffle") {
    std::vector<std::string> raw;
    for (int i = 0; i < 100; ++i) raw.push_back("k" + std::to_string(i));
    const Corpus c = make_corpus(raw, "mem", false);
    const Corpus a = shuffle(c, 42), b = shuffle(c, 42), other = shuffle(c, 43);
    CHECK(bodies(a) == bodies(b));
    CHECK(bodies(a) != bodies(other));
    std::vector<std::string> sa = bodies(a), sc = bodies(c);
    std::sort(sa.begin(), sa.end());
    std::sort(sc.begin(), sc.end());
    CHECK(sa == sc);
}

TEST_CASE("shuffle of three items is uniform") {
    std::map<std::vector<int>, int> hits;
    constexpr int kSeeds = 10000;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        std::vector<int> v = {0, 1, 2};
        shuffle_in_place(v, seed);
        ++hits[v];
    }
    CHECK(hits.size() == 6);
    for (const auto& [perm, n] : hits) {
        const double f = static_cast<double>(n) / kSeeds;
        CHECK(f >= 1.0 / 6 - 0.02);
        CHECK(f <= 1.0 / 6 + 0.02);
    }
}

TEST_CASE("bounded draw stays in range and covers it") {
    std::mt19937_64 rng(1);
    for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 7ULL, 1000ULL, (1ULL << 63) + 5}) {
        std::set<std::uint64_t> seen;
        for (int i = 0; i < 30000; ++i) {
            const std::uint64_t x = bounded_draw(rng, n);
            REQUIRE(x < n);
            seen.insert(x);
        }
        if (n <= 1000) CHECK(seen.size() == n);
    }
}

TEST_CASE("synthetic corpora") {
    for (const char* kind : {"words", "kmers", "urls"}) {
        const SyntheticKind k = parse_synthetic_kind(kind);
        const auto a = synthetic_keys(k, 10000, 7);
        CHECK(a == synthetic_keys(k, 10000, 7));
        CHECK(a != synthetic_keys(k, 10000, 8));
        CHECK(std::set<std::string>(a.begin(), a.end()).size() == 10000);
        for (const std::string& s : a) {
            REQUIRE_FALSE(s.empty());
            REQUIRE(s.find('\0') == std::string::npos);
        }
    }
    for (const std::string& s : synthetic_keys(SyntheticKind::Kmers, 1000, 1)) {
        REQUIRE(s.size() == 12);
        REQUIRE(s.find_first_not_of("ACGT") == std::string::npos);
    }
    for (const std::string& s : synthetic_keys(SyntheticKind::Urls, 1000, 1)) REQUIRE(s.rfind("http://", 0) == 0);
    CHECK_THROWS_AS(parse_synthetic_kind("dna"), ContractViolation);
}

TEST_CASE("every combination builds, verifies and rejects mutated keys") {
    const Corpus c = make_corpus(synthetic_keys(SyntheticKind::Words, 10000, 3), "words", true);
    for (ReprKind repr : {ReprKind::PBT, ReprKind::CBT, ReprKind::PFKT, ReprKind::CFKT}) {
        for (NlmKind nlm : {NlmKind::PLM, NlmKind::SLM}) {
            for (std::uint32_t lambda : {4u, 64u}) {
                for (std::uint32_t ell : {8u, 64u}) {
                    Config cfg;
                    cfg.repr = repr;
                    cfg.nlm = nlm;
                    cfg.lambda = lambda;
                    cfg.ell = ell;
                    cfg.initial_capacity = 1024;
                    auto [dict, report] = run_build(c, cfg);
                    run_query(dict, c, 5, 1, report);
                    CAPTURE(to_string(repr));
                    CAPTURE(to_string(nlm));
                    CAPTURE(lambda);
                    CAPTURE(ell);
                    CHECK(report.wrong_hits == 0);
                    CHECK(report.false_hits == 0);
                    CHECK(report.queries == 10000);
                    CHECK(report.miss_queries == 10000);
                    CHECK(report.growth_count >= 3);
                    CHECK(report.memory_bytes == report.backend_bytes + report.label_bytes);
                    CHECK(report.build_ns > 0);
                }
            }
        }
    }
}

TEST_CASE("query sample is capped") {
    const Corpus c = make_corpus(synthetic_keys(SyntheticKind::Kmers, 3000, 1), "kmers", false);
    auto [dict, report] = run_build(c, Config{});
    run_query(dict, c, 1, 3, report, 500);
    CHECK(report.queries == 500);
    CHECK(report.repeats == 3);
    CHECK(report.lookup_ns_per_op > 0);
}

TEST_CASE("repeated keys keep their first value") {
    const Corpus c = make_corpus({"a", "b", "a"}, "dups", false);
    auto [dict, report] = run_build(c, Config{});
    CHECK(report.wrong_hits == 0);
    CHECK(dict.lookup("a") == 0);
    CHECK(dict.size() == 2);
}

TEST_CASE("builds are reproducible") {
    const Corpus c = shuffle(make_corpus(synthetic_keys(SyntheticKind::Urls, 5000, 2), "urls", true), 9);
    for (ReprKind repr : {ReprKind::PBT, ReprKind::CBT, ReprKind::PFKT, ReprKind::CFKT}) {
        Config cfg;
        cfg.repr = repr;
        const auto [d1, r1] = run_build(c, cfg);
        const auto [d2, r2] = run_build(c, cfg);
        CHECK(r1.memory_bytes == r2.memory_bytes);
        CHECK(r1.shape == r2.shape);
        CHECK(d1.enumerate() == d2.enumerate());
    }
}

TEST_CASE("report formats") {
    const Corpus c = make_corpus({"technology", "technics", "technique", "technically"}, "tech_words", false);
    Config cfg;
    cfg.lambda = 64;
    const auto [dict, report] = run_build(c, cfg);
    const nlohmann::ordered_json j = to_json(report);
    CHECK(j["node_count"] == 4);
    CHECK(j["step_count"] == 0);
    CHECK(j["repr"] == "cfkt");

    std::ostringstream js;
    emit(j, ReportFormat::Json, js);
    const std::string text = js.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 1);
    CHECK(nlohmann::ordered_json::parse(text) == j);

    std::ostringstream ts;
    emit(j, ReportFormat::Tsv, ts);
    std::istringstream lines(ts.str());
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK_FALSE(std::getline(lines, extra));
    CHECK(std::count(header.begin(), header.end(), '\t') == std::count(row.begin(), row.end(), '\t'));
    CHECK(static_cast<std::size_t>(std::count(header.begin(), header.end(), '\t')) + 1 == j.size());
    CHECK(header.rfind("repr\tnlm\tlambda", 0) == 0);

    CHECK(parse_report_format("tsv") == ReportFormat::Tsv);
    CHECK_THROWS_AS(parse_report_format("xml"), ContractViolation);

    const nlohmann::ordered_json s = to_json(c.stats, c.source);
    CHECK(s["keys"] == 4);
    CHECK(s["size_bytes"] == 38);
}
