#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

#include "json.hpp"

#include "dynpdt/analysis.hpp"
#include "dynpdt/corpus.hpp"
#include "dynpdt/dictionary.hpp"

namespace dynpdt {

enum class ReportFormat { Json, Tsv };
ReportFormat parse_report_format(const std::string& s);

struct BenchReport {
    Config config;
    std::string corpus;
    std::uint64_t keys = 0;
    std::uint64_t growth_count = 0;
    std::uint64_t build_ns = 0;
    double insert_ns_per_op = 0.0;
    double lookup_ns_per_op = 0.0;
    double miss_ns_per_op = 0.0;
    std::uint64_t queries = 0;
    std::uint64_t miss_queries = 0;
    std::uint32_t repeats = 0;
    std::size_t backend_bytes = 0;
    std::size_t label_bytes = 0;
    std::size_t memory_bytes = 0;
    ShapeStats shape;
    // Lookups that returned the wrong value, and miss queries that were found.
    std::uint64_t wrong_hits = 0;
    std::uint64_t false_hits = 0;
};

// Inserts every corpus key (value = position in the corpus) and checks that all
// of them read back.
std::pair<Dictionary, BenchReport> run_build(const Corpus& corpus, const Config& cfg);

// Times lookups of a sample of min(max_queries, n) distinct corpus keys, and of
// the same keys with their last byte changed to one that makes them absent.
// Each measurement is the mean over `repeats` passes.
void run_query(const Dictionary& dict, const Corpus& corpus, std::uint64_t seed, std::uint32_t repeats,
               BenchReport& report, std::uint64_t max_queries = 1'000'000);

// Field order is stable and shared by both formats.
nlohmann::ordered_json to_json(const BenchReport& r);
nlohmann::ordered_json to_json(const CorpusStats& s, const std::string& source);

// JSON: one object per line. TSV: header row, then one row per record.
void emit(const nlohmann::ordered_json& record, ReportFormat format, std::ostream& out, bool header = true);

}  // namespace dynpdt
