// dynpdt: build, benchmark and inspect path-decomposed trie dictionaries over
// newline-delimited keyword files.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dynpdt/analysis.hpp"
#include "dynpdt/bench.hpp"
#include "dynpdt/corpus.hpp"

namespace {

using namespace dynpdt;

struct Options {
    std::string corpus;
    std::string repr = "cfkt";
    std::string nlm = "slm";
    std::uint32_t lambda = 64;
    std::uint32_t ell = 16;
    std::uint64_t capacity = std::uint64_t{1} << 16;
    bool inplace = false;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    bool dedupe = false;
    std::uint32_t repeats = 10;
    std::uint64_t queries = 1'000'000;
    // gen
    std::string kind = "words";
    std::size_t count = 10000;
};

Config make_config(const Options& o) {
    Config cfg;
    cfg.repr = parse_repr(o.repr);
    cfg.nlm = parse_nlm(o.nlm);
    cfg.lambda = o.lambda;
    cfg.ell = o.ell;
    cfg.initial_capacity = o.capacity;
    cfg.inplace_growth_map = o.inplace;
    cfg.validate();
    return cfg;
}

// Corpus in insertion order: file order, or a seeded shuffle of it.
Corpus ordered_corpus(const Options& o) {
    Corpus c = load_corpus(o.corpus, o.dedupe);
    if (o.seed) {
        c = shuffle(std::move(c), *o.seed);
    }
    return c;
}

void add_corpus_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("corpus", o.corpus, "Keyword file, one keyword per line")->required();
    cmd->add_flag("--dedupe", o.dedupe, "Drop repeated keywords");
    cmd->add_option("--seed", o.seed, "Shuffle the keywords with this seed before inserting");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
}

void add_dict_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--repr", o.repr, "Trie representation")->check(CLI::IsMember({"pbt", "cbt", "pfkt", "cfkt"}));
    cmd->add_option("--nlm", o.nlm, "Node label map")->check(CLI::IsMember({"plm", "slm"}));
    cmd->add_option("--lambda", o.lambda, "Offset cap per edge symbol (power of two >= 4)");
    cmd->add_option("--ell", o.ell, "Label group size for slm")->check(CLI::IsMember({8, 16, 32, 64}));
    cmd->add_option("--capacity", o.capacity, "Initial hash table capacity (power of two)");
    cmd->add_flag("--inplace-growth", o.inplace, "Reuse the hash array as the id map while growing (pbt)");
}

int run(int argc, char** argv) {
    CLI::App app{"Dynamic path-decomposed trie dictionaries"};
    app.require_subcommand(1);
    Options o;

    auto* build = app.add_subcommand("build", "Insert a corpus and report size, shape and build time");
    add_corpus_flags(build, o);
    add_dict_flags(build, o);

    auto* bench = app.add_subcommand("bench", "Build, then time hit and miss lookups");
    add_corpus_flags(bench, o);
    add_dict_flags(bench, o);
    bench->add_option("--repeats", o.repeats, "Timed passes over the query set");
    bench->add_option("--queries", o.queries, "Maximum number of sampled queries");

    auto* stats = app.add_subcommand("stats", "Corpus statistics");
    add_corpus_flags(stats, o);

    auto* bounds = app.add_subcommand("bounds", "Average height against its lower and upper bounds");
    add_corpus_flags(bounds, o);
    add_dict_flags(bounds, o);

    auto* gen = app.add_subcommand("gen", "Write a synthetic corpus to stdout");
    gen->add_option("--kind", o.kind, "Corpus kind")->check(CLI::IsMember({"words", "kmers", "urls"}));
    gen->add_option("--count", o.count, "Number of distinct keywords");
    gen->add_option("--seed", o.seed, "Generator seed");

    CLI11_PARSE(app, argc, argv);

    const ReportFormat format = parse_report_format(o.format);
    if (*gen) {
        for (const std::string& k : synthetic_keys(parse_synthetic_kind(o.kind), o.count, o.seed.value_or(1))) {
            std::cout << k << '\n';
        }
        return 0;
    }

    const Corpus corpus = ordered_corpus(o);
    if (corpus.stats.blank_lines + corpus.stats.invalid_lines > 0) {
        std::cerr << "warning: skipped " << corpus.stats.blank_lines << " blank and " << corpus.stats.invalid_lines
                  << " invalid lines\n";
    }

    if (*stats) {
        emit(to_json(corpus.stats, corpus.source), format, std::cout);
        return 0;
    }

    const Config cfg = make_config(o);
    if (*bounds) {
        std::vector<std::string> keys;
        keys.reserve(corpus.keys.size());
        for (const Keyword& k : corpus.keys) {
            keys.emplace_back(k.body());
        }
        const auto [dict, report] = run_build(corpus, cfg);
        nlohmann::ordered_json j;
        j["corpus"] = corpus.source;
        j["keys"] = dict.size();
        j["lambda"] = cfg.lambda;
        j["centroid_bound"] = centroid_bound(keys);
        j["ave_height"] = report.shape.ave_height;
        j["anticentroid_bound"] = anticentroid_bound(keys);
        emit(j, format, std::cout);
        return 0;
    }

    auto [dict, report] = run_build(corpus, cfg);
    if (*bench) {
        run_query(dict, corpus, o.seed.value_or(0), o.repeats, report, o.queries);
    }
    emit(to_json(report), format, std::cout);
    if (report.wrong_hits != 0 || report.false_hits != 0) {
        std::cerr << "error: verification failed (" << report.wrong_hits << " wrong hits, " << report.false_hits
                  << " false hits)\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const dynpdt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
