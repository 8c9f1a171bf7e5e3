#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dynpdt/dictionary.hpp"

namespace dynpdt {

struct ShapeStats {
    std::uint64_t node_count = 0;
    std::uint64_t step_count = 0;
    // Mean depth of the regular nodes, counting only regular ancestors.
    double ave_height = 0.0;
    // step_count / node_count.
    double steps_pct = 0.0;
    // Mean label length of the regular nodes, terminator included.
    double ave_nll = 0.0;

    friend bool operator==(const ShapeStats&, const ShapeStats&) = default;
};

ShapeStats shape_stats(const Dictionary& dict);

// Average node depth of the static path-decomposed trie over keys when every
// path continues into the child with the most leaves (centroid_bound) or the
// fewest leaves (anticentroid_bound). Ties go to the smallest byte. Keys are
// raw keywords without terminator; duplicates are ignored.
//
// Any path decomposition of the same trie, including the one built
// incrementally by Dictionary, has an average height between the two.
double centroid_bound(std::vector<std::string> keys);
double anticentroid_bound(std::vector<std::string> keys);

}  // namespace dynpdt
