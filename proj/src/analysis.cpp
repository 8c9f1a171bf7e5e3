#include "dynpdt/analysis.hpp"

#include <algorithm>

namespace dynpdt {

ShapeStats shape_stats(const Dictionary& dict) {
    ShapeStats s;
    if (dict.node_count() == 0) {
        return s;
    }
    const TrieBackend& trie = dict.backend();
    const std::uint64_t step_code = dict.alphabet().step().code;
    const std::uint64_t bound = trie.id_bound();

    std::vector<NodeId> parent(bound, kNoNode);
    std::vector<std::uint8_t> is_step(bound, 0);
    trie.for_each_node([&](NodeId id, NodeId p, EdgeSymbol c) {
        parent[id] = p;
        is_step[id] = c.code == step_code;
    });

    // Regular ancestors per node, memoized along each climb.
    std::vector<std::int64_t> depth(bound, -1);
    depth[trie.root()] = 0;
    std::vector<NodeId> climb;
    std::uint64_t regular = 0;
    std::uint64_t height_sum = 0;
    std::uint64_t label_sum = 0;
    for (NodeId id = 0; id < bound; ++id) {
        if (id != trie.root() && parent[id] == kNoNode) {
            continue;  // vacant slot
        }
        climb.clear();
        NodeId u = id;
        while (depth[u] < 0) {
            climb.push_back(u);
            u = parent[u];
        }
        for (auto it = climb.rbegin(); it != climb.rend(); ++it) {
            const NodeId p = parent[*it];
            depth[*it] = depth[p] + (is_step[p] ? 0 : 1);
        }
        if (is_step[id]) {
            ++s.step_count;
            continue;
        }
        ++regular;
        height_sum += static_cast<std::uint64_t>(depth[id]);
        label_sum += dict.labels().access(id)->label_size();
    }
    s.node_count = regular + s.step_count;
    s.ave_height = static_cast<double>(height_sum) / static_cast<double>(regular);
    s.ave_nll = static_cast<double>(label_sum) / static_cast<double>(regular);
    s.steps_pct = static_cast<double>(s.step_count) / static_cast<double>(s.node_count);
    return s;
}

namespace {

enum class PathChoice { MostLeaves, FewestLeaves };

double decomposed_height(std::vector<std::string> keys, PathChoice choice) {
    for (std::string& k : keys) {
        k.push_back(kTerminator);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    if (keys.empty()) {
        return 0.0;
    }

    struct Range {
        std::size_t lo, hi, pos;
        std::uint64_t depth;
    };
    std::vector<Range> stack{{0, keys.size(), 0, 0}};
    std::uint64_t depth_sum = 0;
    while (!stack.empty()) {
        Range r = stack.back();
        stack.pop_back();
        // Follow one path of the static trie down to its leaf.
        while (r.hi - r.lo > 1) {
            std::size_t best_lo = r.lo, best_hi = r.lo;
            std::vector<std::pair<std::size_t, std::size_t>> others;
            for (std::size_t a = r.lo; a < r.hi;) {
                const char c = keys[a][r.pos];
                std::size_t b = a + 1;
                while (b < r.hi && keys[b][r.pos] == c) {
                    ++b;
                }
                const std::size_t size = b - a, best = best_hi - best_lo;
                const bool better = best == 0 || (choice == PathChoice::MostLeaves ? size > best : size < best);
                if (better) {
                    if (best != 0) {
                        others.emplace_back(best_lo, best_hi);
                    }
                    best_lo = a;
                    best_hi = b;
                } else {
                    others.emplace_back(a, b);
                }
                a = b;
            }
            for (const auto& [lo, hi] : others) {
                stack.push_back({lo, hi, r.pos + 1, r.depth + 1});
            }
            r.lo = best_lo;
            r.hi = best_hi;
            ++r.pos;
        }
        depth_sum += r.depth;
    }
    return static_cast<double>(depth_sum) / static_cast<double>(keys.size());
}

}  // namespace

double centroid_bound(std::vector<std::string> keys) {
    return decomposed_height(std::move(keys), PathChoice::MostLeaves);
}

double anticentroid_bound(std::vector<std::string> keys) {
    return decomposed_height(std::move(keys), PathChoice::FewestLeaves);
}

}  // namespace dynpdt
