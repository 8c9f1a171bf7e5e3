#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dynpdt/core.hpp"
#include "dynpdt/label_map.hpp"
#include "dynpdt/trie_backend.hpp"

namespace dynpdt {

enum class InsertResult { Inserted, AlreadyPresent };
enum class DeleteResult { Deleted, NotFound };

// Nodes visited while retrieving one keyword.
struct PathTrace {
    bool found = false;
    std::uint32_t regular_nodes = 0;  // non-step nodes, including the final one
    std::uint32_t step_nodes = 0;
};

// Keyword dictionary over a dynamic path-decomposed trie.
//
// Each node stores the unmatched remainder of the keyword that created it.
// Descending from a node whose label first differs from the query at offset i
// with byte b follows the edge <b, i>; offsets of lambda or more are reached
// through floor(i / lambda) step edges followed by <b, i mod lambda>.
//
// Deletion overwrites the stored value with kInvalidValue and leaves the
// structure in place; re-inserting the keyword reuses its node.
class Dictionary {
  public:
    explicit Dictionary(const Config& cfg = Config{});

    // Throws InvalidKeyword for bad keys and ContractViolation for v == kInvalidValue.
    InsertResult insert(std::string_view key, Value v);
    InsertResult insert(const Keyword& key, Value v);
    std::optional<Value> lookup(std::string_view key) const;
    std::optional<Value> lookup(const Keyword& key) const;
    DeleteResult erase(std::string_view key);
    DeleteResult erase(const Keyword& key);

    // Visits every live keyword (without terminator) once, depth first with
    // children in symbol order.
    void for_each(const std::function<void(std::string_view key, Value v)>& fn) const;
    std::vector<std::pair<std::string, Value>> enumerate() const;

    PathTrace trace(const Keyword& key) const;
    // Node holding key's record (also for deleted keys), or kNoNode.
    NodeId node_of(const Keyword& key) const;

    // Called after every backend growth event, with the id translation for the
    // m-Bonsai family and nullopt for the FK-hash family.
    using GrowthObserver = std::function<void(const std::optional<IdRemap>&)>;
    void on_growth(GrowthObserver fn) { on_growth_ = std::move(fn); }

    std::uint64_t size() const { return key_count_; }
    bool empty() const { return key_count_ == 0; }
    std::uint64_t node_count() const { return has_root_label_ ? backend_->node_count() : 0; }
    std::size_t memory_bytes() const { return backend_->memory_bytes() + labels_->memory_bytes(); }

    const Config& config() const { return cfg_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const TrieBackend& backend() const { return *backend_; }
    const NodeLabelMap& labels() const { return *labels_; }

  private:
    struct Located {
        NodeId node = kNoNode;
        bool found = false;
    };

    // Offset of the first byte where the residual key and the node label differ.
    static std::size_t mismatch(std::string_view rest, const LabelRecord& label);
    Located locate(std::string_view key, PathTrace* trace) const;
    NodeId add_child(NodeId u, EdgeSymbol c);

    Config cfg_;
    Alphabet alphabet_;
    std::unique_ptr<TrieBackend> backend_;
    std::unique_ptr<NodeLabelMap> labels_;
    GrowthObserver on_growth_;
    bool has_root_label_ = false;
    std::uint64_t key_count_ = 0;
};

}  // namespace dynpdt
