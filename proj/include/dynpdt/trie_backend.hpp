#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "dynpdt/core.hpp"

namespace dynpdt {

// Old id -> new id after an m-Bonsai table doubles. Vacant old slots map to kNoNode.
struct IdRemap {
    std::vector<NodeId> old_to_new;
    std::uint64_t new_capacity = 0;
};

struct AddResult {
    NodeId id = kNoNode;
    // Set when the table doubled before the child was placed. For the m-Bonsai
    // family every previously held id (including the parent passed in) must be
    // translated through remap; the returned id is already post-growth.
    bool grew = false;
    std::optional<IdRemap> remap;
};

// A dynamic trie over edge symbols whose nodes are identified by integer ids.
class TrieBackend {
  public:
    virtual ~TrieBackend() = default;

    virtual NodeId root() const = 0;
    // kNoNode when u has no child labeled c.
    virtual NodeId get_child(NodeId u, EdgeSymbol c) const = 0;
    // Caller guarantees get_child(u, c) == kNoNode.
    virtual AddResult add_child(NodeId u, EdgeSymbol c) = 0;
    virtual NodeId get_parent(NodeId u) const = 0;
    virtual EdgeSymbol get_edge(NodeId u) const = 0;
    // Doubles the capacity. Returns the id translation for the m-Bonsai family.
    virtual std::optional<IdRemap> grow() = 0;

    // Visits every non-root node once.
    virtual void for_each_node(const std::function<void(NodeId id, NodeId parent, EdgeSymbol c)>& fn) const = 0;

    virtual std::uint64_t node_count() const = 0;
    virtual std::uint64_t capacity() const = 0;
    // Every live id is below this bound.
    virtual std::uint64_t id_bound() const = 0;
    virtual std::uint64_t growth_count() const = 0;
    // True when ids survive growth (FK-hash family).
    virtual bool stable_ids() const = 0;
    virtual std::size_t memory_bytes() const = 0;
    virtual ReprKind kind() const = 0;
};

std::unique_ptr<TrieBackend> make_backend(const Config& cfg);

}  // namespace dynpdt
