#pragma once

#include <string>

#include "dynpdt/key_tables.hpp"
#include "dynpdt/trie_backend.hpp"

namespace dynpdt {

// FK-hash trie: nodes are keyed by (parent id, symbol) in a closed hash table,
// and a parallel id array assigns dense ids in creation order. The root is id 0
// and occupies no slot. Ids never change, so growth is a plain rehash.
template <class Table>
class FkTrie final : public TrieBackend {
  public:
    FkTrie(std::uint64_t capacity, const Alphabet& alphabet)
        : alphabet_(alphabet),
          sigma_bits_(alphabet.sigma_bits()),
          table_(capacity, alphabet.sigma_bits()),
          ids_(capacity, bits_for(capacity)) {
        if (!is_power_of_two(capacity) || log2_floor(capacity) > kMaxCapacityBits ||
            log2_floor(capacity) + sigma_bits_ > 64) {
            throw ResourceExhausted("unsupported table capacity");
        }
    }

    NodeId root() const override { return 0; }

    NodeId get_child(NodeId u, EdgeSymbol c) const override {
        const std::uint64_t slot = table_.find(make_key(u, c));
        return slot == Table::npos ? kNoNode : ids_.get(slot);
    }

    AddResult add_child(NodeId u, EdgeSymbol c) override {
        AddResult result;
        if (exceeds_max_load(node_count() + 1, capacity())) {
            grow();
            result.grew = true;
        }
        const std::uint64_t slot = table_.insert(make_key(u, c));
        ids_.set(slot, next_id_);
        result.id = next_id_++;
        return result;
    }

    // The id array only maps slots to ids, so these scan the table: O(m).
    NodeId get_parent(NodeId u) const override { return table_.key_at(slot_of(u)) >> sigma_bits_; }
    EdgeSymbol get_edge(NodeId u) const override {
        return EdgeSymbol{table_.key_at(slot_of(u)) & (alphabet_.sigma() - 1)};
    }

    void for_each_node(const std::function<void(NodeId, NodeId, EdgeSymbol)>& fn) const override {
        const std::uint64_t sigma_mask = alphabet_.sigma() - 1;
        for (std::uint64_t i = 0; i < table_.capacity(); ++i) {
            if (!table_.occupied(i)) {
                continue;
            }
            const std::uint64_t k = table_.key_at(i);
            fn(ids_.get(i), k >> sigma_bits_, EdgeSymbol{k & sigma_mask});
        }
    }

    std::optional<IdRemap> grow() override {
        const std::uint64_t m = capacity();
        FkTrie bigger(m * 2, alphabet_);
        for (std::uint64_t i = 0; i < m; ++i) {
            if (table_.occupied(i)) {
                const std::uint64_t slot = bigger.table_.insert(table_.key_at(i));
                bigger.ids_.set(slot, ids_.get(i));
            }
        }
        bigger.next_id_ = next_id_;
        bigger.growths_ = growths_ + 1;
        *this = std::move(bigger);
        return std::nullopt;
    }

    std::uint64_t node_count() const override { return next_id_; }
    std::uint64_t capacity() const override { return table_.capacity(); }
    std::uint64_t id_bound() const override { return next_id_; }
    std::uint64_t growth_count() const override { return growths_; }
    bool stable_ids() const override { return true; }
    std::size_t memory_bytes() const override { return table_.memory_bytes() + ids_.memory_bytes(); }
    ReprKind kind() const override { return Table::kCompact ? ReprKind::CFKT : ReprKind::PFKT; }

    const Table& table() const { return table_; }
    // Slot currently holding node u.
    std::uint64_t slot_of(NodeId u) const {
        if (u == 0) {
            throw ContractViolation("the root has no parent or edge");
        }
        if (u < next_id_) {
            for (std::uint64_t i = 0; i < table_.capacity(); ++i) {
                if (table_.occupied(i) && ids_.get(i) == u) {
                    return i;
                }
            }
        }
        throw ContractViolation("node " + std::to_string(u) + " is not live");
    }

  private:
    FkTrie& operator=(FkTrie&&) = default;
    FkTrie(FkTrie&&) = default;

    std::uint64_t make_key(NodeId u, EdgeSymbol c) const { return (u << sigma_bits_) | c.code; }

    Alphabet alphabet_;
    std::uint32_t sigma_bits_;
    Table table_;
    CompactVector ids_;
    std::uint64_t next_id_ = 1;
    std::uint64_t growths_ = 0;
};

using PlainFkTrie = FkTrie<PlainKeyTable>;
using CompactFkTrie = FkTrie<CompactKeyTable>;

}  // namespace dynpdt
