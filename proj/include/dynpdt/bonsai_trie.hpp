#pragma once

#include <utility>
#include <vector>

#include "dynpdt/key_tables.hpp"
#include "dynpdt/trie_backend.hpp"

namespace dynpdt {

// m-Bonsai trie: a node is the hash-table entry holding the key
// (parent id, symbol), and its id is the slot it occupies. Ids therefore change
// whenever the table is rebuilt.
//
// The root is stored like any other node under the key (0, root marker); the
// marker is a symbol code that no real edge uses.
template <class Table>
class BonsaiTrie final : public TrieBackend {
  public:
    BonsaiTrie(std::uint64_t capacity, const Alphabet& alphabet, bool inplace_map = false)
        : alphabet_(alphabet),
          sigma_bits_(alphabet.sigma_bits()),
          inplace_map_(inplace_map && !Table::kCompact),
          table_(capacity, alphabet.sigma_bits()) {
        if (!is_power_of_two(capacity) || log2_floor(capacity) > kMaxCapacityBits ||
            log2_floor(capacity) + sigma_bits_ > 64) {
            throw ResourceExhausted("unsupported table capacity");
        }
        root_ = table_.insert(alphabet_.root_marker().code);
    }

    NodeId root() const override { return root_; }

    NodeId get_child(NodeId u, EdgeSymbol c) const override {
        const std::uint64_t slot = table_.find(make_key(u, c));
        return slot == Table::npos ? kNoNode : slot;
    }

    AddResult add_child(NodeId u, EdgeSymbol c) override {
        AddResult result;
        if (exceeds_max_load(node_count() + 1, capacity())) {
            result.grew = true;
            result.remap = grow();
            u = result.remap->old_to_new[u];
        }
        result.id = table_.insert(make_key(u, c));
        return result;
    }

    NodeId get_parent(NodeId u) const override { return table_.key_at(checked(u)) >> sigma_bits_; }

    EdgeSymbol get_edge(NodeId u) const override {
        return EdgeSymbol{table_.key_at(checked(u)) & (alphabet_.sigma() - 1)};
    }

    void for_each_node(const std::function<void(NodeId, NodeId, EdgeSymbol)>& fn) const override {
        const std::uint64_t sigma_mask = alphabet_.sigma() - 1;
        for (std::uint64_t i = 0; i < table_.capacity(); ++i) {
            if (i == root_ || !table_.occupied(i)) {
                continue;
            }
            const std::uint64_t k = table_.key_at(i);
            fn(i, k >> sigma_bits_, EdgeSymbol{k & sigma_mask});
        }
    }

    // Bottom-up relocation into a table twice as large, in expected O(n) time.
    // Slots are scanned left to right; from each unrelocated node we climb to
    // the nearest relocated ancestor, then re-add the recorded path top-down.
    std::optional<IdRemap> grow() override {
        const std::uint64_t m = capacity();
        BonsaiTrie bigger(m * 2, alphabet_, inplace_map_);

        BitVector done(m);
        CompactVector side_map;
        if (!inplace_map_) {
            side_map = CompactVector(m, bits_for(m * 2));
        }
        auto set_map = [&](std::uint64_t old_id, std::uint64_t new_id) {
            if constexpr (!Table::kCompact) {
                if (inplace_map_) {
                    // The slot of a relocated node is never read again.
                    table_.raw().set(old_id, new_id);
                    return;
                }
            }
            side_map.set(old_id, new_id);
        };
        auto get_map = [&](std::uint64_t old_id) -> std::uint64_t {
            if constexpr (!Table::kCompact) {
                if (inplace_map_) {
                    return table_.raw().get(old_id);
                }
            }
            return side_map.get(old_id);
        };

        done.set(root_);
        set_map(root_, bigger.root_);

        std::vector<std::pair<NodeId, EdgeSymbol>> path;
        std::uint64_t relocated = 0;
        for (std::uint64_t i = 0; i < m; ++i) {
            if (done.get(i) || !table_.occupied(i)) {
                continue;
            }
            path.clear();
            std::uint64_t u = i;
            while (!done.get(u)) {
                const std::uint64_t k = table_.key_at(u);
                path.emplace_back(u, EdgeSymbol{k & (alphabet_.sigma() - 1)});
                u = k >> sigma_bits_;
            }
            std::uint64_t v = get_map(u);
            for (auto it = path.rbegin(); it != path.rend(); ++it) {
                v = bigger.table_.insert(bigger.make_key(v, it->second));
                set_map(it->first, v);
                done.set(it->first);
                ++relocated;
            }
        }
        if (relocated + 1 != node_count()) {
            throw CorruptionError("growth relocated " + std::to_string(relocated) + " of " +
                                  std::to_string(node_count() - 1) + " nodes");
        }

        IdRemap remap;
        remap.new_capacity = m * 2;
        remap.old_to_new.assign(m, kNoNode);
        for (std::uint64_t i = 0; i < m; ++i) {
            if (done.get(i)) {
                remap.old_to_new[i] = get_map(i);
            }
        }
        bigger.growths_ = growths_ + 1;
        *this = std::move(bigger);
        return remap;
    }

    std::uint64_t node_count() const override { return table_.size(); }
    std::uint64_t capacity() const override { return table_.capacity(); }
    std::uint64_t id_bound() const override { return table_.capacity(); }
    std::uint64_t growth_count() const override { return growths_; }
    bool stable_ids() const override { return false; }
    std::size_t memory_bytes() const override { return table_.memory_bytes(); }
    ReprKind kind() const override { return Table::kCompact ? ReprKind::CBT : ReprKind::PBT; }

    const Table& table() const { return table_; }

  private:
    BonsaiTrie& operator=(BonsaiTrie&&) = default;
    BonsaiTrie(BonsaiTrie&&) = default;

    std::uint64_t make_key(NodeId u, EdgeSymbol c) const { return (u << sigma_bits_) | c.code; }

    NodeId checked(NodeId u) const {
        if (u >= capacity() || !table_.occupied(u)) {
            throw ContractViolation("node " + std::to_string(u) + " is not live");
        }
        if (u == root_) {
            throw ContractViolation("the root has no parent or edge");
        }
        return u;
    }

    Alphabet alphabet_;
    std::uint32_t sigma_bits_;
    bool inplace_map_;
    Table table_;
    NodeId root_ = kNoNode;
    std::uint64_t growths_ = 0;
};

using PlainBonsaiTrie = BonsaiTrie<PlainKeyTable>;
using CompactBonsaiTrie = BonsaiTrie<CompactKeyTable>;

}  // namespace dynpdt
