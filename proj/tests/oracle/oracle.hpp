#pragma once

// Slow, obviously-correct reference models used only by the tests.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dynpdt/core.hpp"
#include "dynpdt/dictionary.hpp"
#include "dynpdt/trie_backend.hpp"

namespace oracle {

using dynpdt::DeleteResult;
using dynpdt::InsertResult;
using dynpdt::Value;

// Ordered map with the dictionary's insert/lookup/delete contract.
class OracleDictionary {
  public:
    InsertResult insert(const std::string& k, Value v) {
        return map_.emplace(k, v).second ? InsertResult::Inserted : InsertResult::AlreadyPresent;
    }
    std::optional<Value> lookup(const std::string& k) const {
        const auto it = map_.find(k);
        return it == map_.end() ? std::nullopt : std::optional<Value>(it->second);
    }
    DeleteResult erase(const std::string& k) {
        return map_.erase(k) != 0 ? DeleteResult::Deleted : DeleteResult::NotFound;
    }
    std::size_t size() const { return map_.size(); }
    const std::map<std::string, Value>& contents() const { return map_; }

  private:
    std::map<std::string, Value> map_;
};

// The same contract over an unsorted list; used to check OracleDictionary.
class ListDictionary {
  public:
    InsertResult insert(const std::string& k, Value v) {
        for (const auto& e : items_) {
            if (e.first == k) return InsertResult::AlreadyPresent;
        }
        items_.emplace_back(k, v);
        return InsertResult::Inserted;
    }
    std::optional<Value> lookup(const std::string& k) const {
        for (const auto& e : items_) {
            if (e.first == k) return e.second;
        }
        return std::nullopt;
    }
    DeleteResult erase(const std::string& k) {
        for (std::size_t i = 0; i < items_.size(); ++i) {
            if (items_[i].first == k) {
                items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(i));
                return DeleteResult::Deleted;
            }
        }
        return DeleteResult::NotFound;
    }
    std::size_t size() const { return items_.size(); }

  private:
    std::vector<std::pair<std::string, Value>> items_;
};

// Adjacency-map trie. Node ids are whatever the backend under test hands out;
// apply() follows the backend's id remaps so both stay in step.
class OracleTrie {
  public:
    explicit OracleTrie(dynpdt::NodeId root) : root_(root) {}

    void add(dynpdt::NodeId parent, dynpdt::EdgeSymbol c, dynpdt::NodeId child) {
        children_[{parent, c.code}] = child;
        parent_[child] = {parent, c.code};
    }

    std::optional<dynpdt::NodeId> child(dynpdt::NodeId u, dynpdt::EdgeSymbol c) const {
        const auto it = children_.find({u, c.code});
        return it == children_.end() ? std::nullopt : std::optional<dynpdt::NodeId>(it->second);
    }
    std::pair<dynpdt::NodeId, std::uint64_t> parent_of(dynpdt::NodeId u) const { return parent_.at(u); }

    // Rewrites every id through the remap. Returns false if the remap is not a
    // bijection on the live ids.
    bool apply(const dynpdt::IdRemap& r) {
        auto tr = [&](dynpdt::NodeId id) { return id < r.old_to_new.size() ? r.old_to_new[id] : dynpdt::kNoNode; };
        std::map<std::pair<dynpdt::NodeId, std::uint64_t>, dynpdt::NodeId> kids;
        std::map<dynpdt::NodeId, std::pair<dynpdt::NodeId, std::uint64_t>> parents;
        const dynpdt::NodeId new_root = tr(root_);
        if (new_root == dynpdt::kNoNode) return false;
        for (const auto& [key, child] : children_) {
            const dynpdt::NodeId p = tr(key.first), c = tr(child);
            if (p == dynpdt::kNoNode || c == dynpdt::kNoNode || c >= r.new_capacity) return false;
            kids[{p, key.second}] = c;
            if (!parents.emplace(c, std::make_pair(p, key.second)).second) return false;  // two nodes collapsed
        }
        if (parents.count(new_root) != 0) return false;
        root_ = new_root;
        children_ = std::move(kids);
        parent_ = std::move(parents);
        return true;
    }

    dynpdt::NodeId root() const { return root_; }
    std::size_t size() const { return parent_.size() + 1; }
    const std::map<dynpdt::NodeId, std::pair<dynpdt::NodeId, std::uint64_t>>& parents() const { return parent_; }

  private:
    dynpdt::NodeId root_;
    std::map<std::pair<dynpdt::NodeId, std::uint64_t>, dynpdt::NodeId> children_;
    std::map<dynpdt::NodeId, std::pair<dynpdt::NodeId, std::uint64_t>> parent_;
};

// Keys in a small alphabet so that long shared prefixes and deep step chains
// actually occur.
inline std::string random_key(std::uint64_t& state, std::size_t max_len, std::string_view alphabet) {
    auto next = [&] {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    const std::size_t len = 1 + next() % max_len;
    std::string k;
    for (std::size_t i = 0; i < len; ++i) {
        k.push_back(alphabet[next() % alphabet.size()]);
    }
    return k;
}

}  // namespace oracle
