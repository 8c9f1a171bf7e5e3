#include "dynpdt/dictionary.hpp"

#include <algorithm>
#include <cassert>
#include <tuple>

namespace dynpdt {

Dictionary::Dictionary(const Config& cfg)
    : cfg_(cfg), alphabet_(cfg.lambda), backend_(make_backend(cfg)) {
    labels_ = make_label_map(cfg.nlm, is_bonsai(cfg.repr), cfg.ell, backend_->capacity());
}

std::size_t Dictionary::mismatch(std::string_view rest, const LabelRecord& label) {
    const std::size_t n = std::min(rest.size(), label.body.size());
    const auto diff = std::mismatch(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(n), label.body.begin());
    const auto i = static_cast<std::size_t>(diff.first - rest.begin());
    if (i < n || i < label.body.size()) {
        return i;
    }
    // The whole body matched; the label may continue with its terminator.
    if (label.terminated && i < rest.size() && rest[i] == kTerminator) {
        return i + 1;
    }
    return i;
}

NodeId Dictionary::add_child(NodeId u, EdgeSymbol c) {
    AddResult r = backend_->add_child(u, c);
    if (r.remap) {
        labels_->remap(*r.remap);
    }
    if (r.grew && on_growth_) {
        on_growth_(r.remap);
    }
    return r.id;
}

InsertResult Dictionary::insert(std::string_view key, Value v) { return insert(Keyword::from(key), v); }

InsertResult Dictionary::insert(const Keyword& key, Value v) {
    if (v == kInvalidValue) {
        throw ContractViolation("the all-ones value is reserved");
    }
    const std::string_view full = key.terminated();
    if (!has_root_label_) {
        labels_->associate(backend_->root(), LabelRecord::node(full, v));
        has_root_label_ = true;
        ++key_count_;
        return InsertResult::Inserted;
    }

    const std::uint32_t lambda = alphabet_.lambda();
    NodeId u = backend_->root();
    std::size_t pos = 0;
    for (;;) {
        const std::optional<LabelRecord> label = labels_->access(u);
        if (!label || label->is_step()) {
            throw CorruptionError("regular node without a label record");
        }
        const std::string_view rest = full.substr(pos);
        const std::size_t i = mismatch(rest, *label);
        if (i == rest.size() && i == label->label_size()) {
            if (*label->value != kInvalidValue) {
                return InsertResult::AlreadyPresent;
            }
            labels_->update_value(u, v);
            ++key_count_;
            return InsertResult::Inserted;
        }
        if (i >= rest.size() || i >= label->label_size()) {
            throw CorruptionError("stored keywords are not prefix-free");
        }

        // The label view is not used past this point; the map may change below.
        const auto byte = static_cast<std::uint8_t>(rest[i]);
        NodeId w = u;
        std::size_t r = i;
        [[maybe_unused]] std::size_t hops = 0;
        while (r >= lambda) {
            NodeId s = backend_->get_child(w, alphabet_.step());
            if (s == kNoNode) {
                s = add_child(w, alphabet_.step());
                labels_->associate(s, LabelRecord::step());
            }
            w = s;
            r -= lambda;
            ++hops;
        }
        assert(i == hops * lambda + r);

        const EdgeSymbol c = alphabet_.encode(byte, static_cast<std::uint32_t>(r));
        const NodeId child = backend_->get_child(w, c);
        if (child == kNoNode) {
            const NodeId v_id = add_child(w, c);
            labels_->associate(v_id, LabelRecord::node(rest.substr(i + 1), v));
            ++key_count_;
            return InsertResult::Inserted;
        }
        u = child;
        pos += i + 1;
    }
}

Dictionary::Located Dictionary::locate(std::string_view full, PathTrace* trace) const {
    if (!has_root_label_) {
        return {};
    }
    const std::uint32_t lambda = alphabet_.lambda();
    NodeId u = backend_->root();
    std::size_t pos = 0;
    for (;;) {
        const std::optional<LabelRecord> label = labels_->access(u);
        if (!label || label->is_step()) {
            throw CorruptionError("regular node without a label record");
        }
        if (trace != nullptr) {
            ++trace->regular_nodes;
        }
        const std::string_view rest = full.substr(pos);
        const std::size_t i = mismatch(rest, *label);
        if (i == rest.size() && i == label->label_size()) {
            return {u, true};
        }
        if (i >= rest.size() || i >= label->label_size()) {
            return {};
        }
        NodeId w = u;
        std::size_t r = i;
        while (r >= lambda) {
            w = backend_->get_child(w, alphabet_.step());
            if (w == kNoNode) {
                return {};
            }
            if (trace != nullptr) {
                ++trace->step_nodes;
            }
            r -= lambda;
        }
        const NodeId child =
            backend_->get_child(w, alphabet_.encode(static_cast<std::uint8_t>(rest[i]), static_cast<std::uint32_t>(r)));
        if (child == kNoNode) {
            return {};
        }
        u = child;
        pos += i + 1;
    }
}

std::optional<Value> Dictionary::lookup(std::string_view key) const {
    if (key.empty() || key.find(kTerminator) != std::string_view::npos) {
        return std::nullopt;
    }
    return lookup(Keyword::from(key));
}

std::optional<Value> Dictionary::lookup(const Keyword& key) const {
    const Located at = locate(key.terminated(), nullptr);
    if (!at.found) {
        return std::nullopt;
    }
    const Value v = *labels_->access(at.node)->value;
    if (v == kInvalidValue) {
        return std::nullopt;
    }
    return v;
}

DeleteResult Dictionary::erase(std::string_view key) {
    if (key.empty() || key.find(kTerminator) != std::string_view::npos) {
        return DeleteResult::NotFound;
    }
    return erase(Keyword::from(key));
}

DeleteResult Dictionary::erase(const Keyword& key) {
    const Located at = locate(key.terminated(), nullptr);
    if (!at.found || *labels_->access(at.node)->value == kInvalidValue) {
        return DeleteResult::NotFound;
    }
    labels_->update_value(at.node, kInvalidValue);
    --key_count_;
    return DeleteResult::Deleted;
}

NodeId Dictionary::node_of(const Keyword& key) const {
    const Located at = locate(key.terminated(), nullptr);
    return at.found ? at.node : kNoNode;
}

PathTrace Dictionary::trace(const Keyword& key) const {
    PathTrace t;
    t.found = locate(key.terminated(), &t).found;
    return t;
}

void Dictionary::for_each(const std::function<void(std::string_view, Value)>& fn) const {
    if (!has_root_label_) {
        return;
    }

    // Child lists in compressed form, sorted by symbol code.
    std::vector<std::tuple<NodeId, std::uint64_t, NodeId>> edges;
    edges.reserve(backend_->node_count());
    backend_->for_each_node([&](NodeId id, NodeId parent, EdgeSymbol c) { edges.emplace_back(parent, c.code, id); });
    std::sort(edges.begin(), edges.end());
    const std::uint64_t bound = backend_->id_bound();
    std::vector<std::uint64_t> first(bound + 1, 0);
    for (const auto& e : edges) {
        ++first[std::get<0>(e) + 1];
    }
    for (std::uint64_t i = 0; i < bound; ++i) {
        first[i + 1] += first[i];
    }

    struct Frame {
        NodeId node;
        NodeId owner;            // nearest regular ancestor (kNoNode for the root)
        std::size_t owner_plen;  // length of the owner's key prefix
        std::uint64_t offset;    // branch offset into the owner's label, or step base
        std::uint8_t byte;
        bool step;
    };
    const std::uint32_t lambda = alphabet_.lambda();
    const std::uint64_t step_code = alphabet_.step().code;
    std::vector<Frame> stack{{backend_->root(), kNoNode, 0, 0, 0, false}};
    std::string buf;

    auto push_children = [&](NodeId node, NodeId owner, std::size_t owner_plen, std::uint64_t base) {
        for (std::uint64_t e = first[node + 1]; e-- > first[node];) {
            const auto& [parent, code, child] = edges[e];
            if (code == step_code) {
                stack.push_back({child, owner, owner_plen, base + lambda, 0, true});
            } else {
                const DecodedSymbol d = alphabet_.decode(EdgeSymbol{code});
                stack.push_back({child, owner, owner_plen, base + d.offset, d.byte, false});
            }
        }
    };

    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.step) {
            push_children(f.node, f.owner, f.owner_plen, f.offset);
            continue;
        }
        if (f.owner != kNoNode) {
            const LabelRecord owner_label = *labels_->access(f.owner);
            buf.resize(f.owner_plen);
            buf.append(owner_label.body.substr(0, f.offset));
            buf.push_back(static_cast<char>(f.byte));
        }
        const std::size_t plen = buf.size();
        const LabelRecord label = *labels_->access(f.node);
        if (*label.value != kInvalidValue) {
            // prefix + label with its terminator, minus that terminator.
            std::string key = buf;
            key.append(label.body);
            if (!label.terminated) {
                key.pop_back();
            }
            fn(key, *label.value);
        }
        push_children(f.node, f.node, plen, 0);
    }
}

std::vector<std::pair<std::string, Value>> Dictionary::enumerate() const {
    std::vector<std::pair<std::string, Value>> out;
    out.reserve(key_count_);
    for_each([&](std::string_view k, Value v) { out.emplace_back(std::string(k), v); });
    return out;
}

}  // namespace dynpdt
