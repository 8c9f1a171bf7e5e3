#include "dynpdt/label_map.hpp"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>

#if defined(__GLIBC__)
#endif

#include "dynpdt/hashing.hpp"

namespace dynpdt {

LabelRecord LabelRecord::node(std::string_view label, Value v) {
    if (label.empty()) {
        return LabelRecord{{}, false, v};
    }
    if (label.back() != kTerminator) {
        throw ContractViolation("a non-empty node label must end with the terminator");
    }
    return LabelRecord{label.substr(0, label.size() - 1), true, v};
}

namespace record {

namespace {

std::uint64_t header_of(const LabelRecord& r) {
    if (r.is_step()) {
        if (!r.body.empty() || r.terminated) {
            throw ContractViolation("step records carry no label");
        }
        return 0;
    }
    if (!r.terminated) {
        if (!r.body.empty()) {
            throw ContractViolation("an unterminated label must be empty");
        }
        return 1;
    }
    return r.body.size() + 2;
}

}  // namespace

std::size_t encoded_size(const LabelRecord& r) {
    const std::uint64_t h = header_of(r);
    return vbyte_size(h) + r.body.size() + (h == 0 ? 0 : sizeof(Value));
}

void store_value(std::uint8_t* p, Value v) {
    for (std::size_t i = 0; i < sizeof(Value); ++i) {
        p[i] = static_cast<std::uint8_t>(v >> (8 * i));
    }
}

static Value load_value(const std::uint8_t* p) {
    Value v = 0;
    for (std::size_t i = 0; i < sizeof(Value); ++i) {
        v |= static_cast<Value>(p[i]) << (8 * i);
    }
    return v;
}

void write(const LabelRecord& r, std::uint8_t* out) {
    const std::uint64_t h = header_of(r);
    std::size_t k = vbyte_encode(h, out);
    if (!r.body.empty()) {
        std::memcpy(out + k, r.body.data(), r.body.size());
        k += r.body.size();
    }
    if (h != 0) {
        store_value(out + k, *r.value);
    }
}

LabelRecord read(const std::uint8_t* p, std::size_t& size) {
    const auto [h, k] = vbyte_decode_unchecked(p);
    if (h == 0) {
        size = k;
        return LabelRecord::step();
    }
    const std::size_t len = h >= 2 ? h - 2 : 0;
    LabelRecord r;
    r.body = std::string_view(reinterpret_cast<const char*>(p + k), len);
    r.terminated = h >= 2;
    r.value = load_value(p + k + len);
    size = k + len + sizeof(Value);
    return r;
}

std::size_t skip(const std::uint8_t* p) {
    const auto [h, k] = vbyte_decode_unchecked(p);
    if (h == 0) {
        return k;
    }
    return k + (h >= 2 ? h - 2 : 0) + sizeof(Value);
}

std::size_t value_offset(const std::uint8_t* p) {
    const auto [h, k] = vbyte_decode_unchecked(p);
    return k + (h >= 2 ? h - 2 : 0);
}

}  // namespace record

std::size_t allocation_bytes(const std::uint8_t* p, std::size_t requested) {
    if (p == nullptr) {
        return 0;
    }
    // Typical 64-bit malloc chunk: an 8-byte size header, 16-byte granularity,
    // 32 bytes minimum. Asking the allocator instead would make the figure
    // depend on heap history (in-place realloc keeps oversized chunks).
    return std::max<std::size_t>(32, (requested + 8 + 15) & ~std::size_t{15});
}

static ByteBuffer resize_buffer(ByteBuffer buf, std::size_t n) {
    auto* p = static_cast<std::uint8_t*>(std::realloc(buf.get(), n));
    if (p == nullptr) {
        throw std::bad_alloc();
    }
    (void)buf.release();
    return ByteBuffer(p);
}

static void require_live_record(bool present, NodeId id) {
    if (!present) {
        throw ContractViolation("node " + std::to_string(id) + " has no label record");
    }
}

// PlainLabelMap

void PlainLabelMap::associate(NodeId id, const LabelRecord& r) {
    if (id >= slots_.size()) {
        slots_.resize(id + 1);
    }
    if (slots_[id]) {
        throw ContractViolation("node " + std::to_string(id) + " already has a label record");
    }
    const std::size_t n = record::encoded_size(r);
    ByteBuffer buf = resize_buffer(nullptr, n);
    record::write(r, buf.get());
    slots_[id] = std::move(buf);
    ++count_;
}

std::optional<LabelRecord> PlainLabelMap::access(NodeId id) const {
    if (id >= slots_.size() || !slots_[id]) {
        return std::nullopt;
    }
    std::size_t size = 0;
    return record::read(slots_[id].get(), size);
}

void PlainLabelMap::update_value(NodeId id, Value v) {
    require_live_record(id < slots_.size() && slots_[id], id);
    std::uint8_t* p = slots_[id].get();
    if (p[0] == 0) {
        throw ContractViolation("step nodes carry no value");
    }
    record::store_value(p + record::value_offset(p), v);
}

void PlainLabelMap::remap(const IdRemap& remap) {
    std::vector<ByteBuffer> moved(remap.new_capacity);
    BitVector seen(remap.new_capacity);
    std::uint64_t kept = 0;
    for (std::uint64_t i = 0; i < slots_.size(); ++i) {
        if (!slots_[i]) {
            continue;
        }
        const NodeId to = i < remap.old_to_new.size() ? remap.old_to_new[i] : kNoNode;
        if (to >= remap.new_capacity || seen.get(to)) {
            throw ContractViolation("id remap is not a bijection over live ids");
        }
        seen.set(to);
        moved[to] = std::move(slots_[i]);
        ++kept;
    }
    if (kept != count_) {
        throw CorruptionError("label map lost records during remap");
    }
    slots_ = std::move(moved);
}

std::size_t PlainLabelMap::memory_bytes() const {
    std::size_t bytes = slots_.capacity() * sizeof(ByteBuffer);
    for (const ByteBuffer& b : slots_) {
        if (b) {
            bytes += allocation_bytes(b.get(), record::skip(b.get()));
        }
    }
    return bytes;
}

// SparseBonsaiLabelMap

SparseBonsaiLabelMap::SparseBonsaiLabelMap(std::uint64_t capacity, std::uint32_t ell)
    : ell_(ell), bits_(capacity), groups_((capacity + ell - 1) / ell) {
    if (ell == 0 || ell > 64 || 64 % ell != 0) {
        throw ContractViolation("group size must divide 64");
    }
}

std::uint32_t SparseBonsaiLabelMap::records_in_group(std::uint64_t group) const {
    const std::uint64_t begin = group * ell_;
    const std::uint64_t end = std::min<std::uint64_t>(begin + ell_, bits_.size());
    return bits_.popcount_in_word(begin, end);
}

std::size_t SparseBonsaiLabelMap::offset_of_rank(std::uint64_t group, std::uint32_t rank) const {
    const std::uint8_t* p = groups_[group].get();
    std::size_t off = 0;
    for (std::uint32_t i = 0; i < rank; ++i) {
        off += record::skip(p + off);
    }
    return off;
}

std::size_t SparseBonsaiLabelMap::group_bytes(std::uint64_t group) const {
    return offset_of_rank(group, records_in_group(group));
}

void SparseBonsaiLabelMap::associate(NodeId id, const LabelRecord& r) {
    if (id >= bits_.size()) {
        throw ContractViolation("node id outside the label map capacity");
    }
    if (bits_.get(id)) {
        throw ContractViolation("node " + std::to_string(id) + " already has a label record");
    }
    const std::uint64_t g = id / ell_;
    const std::uint32_t rank = rank_in_group(id);
    const std::size_t total = group_bytes(g);
    const std::size_t at = offset_of_rank(g, rank);
    const std::size_t n = record::encoded_size(r);

    ByteBuffer buf = resize_buffer(std::move(groups_[g]), total + n);
    std::memmove(buf.get() + at + n, buf.get() + at, total - at);
    record::write(r, buf.get() + at);
    groups_[g] = std::move(buf);
    bits_.set(id);
    ++count_;
}

std::optional<LabelRecord> SparseBonsaiLabelMap::access(NodeId id) const {
    if (id >= bits_.size() || !bits_.get(id)) {
        return std::nullopt;
    }
    const std::uint64_t g = id / ell_;
    std::size_t size = 0;
    return record::read(groups_[g].get() + offset_of_rank(g, rank_in_group(id)), size);
}

void SparseBonsaiLabelMap::update_value(NodeId id, Value v) {
    require_live_record(id < bits_.size() && bits_.get(id), id);
    const std::uint64_t g = id / ell_;
    std::uint8_t* p = groups_[g].get() + offset_of_rank(g, rank_in_group(id));
    if (p[0] == 0) {
        throw ContractViolation("step nodes carry no value");
    }
    record::store_value(p + record::value_offset(p), v);
}

void SparseBonsaiLabelMap::remap(const IdRemap& remap) {
    struct Moved {
        NodeId to;
        const std::uint8_t* data;
        std::size_t size;
    };
    std::vector<Moved> records;
    records.reserve(count_);
    BitVector seen(remap.new_capacity);
    for (std::uint64_t g = 0; g < groups_.size(); ++g) {
        const std::uint64_t begin = g * ell_;
        const std::uint64_t end = std::min<std::uint64_t>(begin + ell_, bits_.size());
        std::size_t off = 0;
        for (std::uint64_t id = begin; id < end; ++id) {
            if (!bits_.get(id)) {
                continue;
            }
            const NodeId to = id < remap.old_to_new.size() ? remap.old_to_new[id] : kNoNode;
            if (to >= remap.new_capacity || seen.get(to)) {
                throw ContractViolation("id remap is not a bijection over live ids");
            }
            seen.set(to);
            const std::uint8_t* p = groups_[g].get() + off;
            const std::size_t n = record::skip(p);
            records.push_back({to, p, n});
            off += n;
        }
    }
    std::sort(records.begin(), records.end(), [](const Moved& a, const Moved& b) { return a.to < b.to; });

    SparseBonsaiLabelMap fresh(remap.new_capacity, ell_);
    for (std::size_t i = 0; i < records.size();) {
        const std::uint64_t g = records[i].to / ell_;
        std::size_t j = i;
        std::size_t total = 0;
        for (; j < records.size() && records[j].to / ell_ == g; ++j) {
            total += records[j].size;
        }
        ByteBuffer buf = resize_buffer(nullptr, total);
        std::size_t off = 0;
        for (std::size_t k = i; k < j; ++k) {
            std::memcpy(buf.get() + off, records[k].data, records[k].size);
            off += records[k].size;
            fresh.bits_.set(records[k].to);
        }
        fresh.groups_[g] = std::move(buf);
        i = j;
    }
    fresh.count_ = records.size();
    *this = std::move(fresh);
}

std::size_t SparseBonsaiLabelMap::memory_bytes() const {
    std::size_t bytes = groups_.capacity() * sizeof(ByteBuffer) + bits_.memory_bytes();
    for (std::uint64_t g = 0; g < groups_.size(); ++g) {
        bytes += allocation_bytes(groups_[g].get(), groups_[g] ? group_bytes(g) : 0);
    }
    return bytes;
}

// SparseFkLabelMap

SparseFkLabelMap::SparseFkLabelMap(std::uint32_t ell) : ell_(ell) {
    if (ell == 0) {
        throw ContractViolation("group size must be positive");
    }
}

std::size_t SparseFkLabelMap::offset_of(NodeId id) const {
    const std::uint8_t* p = groups_[id / ell_].get();
    std::size_t off = 0;
    for (std::uint64_t i = 0; i < id % ell_; ++i) {
        off += record::skip(p + off);
    }
    return off;
}

void SparseFkLabelMap::associate(NodeId id, const LabelRecord& r) {
    if (id < count_) {
        throw ContractViolation("node " + std::to_string(id) + " already has a label record");
    }
    if (id > count_) {
        throw ContractViolation("dense label map requires ids in creation order");
    }
    if (id % ell_ == 0) {
        groups_.emplace_back();
        tail_bytes_ = 0;
    }
    const std::size_t n = record::encoded_size(r);
    ByteBuffer buf = resize_buffer(std::move(groups_.back()), tail_bytes_ + n);
    record::write(r, buf.get() + tail_bytes_);
    groups_.back() = std::move(buf);
    tail_bytes_ += n;
    ++count_;
}

std::optional<LabelRecord> SparseFkLabelMap::access(NodeId id) const {
    if (id >= count_) {
        return std::nullopt;
    }
    std::size_t size = 0;
    return record::read(groups_[id / ell_].get() + offset_of(id), size);
}

void SparseFkLabelMap::update_value(NodeId id, Value v) {
    require_live_record(id < count_, id);
    std::uint8_t* p = groups_[id / ell_].get() + offset_of(id);
    if (p[0] == 0) {
        throw ContractViolation("step nodes carry no value");
    }
    record::store_value(p + record::value_offset(p), v);
}

void SparseFkLabelMap::remap(const IdRemap&) {
    throw ContractViolation("FK-hash ids are stable; the dense label map cannot be remapped");
}

std::size_t SparseFkLabelMap::memory_bytes() const {
    std::size_t bytes = groups_.capacity() * sizeof(ByteBuffer);
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        std::size_t requested = tail_bytes_;
        if (g + 1 != groups_.size()) {
            const std::uint8_t* p = groups_[g].get();
            requested = 0;
            for (std::uint32_t i = 0; i < ell_; ++i) {
                requested += record::skip(p + requested);
            }
        }
        bytes += allocation_bytes(groups_[g].get(), requested);
    }
    return bytes;
}

std::unique_ptr<NodeLabelMap> make_label_map(NlmKind kind, bool bonsai, std::uint32_t ell, std::uint64_t capacity) {
    if (kind == NlmKind::PLM) {
        return std::make_unique<PlainLabelMap>(bonsai ? capacity : 0);
    }
    if (bonsai) {
        return std::make_unique<SparseBonsaiLabelMap>(capacity, ell);
    }
    return std::make_unique<SparseFkLabelMap>(ell);
}

}  // namespace dynpdt
