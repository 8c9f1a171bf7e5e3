#pragma once

#include <cstdint>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "dynpdt/bit_vector.hpp"
#include "dynpdt/core.hpp"
#include "dynpdt/trie_backend.hpp"

namespace dynpdt {

// The label and embedded value of one trie node, as a view.
//
// A node label is a keyword suffix, so it either ends with the terminator or is
// empty (the keyword ended exactly at the node's branching byte). The
// terminator itself is never stored. Step nodes have an empty, unterminated
// label and no value.
struct LabelRecord {
    std::string_view body;
    bool terminated = false;
    std::optional<Value> value;

    bool is_step() const { return !value.has_value(); }
    std::size_t label_size() const { return body.size() + (terminated ? 1 : 0); }

    static LabelRecord step() { return {}; }
    // label is a keyword suffix including its terminator, or empty.
    static LabelRecord node(std::string_view label, Value v);

    friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

// Serialized record: VByte header, label bytes, 4-byte little-endian value.
// The header is 0 for a step node, 1 for an empty unterminated label, and
// |body| + 2 for a terminated label.
namespace record {

std::size_t encoded_size(const LabelRecord& r);
// Writes r at out (which must hold encoded_size(r) bytes).
void write(const LabelRecord& r, std::uint8_t* out);
// Decodes the record at p; sets size to its encoded length.
LabelRecord read(const std::uint8_t* p, std::size_t& size);
std::size_t skip(const std::uint8_t* p);
// Offset of the value field inside the record at p (the record must not be a step).
std::size_t value_offset(const std::uint8_t* p);
void store_value(std::uint8_t* p, Value v);

}  // namespace record

struct FreeDeleter {
    void operator()(std::uint8_t* p) const { std::free(p); }
};
using ByteBuffer = std::unique_ptr<std::uint8_t[], FreeDeleter>;

// Heap bytes charged for a buffer of the requested size, allocator overhead included.
std::size_t allocation_bytes(const std::uint8_t* p, std::size_t requested);

// Maps node ids to label records. Views returned by access are invalidated by
// any mutation of the map.
class NodeLabelMap {
  public:
    virtual ~NodeLabelMap() = default;

    // Throws ContractViolation when id already has a record.
    virtual void associate(NodeId id, const LabelRecord& r) = 0;
    virtual std::optional<LabelRecord> access(NodeId id) const = 0;
    // Throws ContractViolation when id is absent or a step node.
    virtual void update_value(NodeId id, Value v) = 0;
    // Moves every record to its new id. m-Bonsai maps only.
    virtual void remap(const IdRemap& remap) = 0;

    virtual std::uint64_t size() const = 0;
    virtual std::size_t memory_bytes() const = 0;
    virtual NlmKind kind() const = 0;
};

// One heap buffer per node, referenced from an array indexed by id.
class PlainLabelMap final : public NodeLabelMap {
  public:
    explicit PlainLabelMap(std::uint64_t initial_ids = 0) : slots_(initial_ids) {}

    void associate(NodeId id, const LabelRecord& r) override;
    std::optional<LabelRecord> access(NodeId id) const override;
    void update_value(NodeId id, Value v) override;
    void remap(const IdRemap& remap) override;

    std::uint64_t size() const override { return count_; }
    std::size_t memory_bytes() const override;
    NlmKind kind() const override { return NlmKind::PLM; }

  private:
    std::vector<ByteBuffer> slots_;
    std::uint64_t count_ = 0;
};

// Records of ids [g*ell, (g+1)*ell) concatenated in id order into one buffer
// per group; a bitmap over the id space marks which ids have records, and the
// popcount of the group's bits before id gives the record's rank.
class SparseBonsaiLabelMap final : public NodeLabelMap {
  public:
    SparseBonsaiLabelMap(std::uint64_t capacity, std::uint32_t ell);

    void associate(NodeId id, const LabelRecord& r) override;
    std::optional<LabelRecord> access(NodeId id) const override;
    void update_value(NodeId id, Value v) override;
    void remap(const IdRemap& remap) override;

    std::uint64_t size() const override { return count_; }
    std::size_t memory_bytes() const override;
    NlmKind kind() const override { return NlmKind::SLM; }

    // Rank of id among the set bits of its group.
    std::uint32_t rank_in_group(NodeId id) const {
        const std::uint64_t begin = id - id % ell_;
        return bits_.popcount_in_word(begin, id);
    }
    std::uint32_t ell() const { return ell_; }
    std::uint64_t capacity() const { return bits_.size(); }
    bool has_record(NodeId id) const { return id < bits_.size() && bits_.get(id); }
    // Byte size of the group buffer holding id.
    std::size_t group_bytes(std::uint64_t group) const;
    const std::uint8_t* group_data(std::uint64_t group) const { return groups_[group].get(); }

  private:
    std::uint32_t records_in_group(std::uint64_t group) const;
    std::size_t offset_of_rank(std::uint64_t group, std::uint32_t rank) const;

    std::uint32_t ell_;
    BitVector bits_;
    std::vector<ByteBuffer> groups_;
    std::uint64_t count_ = 0;
};

// FK-hash ids are dense, so group g holds exactly the records of ids
// [g*ell, (g+1)*ell) in order and no bitmap is needed. Records must be
// associated in id order.
class SparseFkLabelMap final : public NodeLabelMap {
  public:
    explicit SparseFkLabelMap(std::uint32_t ell);

    void associate(NodeId id, const LabelRecord& r) override;
    std::optional<LabelRecord> access(NodeId id) const override;
    void update_value(NodeId id, Value v) override;
    void remap(const IdRemap& remap) override;

    std::uint64_t size() const override { return count_; }
    std::size_t memory_bytes() const override;
    NlmKind kind() const override { return NlmKind::SLM; }

  private:
    std::size_t offset_of(NodeId id) const;

    std::uint32_t ell_;
    std::vector<ByteBuffer> groups_;
    std::size_t tail_bytes_ = 0;  // byte size of the last group
    std::uint64_t count_ = 0;
};

// Picks the map matching the backend family: bonsai maps span the id space
// [0, capacity), FK maps grow with the dense ids.
std::unique_ptr<NodeLabelMap> make_label_map(NlmKind kind, bool bonsai, std::uint32_t ell, std::uint64_t capacity);

}  // namespace dynpdt
