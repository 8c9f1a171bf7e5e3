#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dynpdt {

// Errors

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidKeyword : public Error {
  public:
    using Error::Error;
};

// A caller broke an operation's precondition.
class ContractViolation : public Error {
  public:
    using Error::Error;
};

// An internal structure decoded to something impossible.
class CorruptionError : public Error {
  public:
    using Error::Error;
};

class ResourceExhausted : public Error {
  public:
    using Error::Error;
};

// Basic types

using NodeId = std::uint64_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

using Value = std::uint32_t;
// Marks a deleted keyword; never accepted from callers.
inline constexpr Value kInvalidValue = std::numeric_limits<Value>::max();

// Appended to every keyword internally.
inline constexpr char kTerminator = '\0';

inline constexpr bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline constexpr std::uint32_t log2_floor(std::uint64_t x) {
    return x == 0 ? 0 : 63 - static_cast<std::uint32_t>(__builtin_clzll(x));
}

// Bits needed to represent every value in [0, x).
inline constexpr std::uint32_t bits_for(std::uint64_t x) {
    return x <= 1 ? 0 : log2_floor(x - 1) + 1;
}

// A validated keyword. Holds the raw bytes followed by exactly one terminator.
class Keyword {
  public:
    // Throws InvalidKeyword on empty input or input containing the terminator byte.
    static Keyword from(std::string_view raw);

    // Bytes including the trailing terminator.
    std::string_view terminated() const { return bytes_; }
    // Bytes without the terminator.
    std::string_view body() const { return std::string_view(bytes_).substr(0, bytes_.size() - 1); }
    std::size_t size() const { return bytes_.size(); }

    friend bool operator==(const Keyword&, const Keyword&) = default;

  private:
    explicit Keyword(std::string bytes) : bytes_(std::move(bytes)) {}
    std::string bytes_;
};

// Same as Keyword::from.
Keyword validate_keyword(std::string_view raw);

// One edge label of the decomposed trie: a (byte, offset) pair or the step marker.
struct EdgeSymbol {
    std::uint64_t code = 0;
    friend constexpr auto operator<=>(EdgeSymbol, EdgeSymbol) = default;
};

struct DecodedSymbol {
    bool step = false;
    std::uint8_t byte = 0;
    std::uint32_t offset = 0;
    friend constexpr bool operator==(const DecodedSymbol&, const DecodedSymbol&) = default;
};

// Symbol codes for a fixed offset cap lambda.
//
// Regular symbols <c, i> map to c * lambda + i, the step symbol to 256 * lambda.
// The code space is rounded up to sigma = 2 * 256 * lambda so that it is a power
// of two; codes above the step code are never produced by encode.
class Alphabet {
  public:
    explicit Alphabet(std::uint32_t lambda);

    std::uint32_t lambda() const { return lambda_; }
    std::uint64_t sigma() const { return std::uint64_t{512} * lambda_; }
    std::uint32_t sigma_bits() const { return log2_floor(sigma()); }

    EdgeSymbol encode(std::uint8_t byte, std::uint32_t offset) const;
    EdgeSymbol step() const { return EdgeSymbol{std::uint64_t{256} * lambda_}; }
    DecodedSymbol decode(EdgeSymbol s) const;

    // Reserved code used for the key of the m-Bonsai root; never a real edge.
    EdgeSymbol root_marker() const { return EdgeSymbol{sigma() - 1}; }

  private:
    std::uint32_t lambda_;
};

enum class ReprKind { PBT, CBT, PFKT, CFKT };
enum class NlmKind { PLM, SLM };

std::string_view to_string(ReprKind r);
std::string_view to_string(NlmKind n);
ReprKind parse_repr(std::string_view s);
NlmKind parse_nlm(std::string_view s);

inline constexpr bool is_bonsai(ReprKind r) { return r == ReprKind::PBT || r == ReprKind::CBT; }

// Maximum load factor of every hash table, 9/10.
inline constexpr std::uint64_t kMaxLoadNum = 9;
inline constexpr std::uint64_t kMaxLoadDen = 10;

inline constexpr bool exceeds_max_load(std::uint64_t n, std::uint64_t m) {
    return n * kMaxLoadDen > m * kMaxLoadNum;
}

inline constexpr std::uint32_t kMaxCapacityBits = 48;

struct Config {
    std::uint32_t lambda = 64;
    std::uint32_t ell = 16;
    std::uint64_t initial_capacity = std::uint64_t{1} << 16;
    ReprKind repr = ReprKind::CFKT;
    NlmKind nlm = NlmKind::SLM;
    // Reuse the hash array as the id map while growing (PBT only).
    bool inplace_growth_map = false;

    // Throws ContractViolation when a field is out of range.
    void validate() const;
};

}  // namespace dynpdt
