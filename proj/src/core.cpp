#include "dynpdt/core.hpp"

namespace dynpdt {

Keyword Keyword::from(std::string_view raw) {
    if (raw.empty()) {
        throw InvalidKeyword("empty keyword");
    }
    if (raw.find(kTerminator) != std::string_view::npos) {
        throw InvalidKeyword("keyword contains the terminator byte 0x00");
    }
    std::string bytes;
    bytes.reserve(raw.size() + 1);
    bytes.append(raw);
    bytes.push_back(kTerminator);
    return Keyword(std::move(bytes));
}

Keyword validate_keyword(std::string_view raw) { return Keyword::from(raw); }

Alphabet::Alphabet(std::uint32_t lambda) : lambda_(lambda) {
    if (lambda < 4 || !is_power_of_two(lambda) || lambda > (1U << 20)) {
        throw ContractViolation("lambda must be a power of two in [4, 2^20]");
    }
}

EdgeSymbol Alphabet::encode(std::uint8_t byte, std::uint32_t offset) const {
    if (offset >= lambda_) {
        throw ContractViolation("symbol offset " + std::to_string(offset) + " >= lambda");
    }
    return EdgeSymbol{std::uint64_t{byte} * lambda_ + offset};
}

DecodedSymbol Alphabet::decode(EdgeSymbol s) const {
    const std::uint64_t step_code = step().code;
    if (s.code == step_code) {
        return DecodedSymbol{true, 0, 0};
    }
    if (s.code > step_code) {
        throw CorruptionError("symbol code " + std::to_string(s.code) + " is outside the alphabet");
    }
    return DecodedSymbol{false, static_cast<std::uint8_t>(s.code / lambda_),
                         static_cast<std::uint32_t>(s.code % lambda_)};
}

std::string_view to_string(ReprKind r) {
    switch (r) {
        case ReprKind::PBT: return "pbt";
        case ReprKind::CBT: return "cbt";
        case ReprKind::PFKT: return "pfkt";
        case ReprKind::CFKT: return "cfkt";
    }
    return "?";
}

std::string_view to_string(NlmKind n) { return n == NlmKind::PLM ? "plm" : "slm"; }

ReprKind parse_repr(std::string_view s) {
    if (s == "pbt") return ReprKind::PBT;
    if (s == "cbt") return ReprKind::CBT;
    if (s == "pfkt") return ReprKind::PFKT;
    if (s == "cfkt") return ReprKind::CFKT;
    throw ContractViolation("unknown trie representation: " + std::string(s));
}

NlmKind parse_nlm(std::string_view s) {
    if (s == "plm") return NlmKind::PLM;
    if (s == "slm") return NlmKind::SLM;
    throw ContractViolation("unknown label map: " + std::string(s));
}

void Config::validate() const {
    Alphabet{lambda};
    if (ell != 8 && ell != 16 && ell != 32 && ell != 64) {
        throw ContractViolation("ell must be one of 8, 16, 32, 64");
    }
    if (!is_power_of_two(initial_capacity) || initial_capacity < 16 ||
        initial_capacity > (std::uint64_t{1} << kMaxCapacityBits)) {
        throw ContractViolation("initial capacity must be a power of two in [16, 2^48]");
    }
}

}  // namespace dynpdt
