#include "dynpdt/trie_backend.hpp"

#include "dynpdt/bonsai_trie.hpp"
#include "dynpdt/fk_trie.hpp"

namespace dynpdt {

std::unique_ptr<TrieBackend> make_backend(const Config& cfg) {
    cfg.validate();
    const Alphabet alphabet(cfg.lambda);
    switch (cfg.repr) {
        case ReprKind::PBT:
            return std::make_unique<PlainBonsaiTrie>(cfg.initial_capacity, alphabet, cfg.inplace_growth_map);
        case ReprKind::CBT: return std::make_unique<CompactBonsaiTrie>(cfg.initial_capacity, alphabet);
        case ReprKind::PFKT: return std::make_unique<PlainFkTrie>(cfg.initial_capacity, alphabet);
        case ReprKind::CFKT: return std::make_unique<CompactFkTrie>(cfg.initial_capacity, alphabet);
    }
    throw ContractViolation("unknown trie representation");
}

}  // namespace dynpdt
