#pragma once

#include "essx/fg_module.hpp"

#include <cstdint>
#include <vector>

namespace essx {

// Sum of the minimal (prime-order) submodules: per torsion invariant
// factor d and each prime p | d, the (d/p)-multiple of the corresponding
// canonical generator. Contained in every essential submodule.
Submodule socle(const FgModule& m);

// Decision procedure: S is essential in its ambient module iff the ranks
// agree (finite quotient) and socle(ambient) is contained in S. Validated
// against essential_oracle over the small-group corpus (see tests and the
// acceptance suite).
bool is_essential(const Submodule& s);

// S essential inside a larger submodule of the same ambient module.
// Returns false when S is not even contained in outer.
bool is_essential_in(const Submodule& s, const Submodule& outer);

// Exhaustive check of the definition: S meets every nonzero cyclic
// submodule of the (finite) ambient module. Throws InfiniteModule when
// the ambient module has positive free rank.
bool essential_oracle(const Submodule& s);

// Corpus helpers for the oracle-equivalence suites. ---------------------

// All isomorphism types of finite abelian groups of order <= max_order.
std::vector<FgModule> abelian_group_types(long long max_order);

struct SubgroupCorpus {
    std::vector<Submodule> subgroups;
    bool exhaustive = false;  // full subgroup lattice
};

// Full subgroup lattice of a finite module of order <= 64; for larger
// modules of order <= 128 a sampled corpus (all cyclic subgroups, random
// morphism images, and a few joins).
SubgroupCorpus subgroup_corpus(const FgModule& m, std::uint64_t seed);

}  // namespace essx
