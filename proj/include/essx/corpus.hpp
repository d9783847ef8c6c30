#pragma once

#include "essx/cohomology.hpp"

#include <cstdint>
#include <random>

namespace essx {
namespace corpus {

// Seeded generator; all randomized suites are reproducible from the seed.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    long long range(long long lo, long long hi);  // inclusive bounds
    std::size_t index(std::size_t n);
    bool chance(int percent);
};

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long long max_abs);
FgModule random_module(Rng& rng, bool allow_free = true);
FgModule random_finite_module(Rng& rng);
FgModule random_free_module(Rng& rng, std::size_t max_rank = 2);
ModMorphism random_morphism(Rng& rng, const FgModule& a, const FgModule& b);

// Unimodular row transform together with its inverse.
std::pair<IntMatrix, IntMatrix> random_unimodular_pair(Rng& rng, std::size_t n);

// Isomorphic module with a scrambled presentation.
struct Obfuscated {
    FgModule module;
    ModMorphism to_original;    // module -> original
    ModMorphism from_original;  // original -> module
};
Obfuscated obfuscate(Rng& rng, const FgModule& m);

// 0 -> S -> B -> B/S -> 0, exact by construction.
ShortSequence random_exact_sequence(Rng& rng);

// Short e-exact with the image only essentially contained in the kernel;
// the last module is torsion-free when requested.
ShortSequence random_eexact_sequence(Rng& rng, bool torsion_free_last);

struct ESplitInstance {
    ShortSequence seq;
    ModMorphism section;
    Int split_scalar;
};

// Split exact sequence behind a scrambled presentation, with the section
// scaled by a small nonzero amount.
ESplitInstance random_esplit_instance(Rng& rng);

// Base grid of direct sums with exact rows and columns, perturbed by
// commutativity-preserving layer scalings and presentation scrambling;
// hypotheses for the requested mode are re-verified (resampling on
// failure, deterministically from the seed).
NineGrid random_nine_grid(Rng& rng, NineMode mode);

// Resolution by iterated essential embeddings (each cyclic factor Z/d is
// embedded in Z/(d k) with the primes of k dividing d, free parts embed
// identically); validated before returning.
Resolution essential_embedding_resolution(Rng& rng, const FgModule& m);

struct ComparisonInstance {
    ModMorphism f;
    Resolution bottom;  // resolution of f's domain
    Resolution top;     // resolution of f's codomain
};

ComparisonInstance random_comparison_instance(Rng& rng);

struct HorseshoeInstance {
    ShortSequence seq;
    Resolution left;
    Resolution right;
};

HorseshoeInstance random_horseshoe_instance(Rng& rng);

// The bundled worked example: resolution 0 -> Z/2 -> Z/8 -> Z/16 -> 0
// with 1 |-> 4 and n |-> 8n, the ideal (2).
struct CyclicResolutionExample {
    FgModule z2, z8, z16;
    ModMorphism f;  // Z/2 -> Z/8
    ModMorphism g;  // Z/8 -> Z/16
    ShortSequence seq;
    Resolution res;
    Ideal ideal;
};

CyclicResolutionExample z2_resolution_example();

}  // namespace corpus
}  // namespace essx
