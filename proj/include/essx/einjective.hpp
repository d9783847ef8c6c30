#pragma once

#include "essx/eexact.hpp"

#include <cstdint>
#include <random>

namespace essx {

// f1 : A1 -> A2 monic, f2 : A1 -> E; solve f3 . f1 = r . f2.
struct ExtensionProblem {
    ModMorphism f1;
    ModMorphism f2;
};

struct ExtendResult {
    std::optional<ModMorphism> extension;  // f3 : A2 -> E
    Int r = 0;
    Int bound_tried = 0;
    bool found() const { return extension.has_value(); }
};

// Solves the linear congruence system for the unknown matrix of f3 over
// a ladder of candidate scalars r. When `variant` is supplied, a random
// element of the homogeneous solution lattice is added to the particular
// solution, giving an independent but equally valid extension.
ExtendResult essential_extend(const ExtensionProblem& p, const Int& r_cap = 0,
                              std::mt19937_64* variant = nullptr);

struct BaerExtension {
    ScalarWitness witness;  // r with g . i = r . f
    ModMorphism g;          // Z -> E, determined by g(1)
    bool canonical;         // g(1) = f(n), r = n
};

// Extension problem for the ideal nZ and the map f with f(n) = value.
BaerExtension baer_extend(const Int& n, const ModElement& value);

struct ProbeRecord {
    std::string kind;  // "ideal" or "monic"
    std::string detail;
    bool succeeded = false;
    Int r = 0;
};

struct EInjectivityEvidence {
    std::string module_description;
    std::vector<ProbeRecord> probes;
    bool all_succeeded = true;
    std::string note;
};

// Evidence, never a proof: Baer probes over all ideals nZ up to the bound
// against a generating sample of E, plus essential_extend on random monics.
EInjectivityEvidence probe_e_injective(const FgModule& e, long long ideal_bound,
                                       long long mono_samples, std::uint64_t seed);

struct RetractionResult {
    std::optional<ModMorphism> retraction;  // B -> E with g . i = r . id_E
    Int r = 0;
    Int bound_tried = 0;
    bool found() const { return retraction.has_value(); }
};

// For e-exact 0 -> E -> B -> C -> 0 with E torsion-free: a scaled
// retraction of the first map.
RetractionResult retraction_split(const ShortSequence& s, const Int& r_cap = 0);

// 0 -> target -> E^0 -> E^1 -> ..., e-exact at every position.
struct Resolution {
    FgModule target;
    ModMorphism augmentation;  // target -> complex.objects[0], monic
    CochainComplex complex;    // lo = 0
    std::vector<EInjectivityEvidence> evidence;  // optional, per term
};

Resolution trivial_resolution(const FgModule& e);  // 0 -> E -> E -> 0

struct ResolutionCheck {
    bool ok = false;
    long long failing_position = 0;  // -1 = augmentation, i >= 0 = complex degree
    std::string detail;
};

ResolutionCheck validate_resolution(const Resolution& res);

// Chain lift f^n : X^n -> E^n of f along two resolutions, with the scalar
// of every constructed square recorded: f^{n+1} . d'^n = r_n . (d^n . f^n)
// and f^0 . aug' = base_scalar . (aug . f).
struct ChainLift {
    CochainComplex bottom;  // deleted complex of the e-exact resolution
    CochainComplex top;     // deleted complex of the e-injective-evidence resolution
    std::vector<ModMorphism> maps;
    Int base_scalar = 0;
    std::vector<Int> square_scalars;
    bool complete = false;
    long long failed_stage = -1;
    Int bound_tried = 0;
};

ChainLift comparison_lift(const ModMorphism& f, const Resolution& bottom, const Resolution& top,
                          const Int& r_cap = 0, std::mt19937_64* variant = nullptr);

// r(h^n - f^n) = s^{n+1} . d'^n + s . (d^{n-1} . s^n) for all n, with
// s^0 = 0. maps[k] is s^{k+1} : X^{k+1} -> E^k.
struct HomotopyResult {
    bool found = false;
    Int r = 0, s = 0;
    std::vector<ModMorphism> maps;
    Int bound_tried = 0;
};

HomotopyResult homotopy_witness(const ChainLift& f, const ChainLift& h, const Int& r_cap = 0);

// Resolution of the middle term of a short e-exact sequence as degreewise
// direct sums, with split exact columns.
struct HorseshoeResult {
    bool ok = false;
    std::string failure;
    Resolution middle;
    std::vector<ModMorphism> inclusions;   // I'^n -> I^n
    std::vector<ModMorphism> projections;  // I^n -> I''^n
    std::vector<ModMorphism> sections;     // I''^n -> I^n, exact sections of the projections
    ChainLift lift;
    ResolutionCheck validation;
};

HorseshoeResult horseshoe(const ShortSequence& s, const Resolution& left, const Resolution& right,
                          const Int& r_cap = 0);

}  // namespace essx
