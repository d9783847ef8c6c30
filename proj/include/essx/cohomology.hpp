#pragma once

#include "essx/einjective.hpp"

namespace essx {

// The ideal nZ, stored as |n|. The zero ideal may be represented but is
// rejected by every torsion-functor operation.
class Ideal {
public:
    explicit Ideal(const Int& generator) : n_(abs_int(generator)) {}
    const Int& generator() const { return n_; }
    bool is_zero() const { return n_ == 0; }
    bool is_unit() const { return n_ == 1; }

private:
    Int n_;
};

// Submodule of elements annihilated by some power of the ideal generator.
Submodule gamma(const Ideal& a, const FgModule& m);

// Restriction/corestriction of f to the torsion submodules; the membership
// of every generator image is checked, not assumed.
ModMorphism gamma_map(const Ideal& a, const ModMorphism& f);

struct GammaComplex {
    CochainComplex complex;           // objects are the gamma sources
    std::vector<Submodule> torsions;  // per-degree gamma submodules
};

GammaComplex gamma_complex(const Ideal& a, const CochainComplex& x);

struct CohomologyAt {
    FgModule h;
    Submodule kernel_part;   // Ker d^i inside X^i
    Submodule image_part;    // Im d^{i-1} inside X^i
    ModMorphism projection;  // kernel source -> h (identity matrix)
};

// Ker(d^i)/Im(d^{i-1}); requires d^i . d^{i-1} = 0 (NotAComplexAt).
CohomologyAt cohomology_at(const CochainComplex& x, long long i);

// H^i of a chain map that commutes exactly with the differentials.
ModMorphism induced_on_cohomology(const ChainMap& phi, long long i);

struct DegreeEntry {
    long long degree = 0;
    FgModule h;
    std::vector<Int> kernel_factors;
    std::size_t kernel_rank = 0;
    std::vector<Int> image_factors;
    std::size_t image_rank = 0;
};

struct ECohomologyReport {
    Int ideal_generator;
    std::string module_description;
    std::vector<DegreeEntry> entries;
    std::vector<EInjectivityEvidence> term_evidence;
    std::vector<std::string> warnings;
    std::string note;
};

// Applies the torsion functor to the deleted complex of the supplied
// resolution and computes cohomology over [lo, hi]. The resolution is an
// explicit input, validated and echoed; computed values depend on it.
ECohomologyReport e_cohomology(const Ideal& a, const FgModule& m, const Resolution& res,
                               long long lo, long long hi, long long probe_ideal_bound = 8,
                               long long probe_mono_samples = 2, std::uint64_t seed = 0);

struct GammaEExactReport {
    bool left_monic = false;
    bool left_contained = false;
    bool left_essential = false;
    bool n_torsion_free = false;
    bool image_essential = false;  // Im(Gamma g) essential in Gamma(N)
    bool left_ok() const { return left_monic && left_contained && left_essential; }
    bool full_ok() const { return left_ok() && image_essential; }
};

// (a) left e-exactness of 0 -> Gamma L -> Gamma M -> Gamma N, always;
// (b) full e-exactness, claimed by the theory when N is torsion-free.
GammaEExactReport gamma_e_exactness_check(const Ideal& a, const ShortSequence& s);

struct H0Report {
    FgModule h0;
    FgModule gamma_of_m;
    bool isomorphic = false;
    Int scalar = 1;
};

// For torsion-free M both H^0 and Gamma vanish over the integers; the
// report certifies the isomorphism with scalar 1.
H0Report h0_vs_gamma(const Ideal& a, const FgModule& m, const Resolution& res);

struct LongSequencePosition {
    long long index = 0;   // position in the assembled long sequence
    std::string label;
    bool contained = false;
    bool essential = false;
};

struct LongSequenceReport {
    bool ok = false;
    std::string failure;
    bool first_map_monic = false;
    std::vector<LongSequencePosition> positions;
    std::vector<ModMorphism> connecting;  // sigma^i : H^i(N) -> H^{i+1}(L)
    CochainComplex sequence;
    HorseshoeResult horseshoe_data;
};

// Builds the middle resolution via the horseshoe, applies the torsion
// functor to the split degreewise columns, constructs the connecting maps
// by the zig-zag (exact lifts along the split sections) and verifies
// e-exactness of the assembled long sequence through max_degree.
LongSequenceReport long_sequence_verify(const Ideal& a, const ShortSequence& s,
                                        const Resolution& left, const Resolution& right,
                                        long long max_degree, const Int& r_cap = 0);

}  // namespace essx
