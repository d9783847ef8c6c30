#pragma once

#include "essx/essential.hpp"
#include "essx/fg_module.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace essx {

// A nonzero integer certifying a scaled identity between maps, together
// with a human-readable description of the identity it scales.
struct ScalarWitness {
    Int r;
    std::string relation;
};

// The set of integers r satisfying a family of proportionality
// constraints: empty, all integers, a single forced value, or a full
// congruence class modulo the relevant exponent.
class ScalarSet {
public:
    enum class Kind { empty, all, single, congruence };

    static ScalarSet empty() { return ScalarSet(Kind::empty, 0, 0); }
    static ScalarSet all() { return ScalarSet(Kind::all, 0, 0); }
    static ScalarSet single(const Int& v) { return ScalarSet(Kind::single, v, 0); }
    static ScalarSet congruence(const Int& residue, const Int& modulus);

    Kind kind() const { return kind_; }
    const Int& residue() const { return residue_; }
    const Int& modulus() const { return modulus_; }

    bool is_empty() const { return kind_ == Kind::empty; }
    bool contains(const Int& r) const;
    ScalarSet intersect(const ScalarSet& o) const;
    std::optional<Int> nonzero_witness() const;  // smallest |r|, ties positive
    std::string describe() const;

private:
    ScalarSet(Kind k, Int res, Int mod) : kind_(k), residue_(std::move(res)), modulus_(std::move(mod)) {}
    Kind kind_;
    Int residue_, modulus_;
};

// Admissible scalars {r : phi = r * psi} for two morphisms with the same
// domain and codomain.
ScalarSet scalar_proportionality(const ModMorphism& phi, const ModMorphism& psi);

// Sequence of modules objects[k] at degrees lo+k with differentials
// maps[k] : objects[k] -> objects[k+1]. Differentials need not compose to
// zero; rows of comparison diagrams are plain complexes only where stated.
struct CochainComplex {
    long long lo = 0;
    std::vector<FgModule> objects;
    std::vector<ModMorphism> maps;

    static CochainComplex make(long long lo, std::vector<FgModule> objects,
                               std::vector<ModMorphism> maps);

    long long hi() const { return lo + static_cast<long long>(objects.size()) - 1; }
    FgModule object_at(long long i) const;   // zero module outside range
    ModMorphism map_at(long long i) const;   // zero morphism outside range
    bool same_shape(const CochainComplex& o) const;
};

// 0 -> A -f-> B -g-> C -> 0 candidate.
struct ShortSequence {
    ModMorphism f, g;
    ShortSequence(ModMorphism f_, ModMorphism g_);

    const FgModule& first() const { return f.domain(); }
    const FgModule& middle() const { return f.codomain(); }
    const FgModule& last() const { return g.codomain(); }
};

struct ShortEExactReport {
    bool f_monic = false;
    bool im_f_contained = false;   // Im f inside Ker g
    bool im_f_essential = false;   // Im f essential in Ker g
    bool im_g_essential = false;   // Im g essential in C
    bool ok() const { return f_monic && im_f_contained && im_f_essential && im_g_essential; }
    std::string failed() const;
};

ShortEExactReport is_short_e_exact(const ShortSequence& s);

struct EExactAtReport {
    bool contained = false;
    bool essential = false;
    bool ok() const { return contained && essential; }
};

// Im(d^{i-1}) essential in Ker(d^i); i must index an object of x.
EExactAtReport is_e_exact_at(const CochainComplex& x, long long i);

// Diagram shapes for scalar commutativity. ------------------------------

// g . i = r . f with i : A1 -> A2, f : A1 -> B, g : A2 -> B.
struct TriangleShape {
    ModMorphism i, f, g;
};

// q . f = r . (g . t) with f : A1 -> A2, t : A1 -> B1, g : B1 -> B2, q : A2 -> B2.
struct SquareShape {
    ModMorphism f, t, g, q;
};

struct ScalarCommuteResult {
    ScalarSet admissible = ScalarSet::empty();
    std::optional<ScalarWitness> witness;
};

ScalarCommuteResult solve_scalar_commute(const TriangleShape& shape);
ScalarCommuteResult solve_scalar_commute(const SquareShape& shape);

// Candidate scalars: divisors and small multiples of the torsion exponent
// hint, then a 1..cap sweep; ascending preference for small witnesses.
std::vector<Int> scalar_ladder(const Int& exponent_hint, const Int& cap);
Int default_scalar_cap(const Int& exponent_hint);  // max(64, 4 * hint)

struct ESplitReport {
    ShortEExactReport sequence;
    Int split_scalar;              // s with p . j = s . id_C
    std::optional<Int> witness_r;  // r with rB isomorphic to A + C
    Int bound_tried;               // largest candidate examined
    std::vector<Int> scaled_middle_factors;  // invariant factors of rB (when found)
    std::size_t scaled_middle_rank = 0;
    std::vector<Int> outer_sum_factors;      // invariant factors of A + C
    std::size_t outer_sum_rank = 0;
    bool found() const { return witness_r.has_value(); }
};

// Requires is_short_e_exact(s) and p . j = split_scalar . id_C exactly
// (throws NotESplit otherwise); searches the ladder for r with
// rB isomorphic to A + C. An exhausted ladder is reported, not asserted
// as a counterexample.
ESplitReport check_e_split(const ShortSequence& s, const ModMorphism& j, const Int& split_scalar,
                           const Int& r_cap = 0);

// 3x3 grid: rows[i] connects modules m[i][0..2], columns connect
// m[0..2][j]. row_maps[i][k] : m[i][k] -> m[i][k+1]; col_maps[k][j] :
// m[k][j] -> m[k+1][j].
struct NineGrid {
    std::array<std::array<FgModule, 3>, 3> m;
    std::array<std::array<ModMorphism, 2>, 3> row_maps;
    std::array<std::array<ModMorphism, 3>, 2> col_maps;

    static NineGrid make(std::array<std::array<FgModule, 3>, 3> modules,
                         std::array<std::array<ModMorphism, 2>, 3> rows,
                         std::array<std::array<ModMorphism, 3>, 2> cols);
};

enum class NineMode { middle, bottom };

struct NineLemmaReport {
    std::vector<std::pair<std::string, bool>> hypotheses;
    std::vector<Int> square_scalars;  // per square, row-major
    ShortEExactReport conclusion;
};

// Checks the hypotheses for the requested mode (throwing HypothesisFailed
// on the first violation) and returns the verdict for the concluded row.
NineLemmaReport verify_nine_lemma(const NineGrid& grid, NineMode mode);

// Degreewise maps commuting exactly with the differentials.
struct ChainMap {
    CochainComplex from, to;
    std::vector<ModMorphism> components;

    static ChainMap make(CochainComplex from, CochainComplex to, std::vector<ModMorphism> components);
    ChainMap add(const ChainMap& o) const;
};

}  // namespace essx
