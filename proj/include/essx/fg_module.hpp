#pragma once

#include "essx/errors.hpp"
#include "essx/int_matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace essx {

// A finitely generated abelian group presented as the cokernel of an
// integer matrix whose COLUMNS are relators in generator coordinates.
// The canonical decomposition Z/d_1 + ... + Z/d_k + Z^rank (d_i | d_{i+1},
// d_i >= 2) is computed once via Smith normal form and cached together
// with the change-of-basis transforms. Immutable and cheap to copy.
class FgModule {
public:
    FgModule();  // the zero module

    static FgModule present(std::size_t generators, IntMatrix relations);
    static FgModule zero();
    static FgModule free(std::size_t rank);
    static FgModule cyclic(const Int& n);  // Z/n, or Z when n = 0
    static FgModule from_invariants(const std::vector<Int>& torsion, std::size_t free_rank);

    std::size_t generators() const;
    const IntMatrix& relations() const;

    const std::vector<Int>& invariant_factors() const;
    std::size_t free_rank() const;

    // Canonical coordinates: y = to_canonical() * x; coordinate i is taken
    // modulo coordinate_moduli()[i] (modulus 0 means a free coordinate).
    const IntMatrix& to_canonical() const;
    const IntMatrix& from_canonical() const;
    const std::vector<Int>& coordinate_moduli() const;

    bool is_zero_module() const;
    bool is_torsion_free() const;
    bool is_finite() const;
    Int order() const;     // throws InfiniteModule when free_rank > 0
    Int exponent() const;  // exponent of the torsion part; 1 when torsion-free

    std::vector<Int> reduce(const std::vector<Int>& coords) const;

    bool same_presentation(const FgModule& o) const;
    std::string describe() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit FgModule(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    static std::shared_ptr<const Impl> build_impl(std::size_t generators, IntMatrix relations);
};

// An element in generator coordinates, stored as the unique reduced
// representative of its coset.
class ModElement {
public:
    ModElement(FgModule module, std::vector<Int> coords);

    const FgModule& module() const { return module_; }
    const std::vector<Int>& coords() const { return coords_; }

    bool is_zero() const;
    std::optional<Int> order() const;  // empty = infinite order

    ModElement operator+(const ModElement& o) const;
    ModElement operator-(const ModElement& o) const;
    ModElement scaled(const Int& c) const;
    bool operator==(const ModElement& o) const;
    bool operator!=(const ModElement& o) const { return !(*this == o); }

    std::string str() const;

private:
    FgModule module_;
    std::vector<Int> coords_;
};

// A homomorphism given by an integer matrix in generator coordinates
// (codomain.generators() x domain.generators()), certified well-defined
// at construction: every relator of the domain maps into the relation
// span of the codomain.
class ModMorphism {
public:
    ModMorphism();  // zero morphism between zero modules
    ModMorphism(FgModule domain, FgModule codomain, IntMatrix matrix);

    static ModMorphism identity(const FgModule& m);
    static ModMorphism zero(const FgModule& domain, const FgModule& codomain);
    static ModMorphism scalar(const FgModule& m, const Int& c);  // multiplication by c

    const FgModule& domain() const { return domain_; }
    const FgModule& codomain() const { return codomain_; }
    const IntMatrix& matrix() const { return matrix_; }

    ModElement apply(const ModElement& x) const;

    ModMorphism scaled(const Int& c) const;
    ModMorphism operator+(const ModMorphism& o) const;
    ModMorphism operator-(const ModMorphism& o) const;

    bool equals(const ModMorphism& o) const;  // equality as homomorphisms
    bool is_zero_morphism() const;

private:
    FgModule domain_, codomain_;
    IntMatrix matrix_;
};

ModMorphism compose(const ModMorphism& outer, const ModMorphism& inner);  // outer after inner

// A monomorphism source -> ambient; generators() are the columns of the
// embedding matrix.
struct Submodule {
    FgModule ambient;
    FgModule source;
    ModMorphism embedding;

    bool is_whole() const;
    bool is_zero() const { return source.is_zero_module(); }
};

// Span of the given columns inside ambient; the source is presented with
// every relation that holds among the generators in ambient, which makes
// the embedding monic by construction.
Submodule submodule_from_generators(const FgModule& ambient, const IntMatrix& generator_columns);

Submodule kernel(const ModMorphism& f);
Submodule image(const ModMorphism& f);

struct QuotientData {
    FgModule quotient;
    ModMorphism projection;  // ambient -> quotient, identity matrix
};

QuotientData cokernel(const ModMorphism& f);
QuotientData quotient_by(const Submodule& s);

// Preimage of x under the embedding of s, when x lies in s.
std::optional<ModElement> preimage_in(const Submodule& s, const ModElement& x);

// Batched preimage: columns are ambient coordinates; empty when some column
// is not in s.
std::optional<IntMatrix> preimage_columns(const Submodule& s, const IntMatrix& columns);

// inner as a submodule of outer.source (both submodules of one ambient);
// empty when inner is not contained in outer.
std::optional<Submodule> restrict_submodule(const Submodule& inner, const Submodule& outer);

// f with codomain corestricted to its image.
ModMorphism corestrict_to_image(const ModMorphism& f, const Submodule& im);

struct DirectSum {
    FgModule module;
    std::vector<ModMorphism> inclusions;
    std::vector<ModMorphism> projections;
};

DirectSum direct_sum(const std::vector<FgModule>& parts);
ModMorphism direct_sum_morphism(const ModMorphism& f, const ModMorphism& g);

struct IsoVerdict {
    bool isomorphic = false;
    std::optional<ModMorphism> witness;          // forward isomorphism
    std::optional<ModMorphism> inverse_witness;  // its inverse
};

IsoVerdict is_isomorphic(const FgModule& a, const FgModule& b);

// Hom(A, B) as a finitely generated abelian group together with the
// bijection between its elements and actual homomorphisms.
class HomModule {
public:
    HomModule(FgModule a, FgModule b);

    const FgModule& group() const { return hom_; }
    const FgModule& source() const { return a_; }
    const FgModule& target() const { return b_; }

    ModMorphism evaluate(const ModElement& h) const;
    ModElement coordinates(const ModMorphism& f) const;

private:
    struct Pair {
        std::size_t a_pos, b_pos;
        Int order;   // 0 = free
        Int weight;  // canonical image multiplier
    };
    FgModule a_, b_, hom_;
    std::vector<Pair> pairs_;
};

// Precomposition f^* : Hom(B, E) -> Hom(A, E) for f : A -> B.
ModMorphism induced_hom(const ModMorphism& f, const FgModule& e);

// All elements of a finite module (throws InfiniteModule otherwise).
std::vector<ModElement> enumerate_elements(const FgModule& m);

}  // namespace essx
