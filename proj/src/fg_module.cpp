#include "essx/fg_module.hpp"

#include <algorithm>
#include <sstream>

namespace essx {

struct FgModule::Impl {
    std::size_t gens = 0;
    IntMatrix relations;
    IntMatrix to_canon;    // U
    IntMatrix from_canon;  // U^{-1}
    std::vector<Int> moduli;
    std::vector<Int> invariant_factors;
    std::size_t free_rank = 0;
};

std::shared_ptr<const FgModule::Impl> FgModule::build_impl(std::size_t generators, IntMatrix relations) {
    if (relations.rows() != generators)
        throw DimensionMismatch("present_module: relations must have one row per generator");
    auto impl = std::make_shared<FgModule::Impl>();
    impl->gens = generators;
    SmithForm f = smith_normal_form(relations);
    impl->relations = std::move(relations);
    impl->to_canon = std::move(f.u);
    impl->from_canon = std::move(f.ui);
    impl->moduli.assign(generators, Int(0));
    std::size_t bound = std::min(generators, impl->relations.cols());
    for (std::size_t i = 0; i < bound; ++i) impl->moduli[i] = f.s.at(i, i);
    for (const Int& d : impl->moduli) {
        if (d >= 2) impl->invariant_factors.push_back(d);
        if (d == 0) ++impl->free_rank;
    }
    return impl;
}

FgModule::FgModule() : impl_(build_impl(0, IntMatrix(0, 0))) {}

FgModule FgModule::present(std::size_t generators, IntMatrix relations) {
    return FgModule(build_impl(generators, std::move(relations)));
}

FgModule FgModule::zero() { return FgModule(); }

FgModule FgModule::free(std::size_t rank) { return present(rank, IntMatrix(rank, 0)); }

FgModule FgModule::cyclic(const Int& n) {
    if (n == 0) return free(1);
    return present(1, IntMatrix::diagonal({abs_int(n)}, 1, 1));
}

FgModule FgModule::from_invariants(const std::vector<Int>& torsion, std::size_t free_rank) {
    std::size_t g = torsion.size() + free_rank;
    return present(g, IntMatrix::diagonal(torsion, g, torsion.size()));
}

std::size_t FgModule::generators() const { return impl_->gens; }
const IntMatrix& FgModule::relations() const { return impl_->relations; }
const std::vector<Int>& FgModule::invariant_factors() const { return impl_->invariant_factors; }
std::size_t FgModule::free_rank() const { return impl_->free_rank; }
const IntMatrix& FgModule::to_canonical() const { return impl_->to_canon; }
const IntMatrix& FgModule::from_canonical() const { return impl_->from_canon; }
const std::vector<Int>& FgModule::coordinate_moduli() const { return impl_->moduli; }

bool FgModule::is_zero_module() const {
    return impl_->invariant_factors.empty() && impl_->free_rank == 0;
}

bool FgModule::is_torsion_free() const { return impl_->invariant_factors.empty(); }

bool FgModule::is_finite() const { return impl_->free_rank == 0; }

Int FgModule::order() const {
    if (!is_finite()) throw InfiniteModule("order of an infinite module");
    Int n = 1;
    for (const Int& d : impl_->invariant_factors) n *= d;
    return n;
}

Int FgModule::exponent() const {
    return impl_->invariant_factors.empty() ? Int(1) : impl_->invariant_factors.back();
}

std::vector<Int> FgModule::reduce(const std::vector<Int>& coords) const {
    if (coords.size() != impl_->gens) throw DimensionMismatch("element coordinate length mismatch");
    std::vector<Int> y = impl_->to_canon.apply(coords);
    for (std::size_t i = 0; i < y.size(); ++i)
        if (impl_->moduli[i] >= 1) y[i] = mod_floor(y[i], impl_->moduli[i]);
    return impl_->from_canon.apply(y);
}

bool FgModule::same_presentation(const FgModule& o) const {
    if (impl_ == o.impl_) return true;
    return impl_->gens == o.impl_->gens && impl_->relations == o.impl_->relations;
}

std::string FgModule::describe() const {
    if (is_zero_module()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Int& d : impl_->invariant_factors) {
        os << (first ? "" : " + ") << "Z/" << d.str();
        first = false;
    }
    if (impl_->free_rank == 1) os << (first ? "" : " + ") << "Z";
    if (impl_->free_rank > 1) os << (first ? "" : " + ") << "Z^" << impl_->free_rank;
    return os.str();
}

ModElement::ModElement(FgModule module, std::vector<Int> coords) : module_(std::move(module)) {
    coords_ = module_.reduce(coords);
}

bool ModElement::is_zero() const {
    for (const Int& c : coords_)
        if (c != 0) return false;
    return true;
}

std::optional<Int> ModElement::order() const {
    std::vector<Int> y = module_.to_canonical().apply(coords_);
    const auto& moduli = module_.coordinate_moduli();
    Int n = 1;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (moduli[i] == 0) {
            if (y[i] != 0) return std::nullopt;
        } else if (moduli[i] >= 2) {
            Int r = mod_floor(y[i], moduli[i]);
            n = lcm_int(n, moduli[i] / gcd_int(moduli[i], r));
        }
    }
    return n;
}

ModElement ModElement::operator+(const ModElement& o) const {
    if (!module_.same_presentation(o.module_)) throw DimensionMismatch("element sum across modules");
    std::vector<Int> c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return ModElement(module_, c);
}

ModElement ModElement::operator-(const ModElement& o) const {
    if (!module_.same_presentation(o.module_)) throw DimensionMismatch("element difference across modules");
    std::vector<Int> c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
    return ModElement(module_, c);
}

ModElement ModElement::scaled(const Int& c) const {
    std::vector<Int> v = coords_;
    for (Int& x : v) x *= c;
    return ModElement(module_, v);
}

bool ModElement::operator==(const ModElement& o) const {
    return module_.same_presentation(o.module_) && coords_ == o.coords_;
}

std::string ModElement::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i].str();
    os << ")";
    return os.str();
}

ModMorphism::ModMorphism() : domain_(), codomain_(), matrix_(0, 0) {}

ModMorphism::ModMorphism(FgModule domain, FgModule codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.generators() || matrix_.cols() != domain_.generators())
        throw DimensionMismatch("morphism matrix shape mismatch");
    if (!span_contains(codomain_.relations(), matrix_ * domain_.relations()))
        throw NotAMorphism("matrix does not carry domain relators into the codomain relation span");
}

ModMorphism ModMorphism::identity(const FgModule& m) {
    return ModMorphism(m, m, IntMatrix::identity(m.generators()));
}

ModMorphism ModMorphism::zero(const FgModule& domain, const FgModule& codomain) {
    return ModMorphism(domain, codomain, IntMatrix(codomain.generators(), domain.generators()));
}

ModMorphism ModMorphism::scalar(const FgModule& m, const Int& c) {
    return ModMorphism(m, m, IntMatrix::identity(m.generators()).scaled(c));
}

ModElement ModMorphism::apply(const ModElement& x) const {
    if (!x.module().same_presentation(domain_)) throw DimensionMismatch("morphism applied outside domain");
    return ModElement(codomain_, matrix_.apply(x.coords()));
}

ModMorphism ModMorphism::scaled(const Int& c) const {
    return ModMorphism(domain_, codomain_, matrix_.scaled(c));
}

ModMorphism ModMorphism::operator+(const ModMorphism& o) const {
    if (!domain_.same_presentation(o.domain_) || !codomain_.same_presentation(o.codomain_))
        throw DimensionMismatch("morphism sum shape mismatch");
    return ModMorphism(domain_, codomain_, matrix_ + o.matrix_);
}

ModMorphism ModMorphism::operator-(const ModMorphism& o) const {
    if (!domain_.same_presentation(o.domain_) || !codomain_.same_presentation(o.codomain_))
        throw DimensionMismatch("morphism difference shape mismatch");
    return ModMorphism(domain_, codomain_, matrix_ - o.matrix_);
}

bool ModMorphism::equals(const ModMorphism& o) const {
    if (!domain_.same_presentation(o.domain_) || !codomain_.same_presentation(o.codomain_)) return false;
    return span_contains(codomain_.relations(), matrix_ - o.matrix_);
}

bool ModMorphism::is_zero_morphism() const {
    return span_contains(codomain_.relations(), matrix_);
}

ModMorphism compose(const ModMorphism& outer, const ModMorphism& inner) {
    if (!inner.codomain().same_presentation(outer.domain()))
        throw DimensionMismatch("composition: codomain/domain mismatch");
    return ModMorphism(inner.domain(), outer.codomain(), outer.matrix() * inner.matrix());
}

bool Submodule::is_whole() const { return quotient_by(*this).quotient.is_zero_module(); }

Submodule submodule_from_generators(const FgModule& ambient, const IntMatrix& generator_columns) {
    if (generator_columns.rows() != ambient.generators())
        throw DimensionMismatch("submodule generators live in the wrong module");
    std::size_t k = generator_columns.cols();
    IntMatrix combined = generator_columns.hstack(ambient.relations());
    IntMatrix rel = kernel_basis(combined).top_rows(k);
    FgModule source = FgModule::present(k, rel);
    ModMorphism emb(source, ambient, generator_columns);
    return Submodule{ambient, source, std::move(emb)};
}

Submodule kernel(const ModMorphism& f) {
    IntMatrix combined = f.matrix().hstack(f.codomain().relations());
    IntMatrix gens = kernel_basis(combined).top_rows(f.domain().generators());
    return submodule_from_generators(f.domain(), gens);
}

Submodule image(const ModMorphism& f) {
    return submodule_from_generators(f.codomain(), f.matrix());
}

QuotientData cokernel(const ModMorphism& f) {
    FgModule q = FgModule::present(f.codomain().generators(),
                                   f.matrix().hstack(f.codomain().relations()));
    ModMorphism proj(f.codomain(), q, IntMatrix::identity(f.codomain().generators()));
    return {std::move(q), std::move(proj)};
}

QuotientData quotient_by(const Submodule& s) {
    FgModule q = FgModule::present(s.ambient.generators(),
                                   s.embedding.matrix().hstack(s.ambient.relations()));
    ModMorphism proj(s.ambient, q, IntMatrix::identity(s.ambient.generators()));
    return {std::move(q), std::move(proj)};
}

std::optional<IntMatrix> preimage_columns(const Submodule& s, const IntMatrix& columns) {
    IntMatrix combined = s.embedding.matrix().hstack(s.ambient.relations());
    LinearSolve sol = solve_linear(combined, columns);
    if (!sol.solvable) return std::nullopt;
    return sol.solution.top_rows(s.source.generators());
}

std::optional<ModElement> preimage_in(const Submodule& s, const ModElement& x) {
    if (!x.module().same_presentation(s.ambient)) throw DimensionMismatch("membership in foreign module");
    auto cols = preimage_columns(s, IntMatrix::column(x.coords()));
    if (!cols) return std::nullopt;
    return ModElement(s.source, cols->col_vector(0));
}

std::optional<Submodule> restrict_submodule(const Submodule& inner, const Submodule& outer) {
    if (!inner.ambient.same_presentation(outer.ambient))
        throw DimensionMismatch("submodules of different ambient modules");
    auto pre = preimage_columns(outer, inner.embedding.matrix());
    if (!pre) return std::nullopt;
    return submodule_from_generators(outer.source, *pre);
}

ModMorphism corestrict_to_image(const ModMorphism& f, const Submodule& im) {
    auto pre = preimage_columns(im, f.matrix());
    if (!pre) throw Error("corestrict_to_image: image submodule does not contain the image");
    return ModMorphism(f.domain(), im.source, *pre);
}

DirectSum direct_sum(const std::vector<FgModule>& parts) {
    std::size_t gens = 0, rels = 0;
    for (const auto& p : parts) {
        gens += p.generators();
        rels += p.relations().cols();
    }
    IntMatrix rel(gens, rels);
    std::size_t go = 0, ro = 0;
    for (const auto& p : parts) {
        const IntMatrix& r = p.relations();
        for (std::size_t i = 0; i < r.rows(); ++i)
            for (std::size_t j = 0; j < r.cols(); ++j) rel.at(go + i, ro + j) = r.at(i, j);
        go += p.generators();
        ro += r.cols();
    }
    DirectSum out;
    out.module = FgModule::present(gens, rel);
    go = 0;
    for (const auto& p : parts) {
        IntMatrix inc(gens, p.generators());
        IntMatrix prj(p.generators(), gens);
        for (std::size_t i = 0; i < p.generators(); ++i) {
            inc.at(go + i, i) = 1;
            prj.at(i, go + i) = 1;
        }
        out.inclusions.emplace_back(p, out.module, std::move(inc));
        out.projections.emplace_back(out.module, p, std::move(prj));
        go += p.generators();
    }
    return out;
}

ModMorphism direct_sum_morphism(const ModMorphism& f, const ModMorphism& g) {
    DirectSum dom = direct_sum({f.domain(), g.domain()});
    DirectSum cod = direct_sum({f.codomain(), g.codomain()});
    std::size_t r = cod.module.generators(), c = dom.module.generators();
    IntMatrix m(r, c);
    const IntMatrix& fm = f.matrix();
    const IntMatrix& gm = g.matrix();
    for (std::size_t i = 0; i < fm.rows(); ++i)
        for (std::size_t j = 0; j < fm.cols(); ++j) m.at(i, j) = fm.at(i, j);
    for (std::size_t i = 0; i < gm.rows(); ++i)
        for (std::size_t j = 0; j < gm.cols(); ++j)
            m.at(fm.rows() + i, fm.cols() + j) = gm.at(i, j);
    return ModMorphism(dom.module, cod.module, std::move(m));
}

namespace {

std::vector<std::size_t> live_positions(const FgModule& m) {
    std::vector<std::size_t> out;
    const auto& moduli = m.coordinate_moduli();
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (moduli[i] != 1) out.push_back(i);
    return out;
}

}  // namespace

IsoVerdict is_isomorphic(const FgModule& a, const FgModule& b) {
    if (a.invariant_factors() != b.invariant_factors() || a.free_rank() != b.free_rank()) return {};

    auto live_a = live_positions(a);
    auto live_b = live_positions(b);
    // invariant factors and ranks agree, so the live coordinate lists match
    // position by position (torsion factors first in chain order, then free)
    IntMatrix p(b.generators(), a.generators());
    for (std::size_t k = 0; k < live_a.size(); ++k) p.at(live_b[k], live_a[k]) = 1;
    IntMatrix q(a.generators(), b.generators());
    for (std::size_t k = 0; k < live_a.size(); ++k) q.at(live_a[k], live_b[k]) = 1;

    ModMorphism fwd(a, b, b.from_canonical() * p * a.to_canonical());
    ModMorphism bwd(b, a, a.from_canonical() * q * b.to_canonical());
    if (!compose(bwd, fwd).equals(ModMorphism::identity(a)) ||
        !compose(fwd, bwd).equals(ModMorphism::identity(b)))
        throw Error("is_isomorphic: canonical witness failed to verify");
    return {true, std::move(fwd), std::move(bwd)};
}

HomModule::HomModule(FgModule a, FgModule b) : a_(std::move(a)), b_(std::move(b)) {
    const auto& ma = a_.coordinate_moduli();
    const auto& mb = b_.coordinate_moduli();
    for (std::size_t i = 0; i < ma.size(); ++i) {
        if (ma[i] == 1) continue;
        for (std::size_t j = 0; j < mb.size(); ++j) {
            if (mb[j] == 1) continue;
            if (ma[i] >= 2 && mb[j] >= 2) {
                Int g = gcd_int(ma[i], mb[j]);
                if (g == 1) continue;
                pairs_.push_back({i, j, g, mb[j] / g});
            } else if (ma[i] >= 2 && mb[j] == 0) {
                continue;  // Hom(Z/a, Z) = 0
            } else if (ma[i] == 0 && mb[j] >= 2) {
                pairs_.push_back({i, j, mb[j], Int(1)});
            } else {
                pairs_.push_back({i, j, Int(0), Int(1)});
            }
        }
    }
    std::vector<Int> orders;
    for (const auto& p : pairs_)
        if (p.order != 0) orders.push_back(p.order);
    IntMatrix rel(pairs_.size(), orders.size());
    std::size_t col = 0;
    for (std::size_t k = 0; k < pairs_.size(); ++k)
        if (pairs_[k].order != 0) rel.at(k, col++) = pairs_[k].order;
    hom_ = FgModule::present(pairs_.size(), rel);
}

ModMorphism HomModule::evaluate(const ModElement& h) const {
    if (!h.module().same_presentation(hom_)) throw DimensionMismatch("evaluate: element of a different hom-module");
    IntMatrix c(b_.generators(), a_.generators());
    for (std::size_t k = 0; k < pairs_.size(); ++k)
        c.at(pairs_[k].b_pos, pairs_[k].a_pos) += h.coords()[k] * pairs_[k].weight;
    return ModMorphism(a_, b_, b_.from_canonical() * c * a_.to_canonical());
}

ModElement HomModule::coordinates(const ModMorphism& f) const {
    if (!f.domain().same_presentation(a_) || !f.codomain().same_presentation(b_))
        throw DimensionMismatch("coordinates: morphism between different modules");
    IntMatrix c = b_.to_canonical() * f.matrix() * a_.from_canonical();
    std::vector<Int> coords(pairs_.size());
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        const Int& v = c.at(pairs_[k].b_pos, pairs_[k].a_pos);
        if (pairs_[k].weight == 1) {
            coords[k] = v;
        } else {
            if (v % pairs_[k].weight != 0)
                throw Error("hom coordinates: canonical entry not divisible by its weight");
            coords[k] = v / pairs_[k].weight;
        }
    }
    return ModElement(hom_, coords);
}

ModMorphism induced_hom(const ModMorphism& f, const FgModule& e) {
    HomModule hbe(f.codomain(), e);
    HomModule hae(f.domain(), e);
    std::size_t n = hbe.group().generators();
    IntMatrix m(hae.group().generators(), n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Int> unit(n);
        unit[k] = 1;
        ModMorphism phi = hbe.evaluate(ModElement(hbe.group(), unit));
        ModElement col = hae.coordinates(compose(phi, f));
        for (std::size_t i = 0; i < col.coords().size(); ++i) m.at(i, k) = col.coords()[i];
    }
    return ModMorphism(hbe.group(), hae.group(), std::move(m));
}

std::vector<ModElement> enumerate_elements(const FgModule& m) {
    if (!m.is_finite()) throw InfiniteModule("cannot enumerate an infinite module");
    const auto& moduli = m.coordinate_moduli();
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (moduli[i] >= 2) pos.push_back(i);
    std::vector<Int> y(m.generators());
    std::vector<ModElement> out;
    while (true) {
        out.emplace_back(m, m.from_canonical().apply(y));
        std::size_t k = 0;
        for (; k < pos.size(); ++k) {
            y[pos[k]] += 1;
            if (y[pos[k]] < moduli[pos[k]]) break;
            y[pos[k]] = 0;
        }
        if (k == pos.size()) break;
    }
    return out;
}

}  // namespace essx
