#include "essx/eexact.hpp"

#include <algorithm>
#include <sstream>

namespace essx {

ScalarSet ScalarSet::congruence(const Int& residue, const Int& modulus) {
    if (modulus < 1) throw Error("ScalarSet::congruence requires modulus >= 1");
    if (modulus == 1) return all();
    return ScalarSet(Kind::congruence, mod_floor(residue, modulus), modulus);
}

bool ScalarSet::contains(const Int& r) const {
    switch (kind_) {
        case Kind::empty: return false;
        case Kind::all: return true;
        case Kind::single: return r == residue_;
        case Kind::congruence: return mod_floor(r - residue_, modulus_) == 0;
    }
    return false;
}

ScalarSet ScalarSet::intersect(const ScalarSet& o) const {
    if (kind_ == Kind::empty || o.kind_ == Kind::empty) return empty();
    if (kind_ == Kind::all) return o;
    if (o.kind_ == Kind::all) return *this;
    if (kind_ == Kind::single) return o.contains(residue_) ? *this : empty();
    if (o.kind_ == Kind::single) return contains(o.residue_) ? o : empty();
    // congruence x congruence via CRT
    Int g = gcd_int(modulus_, o.modulus_);
    if (mod_floor(o.residue_ - residue_, g) != 0) return empty();
    Int lcm = modulus_ / g * o.modulus_;
    Int m2g = o.modulus_ / g;
    auto inv = mod_inverse((modulus_ / g) % m2g, m2g);
    if (!inv) throw Error("ScalarSet CRT inverse failed");
    Int t = mod_floor(((o.residue_ - residue_) / g) % m2g * *inv, m2g);
    return congruence(residue_ + modulus_ * t, lcm);
}

std::optional<Int> ScalarSet::nonzero_witness() const {
    switch (kind_) {
        case Kind::empty: return std::nullopt;
        case Kind::all: return Int(1);
        case Kind::single: return residue_ != 0 ? std::optional<Int>(residue_) : std::nullopt;
        case Kind::congruence: {
            std::vector<Int> candidates{residue_, residue_ - modulus_, residue_ + modulus_};
            std::optional<Int> best;
            for (const Int& c : candidates) {
                if (c == 0) continue;
                if (!best || abs_int(c) < abs_int(*best) ||
                    (abs_int(c) == abs_int(*best) && c > *best))
                    best = c;
            }
            return best;
        }
    }
    return std::nullopt;
}

std::string ScalarSet::describe() const {
    switch (kind_) {
        case Kind::empty: return "empty";
        case Kind::all: return "all nonzero integers";
        case Kind::single: return "r = " + residue_.str();
        case Kind::congruence: return "r = " + residue_.str() + " (mod " + modulus_.str() + ")";
    }
    return "";
}

ScalarSet scalar_proportionality(const ModMorphism& phi, const ModMorphism& psi) {
    if (!phi.domain().same_presentation(psi.domain()) ||
        !phi.codomain().same_presentation(psi.codomain()))
        throw DimensionMismatch("scalar_proportionality: morphism shapes differ");
    const FgModule& y = phi.codomain();
    IntMatrix cphi = y.to_canonical() * phi.matrix();
    IntMatrix cpsi = y.to_canonical() * psi.matrix();
    const auto& moduli = y.coordinate_moduli();

    ScalarSet set = ScalarSet::all();
    for (std::size_t j = 0; j < cphi.rows() && !set.is_empty(); ++j) {
        if (moduli[j] == 1) continue;
        for (std::size_t k = 0; k < cphi.cols(); ++k) {
            const Int& c = cphi.at(j, k);
            const Int& d = cpsi.at(j, k);
            if (moduli[j] == 0) {
                // free coordinate: exact equality c = r d
                if (d == 0) {
                    if (c != 0) return ScalarSet::empty();
                } else {
                    if (c % d != 0) return ScalarSet::empty();
                    set = set.intersect(ScalarSet::single(c / d));
                }
            } else {
                // congruence d r = c (mod m); solvable iff gcd(d, m) | c
                const Int& m = moduli[j];
                Int g = gcd_int(d, m);
                if (c % g != 0) return ScalarSet::empty();
                Int m2 = m / g;
                if (m2 == 1) continue;
                auto inv = mod_inverse(mod_floor(d / g, m2), m2);
                if (!inv) throw Error("scalar_proportionality: inverse failed");
                set = set.intersect(ScalarSet::congruence(mod_floor(c / g, m2) * *inv, m2));
            }
            if (set.is_empty()) break;
        }
    }
    return set;
}

CochainComplex CochainComplex::make(long long lo, std::vector<FgModule> objects,
                                    std::vector<ModMorphism> maps) {
    if (objects.empty()) {
        if (!maps.empty()) throw DimensionMismatch("complex: maps without objects");
    } else if (maps.size() + 1 != objects.size()) {
        throw DimensionMismatch("complex: need one map per adjacent object pair");
    }
    for (std::size_t k = 0; k < maps.size(); ++k) {
        if (!maps[k].domain().same_presentation(objects[k]) ||
            !maps[k].codomain().same_presentation(objects[k + 1]))
            throw DimensionMismatch("complex: map endpoints do not match objects");
    }
    CochainComplex x;
    x.lo = lo;
    x.objects = std::move(objects);
    x.maps = std::move(maps);
    return x;
}

FgModule CochainComplex::object_at(long long i) const {
    if (i < lo || i > hi()) return FgModule::zero();
    return objects[static_cast<std::size_t>(i - lo)];
}

ModMorphism CochainComplex::map_at(long long i) const {
    long long k = i - lo;
    if (k >= 0 && k < static_cast<long long>(maps.size())) return maps[static_cast<std::size_t>(k)];
    return ModMorphism::zero(object_at(i), object_at(i + 1));
}

bool CochainComplex::same_shape(const CochainComplex& o) const {
    if (lo != o.lo || objects.size() != o.objects.size()) return false;
    for (std::size_t k = 0; k < objects.size(); ++k)
        if (!objects[k].same_presentation(o.objects[k])) return false;
    return true;
}

ShortSequence::ShortSequence(ModMorphism f_, ModMorphism g_) : f(std::move(f_)), g(std::move(g_)) {
    if (!f.codomain().same_presentation(g.domain()))
        throw DimensionMismatch("short sequence: codomain(f) != domain(g)");
}

std::string ShortEExactReport::failed() const {
    if (!f_monic) return "Ker(f) != 0";
    if (!im_f_contained) return "Im(f) not contained in Ker(g)";
    if (!im_f_essential) return "Im(f) not essential in Ker(g)";
    if (!im_g_essential) return "Im(g) not essential in C";
    return "";
}

ShortEExactReport is_short_e_exact(const ShortSequence& s) {
    ShortEExactReport rep;
    rep.f_monic = kernel(s.f).source.is_zero_module();
    Submodule im_f = image(s.f);
    Submodule ker_g = kernel(s.g);
    auto restricted = restrict_submodule(im_f, ker_g);
    rep.im_f_contained = restricted.has_value();
    rep.im_f_essential = restricted && is_essential(*restricted);
    rep.im_g_essential = is_essential(image(s.g));
    return rep;
}

EExactAtReport is_e_exact_at(const CochainComplex& x, long long i) {
    if (i < x.lo || i > x.hi()) throw Error("is_e_exact_at: index out of range");
    EExactAtReport rep;
    Submodule im = image(x.map_at(i - 1));
    Submodule ker = kernel(x.map_at(i));
    auto restricted = restrict_submodule(im, ker);
    rep.contained = restricted.has_value();
    rep.essential = restricted && is_essential(*restricted);
    return rep;
}

namespace {

ScalarCommuteResult commute_result(const ModMorphism& phi, const ModMorphism& psi,
                                   const std::string& relation) {
    ScalarCommuteResult res;
    res.admissible = scalar_proportionality(phi, psi);
    if (auto r = res.admissible.nonzero_witness()) res.witness = ScalarWitness{*r, relation};
    return res;
}

}  // namespace

ScalarCommuteResult solve_scalar_commute(const TriangleShape& shape) {
    return commute_result(compose(shape.g, shape.i), shape.f, "g.i = r.f");
}

ScalarCommuteResult solve_scalar_commute(const SquareShape& shape) {
    return commute_result(compose(shape.q, shape.f), compose(shape.g, shape.t), "q.f = r.(g.t)");
}

Int default_scalar_cap(const Int& exponent_hint) {
    Int cap = 4 * exponent_hint;
    return cap < 64 ? Int(64) : cap;
}

std::vector<Int> scalar_ladder(const Int& exponent_hint, const Int& cap) {
    Int bound = cap > 0 ? cap : default_scalar_cap(exponent_hint);
    std::vector<Int> out;
    auto push = [&](const Int& v) {
        if (v < 1 || v > bound) return;
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    if (exponent_hint >= 2) {
        for (const Int& d : divisors_of(exponent_hint)) push(d);
        for (int k = 2; k <= 4; ++k) push(k * exponent_hint);
    }
    for (Int r = 1; r <= bound; ++r) push(r);
    return out;
}

ESplitReport check_e_split(const ShortSequence& s, const ModMorphism& j, const Int& split_scalar,
                           const Int& r_cap) {
    if (!j.domain().same_presentation(s.last()) || !j.codomain().same_presentation(s.middle()))
        throw DimensionMismatch("check_e_split: section j must map C into B");
    if (split_scalar == 0) throw NotESplit("split scalar must be nonzero");

    ESplitReport rep;
    rep.split_scalar = split_scalar;
    rep.sequence = is_short_e_exact(s);
    if (!rep.sequence.ok())
        throw NotESplit("sequence is not short e-exact: " + rep.sequence.failed());
    if (!compose(s.g, j).equals(ModMorphism::scalar(s.last(), split_scalar)))
        throw NotESplit("p.j differs from the claimed scalar multiple of the identity");

    DirectSum outer = direct_sum({s.first(), s.last()});
    rep.outer_sum_factors = outer.module.invariant_factors();
    rep.outer_sum_rank = outer.module.free_rank();

    const FgModule& b = s.middle();
    for (const Int& r : scalar_ladder(b.exponent(), r_cap)) {
        rep.bound_tried = r > rep.bound_tried ? r : rep.bound_tried;
        Submodule rb = image(ModMorphism::scalar(b, r));
        if (is_isomorphic(rb.source, outer.module).isomorphic) {
            rep.witness_r = r;
            rep.scaled_middle_factors = rb.source.invariant_factors();
            rep.scaled_middle_rank = rb.source.free_rank();
            return rep;
        }
    }
    return rep;
}

NineGrid NineGrid::make(std::array<std::array<FgModule, 3>, 3> modules,
                        std::array<std::array<ModMorphism, 2>, 3> rows,
                        std::array<std::array<ModMorphism, 3>, 2> cols) {
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 2; ++k)
            if (!rows[i][k].domain().same_presentation(modules[i][k]) ||
                !rows[i][k].codomain().same_presentation(modules[i][k + 1]))
                throw DimensionMismatch("nine grid: row map endpoints");
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 3; ++j)
            if (!cols[k][j].domain().same_presentation(modules[k][j]) ||
                !cols[k][j].codomain().same_presentation(modules[k + 1][j]))
                throw DimensionMismatch("nine grid: column map endpoints");
    return NineGrid{std::move(modules), std::move(rows), std::move(cols)};
}

NineLemmaReport verify_nine_lemma(const NineGrid& grid, NineMode mode) {
    NineLemmaReport rep;
    auto require = [&](const std::string& name, bool ok) {
        rep.hypotheses.emplace_back(name, ok);
        if (!ok) throw HypothesisFailed(name);
    };

    for (int j = 0; j < 3; ++j) {
        ShortSequence col(grid.col_maps[0][j], grid.col_maps[1][j]);
        require("column " + std::to_string(j) + " e-exact", is_short_e_exact(col).ok());
    }
    auto row_seq = [&](int i) { return ShortSequence(grid.row_maps[i][0], grid.row_maps[i][1]); };
    if (mode == NineMode::middle) {
        require("row 0 e-exact", is_short_e_exact(row_seq(0)).ok());
        require("row 2 e-exact", is_short_e_exact(row_seq(2)).ok());
        require("torsion-free B", grid.m[1][0].is_torsion_free());
        require("torsion-free B''", grid.m[1][2].is_torsion_free());
    } else {
        require("row 0 e-exact", is_short_e_exact(row_seq(0)).ok());
        require("row 1 e-exact", is_short_e_exact(row_seq(1)).ok());
        require("torsion-free C", grid.m[2][0].is_torsion_free());
        require("torsion-free C'", grid.m[2][1].is_torsion_free());
        require("torsion-free C''", grid.m[2][2].is_torsion_free());
    }
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            SquareShape sq{grid.row_maps[r][c], grid.col_maps[r][c], grid.row_maps[r + 1][c],
                           grid.col_maps[r][c + 1]};
            auto res = solve_scalar_commute(sq);
            require("square (" + std::to_string(r) + "," + std::to_string(c) + ") e-commutes",
                    res.witness.has_value());
            rep.square_scalars.push_back(res.witness ? res.witness->r : Int(0));
        }

    rep.conclusion = is_short_e_exact(row_seq(mode == NineMode::middle ? 1 : 2));
    return rep;
}

ChainMap ChainMap::make(CochainComplex from, CochainComplex to, std::vector<ModMorphism> components) {
    if (from.lo != to.lo || from.objects.size() != to.objects.size())
        throw DimensionMismatch("chain map: complexes have different shapes");
    if (components.size() != from.objects.size())
        throw DimensionMismatch("chain map: one component per degree required");
    for (std::size_t k = 0; k < components.size(); ++k)
        if (!components[k].domain().same_presentation(from.objects[k]) ||
            !components[k].codomain().same_presentation(to.objects[k]))
            throw DimensionMismatch("chain map: component endpoints");
    for (std::size_t k = 0; k + 1 < components.size(); ++k)
        if (!compose(components[k + 1], from.maps[k]).equals(compose(to.maps[k], components[k])))
            throw Error("chain map: squares do not commute exactly at degree " + std::to_string(k));
    ChainMap cm;
    cm.from = std::move(from);
    cm.to = std::move(to);
    cm.components = std::move(components);
    return cm;
}

ChainMap ChainMap::add(const ChainMap& o) const {
    if (!from.same_shape(o.from) || !to.same_shape(o.to))
        throw DimensionMismatch("chain map sum: shapes differ");
    std::vector<ModMorphism> comps;
    for (std::size_t k = 0; k < components.size(); ++k) comps.push_back(components[k] + o.components[k]);
    return ChainMap::make(from, to, std::move(comps));
}

}  // namespace essx
