#include "essx/cohomology.hpp"

#include <algorithm>

namespace essx {

Submodule gamma(const Ideal& a, const FgModule& m) {
    if (a.is_zero()) throw ZeroIdeal("the torsion functor rejects the zero ideal");
    const auto& moduli = m.coordinate_moduli();
    std::vector<std::vector<Int>> cols;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (moduli[i] < 2) continue;
        // largest divisor of d supported on the primes of the ideal generator
        Int e = moduli[i] / coprime_part(moduli[i], a.generator());
        if (e == 1) continue;
        std::vector<Int> unit(m.generators());
        unit[i] = moduli[i] / e;
        cols.push_back(m.from_canonical().apply(unit));
    }
    IntMatrix gens(m.generators(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < m.generators(); ++i) gens.at(i, j) = cols[j][i];
    return submodule_from_generators(m, gens);
}

ModMorphism gamma_map(const Ideal& a, const ModMorphism& f) {
    Submodule gm = gamma(a, f.domain());
    Submodule gn = gamma(a, f.codomain());
    auto pre = preimage_columns(gn, f.matrix() * gm.embedding.matrix());
    if (!pre) throw Error("gamma_map: generator image escaped the torsion submodule");
    return ModMorphism(gm.source, gn.source, *pre);
}

GammaComplex gamma_complex(const Ideal& a, const CochainComplex& x) {
    GammaComplex out;
    for (const FgModule& obj : x.objects) out.torsions.push_back(gamma(a, obj));
    std::vector<FgModule> objects;
    std::vector<ModMorphism> maps;
    for (const Submodule& t : out.torsions) objects.push_back(t.source);
    for (std::size_t k = 0; k + 1 < out.torsions.size(); ++k) {
        auto pre = preimage_columns(out.torsions[k + 1],
                                    x.maps[k].matrix() * out.torsions[k].embedding.matrix());
        if (!pre) throw Error("gamma_complex: generator image escaped the torsion submodule");
        maps.emplace_back(out.torsions[k].source, out.torsions[k + 1].source, *pre);
    }
    out.complex = CochainComplex::make(x.lo, std::move(objects), std::move(maps));
    return out;
}

CohomologyAt cohomology_at(const CochainComplex& x, long long i) {
    ModMorphism d_out = x.map_at(i);
    ModMorphism d_in = x.map_at(i - 1);
    if (!compose(d_out, d_in).is_zero_morphism()) throw NotAComplexAt(i);
    Submodule ker = kernel(d_out);
    Submodule im = image(d_in);
    auto pre = preimage_columns(ker, im.embedding.matrix());
    if (!pre) throw Error("cohomology_at: image not contained in kernel despite zero composite");
    FgModule h = FgModule::present(ker.source.generators(), pre->hstack(ker.source.relations()));
    ModMorphism proj(ker.source, h, IntMatrix::identity(ker.source.generators()));
    return {std::move(h), std::move(ker), std::move(im), std::move(proj)};
}

ModMorphism induced_on_cohomology(const ChainMap& phi, long long i) {
    CohomologyAt hx = cohomology_at(phi.from, i);
    CohomologyAt hy = cohomology_at(phi.to, i);
    if (i < phi.from.lo || i > phi.from.hi()) {
        return ModMorphism::zero(hx.h, hy.h);
    }
    const ModMorphism& comp = phi.components[static_cast<std::size_t>(i - phi.from.lo)];
    auto pre = preimage_columns(hy.kernel_part, comp.matrix() * hx.kernel_part.embedding.matrix());
    if (!pre) throw Error("induced_on_cohomology: kernel image escaped the target kernel");
    return ModMorphism(hx.h, hy.h, *pre);
}

ECohomologyReport e_cohomology(const Ideal& a, const FgModule& m, const Resolution& res,
                               long long lo, long long hi, long long probe_ideal_bound,
                               long long probe_mono_samples, std::uint64_t seed) {
    if (a.is_zero()) throw ZeroIdeal("e_cohomology rejects the zero ideal");
    if (!res.target.same_presentation(m))
        throw DimensionMismatch("e_cohomology: resolution does not resolve the given module");
    ResolutionCheck check = validate_resolution(res);
    if (!check.ok) throw NotEExactResolution(check.failing_position, check.detail);

    ECohomologyReport rep;
    rep.ideal_generator = a.generator();
    rep.module_description = m.describe();
    rep.note =
        "the computed modules depend on the supplied resolution; no canonical "
        "resolution is chosen and none is implied";
    if (a.is_unit())
        rep.warnings.push_back("unit ideal: the torsion functor vanishes identically");

    for (std::size_t k = 0; k < res.complex.objects.size(); ++k)
        rep.term_evidence.push_back(probe_e_injective(res.complex.objects[k], probe_ideal_bound,
                                                      probe_mono_samples,
                                                      seed + static_cast<std::uint64_t>(k)));

    GammaComplex gc = gamma_complex(a, res.complex);
    for (long long i = lo; i <= hi; ++i) {
        DegreeEntry entry;
        entry.degree = i;
        if (i < 0) {
            entry.h = FgModule::zero();
        } else {
            CohomologyAt at = cohomology_at(gc.complex, i);
            entry.h = at.h;
            entry.kernel_factors = at.kernel_part.source.invariant_factors();
            entry.kernel_rank = at.kernel_part.source.free_rank();
            entry.image_factors = at.image_part.source.invariant_factors();
            entry.image_rank = at.image_part.source.free_rank();
        }
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

GammaEExactReport gamma_e_exactness_check(const Ideal& a, const ShortSequence& s) {
    ShortEExactReport pre = is_short_e_exact(s);
    if (!pre.ok())
        throw PreconditionFailed("gamma_e_exactness_check: input is not short e-exact: " +
                                 pre.failed());
    GammaEExactReport rep;
    rep.n_torsion_free = s.last().is_torsion_free();
    ModMorphism gf = gamma_map(a, s.f);
    ModMorphism gg = gamma_map(a, s.g);

    rep.left_monic = kernel(gf).source.is_zero_module();
    Submodule im_f = image(gf);
    Submodule ker_g = kernel(gg);
    auto restricted = restrict_submodule(im_f, ker_g);
    rep.left_contained = restricted.has_value();
    rep.left_essential = restricted && is_essential(*restricted);
    rep.image_essential = is_essential(image(gg));
    return rep;
}

H0Report h0_vs_gamma(const Ideal& a, const FgModule& m, const Resolution& res) {
    if (!m.is_torsion_free())
        throw PreconditionFailed("h0_vs_gamma applies to torsion-free modules only");
    ECohomologyReport rep = e_cohomology(a, m, res, 0, 0, 2, 0, 0);
    H0Report out;
    out.h0 = rep.entries.front().h;
    out.gamma_of_m = gamma(a, m).source;
    out.isomorphic = is_isomorphic(out.h0, out.gamma_of_m).isomorphic;
    out.scalar = 1;
    return out;
}

LongSequenceReport long_sequence_verify(const Ideal& a, const ShortSequence& s,
                                        const Resolution& left, const Resolution& right,
                                        long long max_degree, const Int& r_cap) {
    if (!s.last().is_torsion_free())
        throw PreconditionFailed("long_sequence_verify requires a torsion-free last module");

    LongSequenceReport rep;
    rep.horseshoe_data = horseshoe(s, left, right, r_cap);
    if (!rep.horseshoe_data.ok) {
        rep.failure = "horseshoe failed: " + rep.horseshoe_data.failure;
        return rep;
    }
    const Resolution& middle = rep.horseshoe_data.middle;

    // degreewise columns after applying the torsion functor must stay exact
    long long top = middle.complex.hi();
    for (long long n = 0; n <= top; ++n) {
        ModMorphism gi = gamma_map(a, rep.horseshoe_data.inclusions[static_cast<std::size_t>(n)]);
        ModMorphism gp = gamma_map(a, rep.horseshoe_data.projections[static_cast<std::size_t>(n)]);
        if (!kernel(gi).source.is_zero_module()) {
            rep.failure = "gamma column not exact (inclusion not monic) at degree " +
                          std::to_string(n);
            return rep;
        }
        Submodule im = image(gi);
        Submodule ker = kernel(gp);
        if (!restrict_submodule(im, ker) || !restrict_submodule(ker, im)) {
            rep.failure = "gamma column not exact at degree " + std::to_string(n);
            return rep;
        }
    }

    GammaComplex gl = gamma_complex(a, left.complex);
    GammaComplex gm = gamma_complex(a, middle.complex);
    GammaComplex gn = gamma_complex(a, right.complex);

    // padded gamma complexes of equal length simplify the bookkeeping
    auto pad = [&](const GammaComplex& g) {
        std::vector<FgModule> objects;
        std::vector<ModMorphism> maps;
        for (long long n = 0; n <= top; ++n) objects.push_back(g.complex.object_at(n));
        for (long long n = 0; n < top; ++n) maps.push_back(g.complex.map_at(n));
        return CochainComplex::make(0, std::move(objects), std::move(maps));
    };
    CochainComplex cl = pad(gl), cm = pad(gm), cn = pad(gn);

    auto lift_chain = [&](const std::vector<ModMorphism>& column, const CochainComplex& from,
                          const CochainComplex& to) {
        std::vector<ModMorphism> comps;
        for (long long n = 0; n <= top; ++n)
            comps.push_back(gamma_map(a, column[static_cast<std::size_t>(n)]));
        return ChainMap::make(from, to, std::move(comps));
    };
    ChainMap chain_incl = lift_chain(rep.horseshoe_data.inclusions, cl, cm);
    ChainMap chain_proj = lift_chain(rep.horseshoe_data.projections, cm, cn);

    std::vector<CohomologyAt> hl, hm, hn;
    for (long long i = 0; i <= max_degree; ++i) {
        hl.push_back(cohomology_at(cl, i));
        hm.push_back(cohomology_at(cm, i));
        hn.push_back(cohomology_at(cn, i));
    }

    std::vector<FgModule> objects;
    std::vector<ModMorphism> maps;
    for (long long i = 0; i <= max_degree; ++i) {
        objects.push_back(hl[static_cast<std::size_t>(i)].h);
        objects.push_back(hm[static_cast<std::size_t>(i)].h);
        objects.push_back(hn[static_cast<std::size_t>(i)].h);
        maps.push_back(induced_on_cohomology(chain_incl, i));
        maps.push_back(induced_on_cohomology(chain_proj, i));
        if (i == max_degree) break;

        // connecting map by the zig-zag over the split column
        const CohomologyAt& src = hn[static_cast<std::size_t>(i)];
        const CohomologyAt& dst = hl[static_cast<std::size_t>(i + 1)];
        if (i >= top) {
            ModMorphism connecting = ModMorphism::zero(src.h, dst.h);
            rep.connecting.push_back(connecting);
            maps.push_back(std::move(connecting));
            continue;
        }
        ModMorphism gsec =
            gamma_map(a, rep.horseshoe_data.sections[static_cast<std::size_t>(i)]);
        ModMorphism gincl_next =
            gamma_map(a, rep.horseshoe_data.inclusions[static_cast<std::size_t>(i + 1)]);
        std::size_t k = src.kernel_part.source.generators();
        IntMatrix sigma(dst.h.generators(), k);
        for (std::size_t col = 0; col < k; ++col) {
            std::vector<Int> z = src.kernel_part.embedding.matrix().col_vector(col);
            std::vector<Int> lifted = gsec.matrix().apply(z);
            std::vector<Int> w = cm.map_at(i).matrix().apply(lifted);
            // pull back along the gamma inclusion of degree i+1
            LinearSolve pull = solve_linear(
                gincl_next.matrix().hstack(cm.object_at(i + 1).relations()), IntMatrix::column(w));
            if (!pull.solvable)
                throw ZigZagObstruction(i, "lifted boundary is not in the image of the inclusion");
            std::vector<Int> v(cl.object_at(i + 1).generators());
            for (std::size_t t = 0; t < v.size(); ++t) v[t] = pull.solution.at(t, 0);
            auto in_kernel = preimage_in(dst.kernel_part, ModElement(cl.object_at(i + 1), v));
            if (!in_kernel)
                throw ZigZagObstruction(i, "pulled-back element is not a cocycle");
            for (std::size_t t = 0; t < dst.h.generators(); ++t)
                sigma.at(t, col) = in_kernel->coords()[t];
        }
        ModMorphism connecting(src.h, dst.h, sigma);
        rep.connecting.push_back(connecting);
        maps.push_back(std::move(connecting));
    }

    rep.sequence = CochainComplex::make(0, objects, maps);
    rep.first_map_monic = kernel(rep.sequence.maps[0]).source.is_zero_module();
    bool all_ok = rep.first_map_monic;
    for (long long pos = 1; pos < static_cast<long long>(rep.sequence.objects.size()) - 1; ++pos) {
        EExactAtReport at = is_e_exact_at(rep.sequence, pos);
        LongSequencePosition p;
        p.index = pos;
        long long which = pos % 3;
        long long deg = pos / 3;
        p.label = (which == 0 ? "H^" + std::to_string(deg) + "(L)"
                              : which == 1 ? "H^" + std::to_string(deg) + "(M)"
                                           : "H^" + std::to_string(deg) + "(N)");
        p.contained = at.contained;
        p.essential = at.essential;
        all_ok = all_ok && at.ok();
        rep.positions.push_back(std::move(p));
    }
    rep.ok = all_ok;
    if (!rep.ok && rep.failure.empty()) rep.failure = "long sequence failed e-exactness";
    return rep;
}

}  // namespace essx
