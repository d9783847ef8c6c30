#include "essx/einjective.hpp"

#include <algorithm>
#include <sstream>

namespace essx {

namespace {

struct CongruenceSolution {
    bool ok = false;
    IntMatrix x;         // e.generators() x x_cols
    IntMatrix kernel_x;  // homogeneous variations, one reshaped X per column
};

// Find X with X * c = d modulo the relation span of e, columnwise.
// c : x_cols x k, d : e.generators() x k. One Smith form yields both the
// particular solution and the homogeneous lattice.
CongruenceSolution solve_matrix_congruence(const IntMatrix& c, const IntMatrix& d, const FgModule& e,
                                           std::size_t x_cols) {
    const std::size_t ge = e.generators();
    const std::size_t k = c.cols();
    const std::size_t re = e.relations().cols();
    if (d.rows() != ge || d.cols() != k || c.rows() != x_cols)
        throw DimensionMismatch("solve_matrix_congruence shape mismatch");

    IntMatrix big(ge * k, ge * x_cols + re * k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t t = 0; t < x_cols; ++t) {
            const Int& coef = c.at(t, j);
            if (coef == 0) continue;
            for (std::size_t i = 0; i < ge; ++i) big.at(j * ge + i, t * ge + i) = coef;
        }
        for (std::size_t i = 0; i < ge; ++i)
            for (std::size_t rr = 0; rr < re; ++rr)
                big.at(j * ge + i, ge * x_cols + j * re + rr) = -e.relations().at(i, rr);
    }
    IntMatrix rhs(ge * k, 1);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < ge; ++i) rhs.at(j * ge + i, 0) = d.at(i, j);

    SmithForm f = smith_normal_form(big);
    const std::size_t rows = big.rows(), cols = big.cols();
    const std::size_t bound = std::min(rows, cols);
    IntMatrix cvec = f.u * rhs;
    IntMatrix y(cols, 1);
    CongruenceSolution out;
    for (std::size_t i = 0; i < rows; ++i) {
        Int diag = i < bound ? f.s.at(i, i) : Int(0);
        if (diag != 0) {
            if (cvec.at(i, 0) % diag != 0) return out;
            y.at(i, 0) = cvec.at(i, 0) / diag;
        } else if (cvec.at(i, 0) != 0) {
            return out;
        }
    }
    IntMatrix solution = f.v * y;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < cols; ++j)
        if (j >= bound || f.s.at(j, j) == 0) free_cols.push_back(j);

    out.ok = true;
    out.x = IntMatrix(ge, x_cols);
    for (std::size_t t = 0; t < x_cols; ++t)
        for (std::size_t i = 0; i < ge; ++i) out.x.at(i, t) = solution.at(t * ge + i, 0);
    out.kernel_x = f.v.columns(free_cols).top_rows(ge * x_cols);
    return out;
}

IntMatrix reshape_x(const IntMatrix& flat_col, std::size_t ge, std::size_t x_cols, std::size_t col) {
    IntMatrix x(ge, x_cols);
    for (std::size_t t = 0; t < x_cols; ++t)
        for (std::size_t i = 0; i < ge; ++i) x.at(i, t) = flat_col.at(t * ge + i, col);
    return x;
}

// Greedy size reduction of x against the lattice spanned by the kernel
// columns; keeps solutions small and hits the sparse representative when
// one exists (for split inputs the zero block, in particular).
void reduce_against_kernel(IntMatrix& x, const IntMatrix& kernel, std::size_t ge,
                           std::size_t x_cols) {
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < kernel.cols(); ++j) {
            IntMatrix k = reshape_x(kernel, ge, x_cols, j);
            Int norm = 0, dot = 0;
            for (std::size_t i = 0; i < ge; ++i)
                for (std::size_t t = 0; t < x_cols; ++t) {
                    norm += k.at(i, t) * k.at(i, t);
                    dot += x.at(i, t) * k.at(i, t);
                }
            if (norm == 0) continue;
            // nearest integer to dot / norm
            Int t2 = 2 * dot + norm;
            Int two_norm = 2 * norm;
            Int q;
            if (t2 >= 0) {
                q = t2 / two_norm;
            } else {
                Int num = -t2 + two_norm - 1;
                q = -(num / two_norm);
            }
            if (q != 0) x = x - k.scaled(q);
        }
    }
}

}  // namespace

ExtendResult essential_extend(const ExtensionProblem& p, const Int& r_cap, std::mt19937_64* variant) {
    if (!p.f1.domain().same_presentation(p.f2.domain()))
        throw DimensionMismatch("essential_extend: f1 and f2 must share a domain");
    if (!kernel(p.f1).source.is_zero_module())
        throw NotMonic("essential_extend: f1 has nonzero kernel");

    const FgModule& a2 = p.f1.codomain();
    const FgModule& e = p.f2.codomain();

    // Conditions on F3: F3 * Rel(A2) = 0 and F3 * F1 = r * F2, both modulo
    // the relation span of E.
    IntMatrix c = a2.relations().hstack(p.f1.matrix());
    IntMatrix zero_part(e.generators(), a2.relations().cols());

    Int hint = lcm_int(a2.exponent(), e.exponent());
    hint = lcm_int(hint, cokernel(p.f1).quotient.exponent());

    ExtendResult res;
    for (const Int& r : scalar_ladder(hint, r_cap)) {
        res.bound_tried = r > res.bound_tried ? r : res.bound_tried;
        IntMatrix d = zero_part.hstack(p.f2.matrix().scaled(r));
        CongruenceSolution sol = solve_matrix_congruence(c, d, e, a2.generators());
        if (!sol.ok) continue;
        IntMatrix x = sol.x;
        reduce_against_kernel(x, sol.kernel_x, e.generators(), a2.generators());
        if (variant && sol.kernel_x.cols() > 0) {
            for (std::size_t j = 0; j < sol.kernel_x.cols(); ++j) {
                Int coef = Int((*variant)() % 5) - 2;
                if (coef == 0) continue;
                IntMatrix delta = reshape_x(sol.kernel_x, e.generators(), a2.generators(), j);
                x = x + delta.scaled(coef);
            }
        }
        ModMorphism f3(a2, e, x);
        if (!compose(f3, p.f1).equals(p.f2.scaled(r)))
            throw Error("essential_extend: solver produced a non-replaying witness");
        res.extension = std::move(f3);
        res.r = r;
        return res;
    }
    return res;
}

BaerExtension baer_extend(const Int& n, const ModElement& value) {
    if (n == 0) throw PreconditionFailed("baer_extend: the ideal must be nonzero");
    const FgModule& e = value.module();
    Int an = abs_int(n);

    // n * g(1) = r * value in E, searched over 1 <= r < |n|
    IntMatrix lhs = IntMatrix::identity(e.generators()).scaled(n).hstack(e.relations());
    for (Int r = 1; r < an; ++r) {
        LinearSolve sol = solve_linear(lhs, IntMatrix::column(value.scaled(r).coords()));
        if (!sol.solvable) continue;
        IntMatrix g1 = sol.solution.top_rows(e.generators());
        ModMorphism g(FgModule::free(1), e, g1);
        return {ScalarWitness{r, "g.i = r.f on the ideal (" + n.str() + ")"}, std::move(g), false};
    }
    // canonical witness: g(1) = sign(n) * f(n), r = |n|
    std::vector<Int> g1 = value.coords();
    if (n < 0)
        for (Int& x : g1) x = -x;
    ModMorphism g(FgModule::free(1), e, IntMatrix::column(g1));
    return {ScalarWitness{an, "g.i = r.f on the ideal (" + n.str() + ")"}, std::move(g), true};
}

namespace {

const std::vector<std::vector<Int>>& probe_pool() {
    static const std::vector<std::vector<Int>> pool = {
        {2}, {4}, {8}, {3}, {6}, {2, 4}, {2, 2}, {12}, {2, 6}, {9}};
    return pool;
}

}  // namespace

EInjectivityEvidence probe_e_injective(const FgModule& e, long long ideal_bound,
                                       long long mono_samples, std::uint64_t seed) {
    EInjectivityEvidence ev;
    ev.module_description = e.describe();
    ev.note =
        "every ideal probe admits the canonical witness g(1) = f(n), r = n; "
        "probe evidence is not a proof of e-injectivity";

    std::vector<ModElement> targets;
    const auto& moduli = e.coordinate_moduli();
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (moduli[i] == 1) continue;
        std::vector<Int> unit(e.generators());
        unit[i] = 1;
        targets.emplace_back(e, e.from_canonical().apply(unit));
    }
    for (long long n = 1; n <= ideal_bound; ++n) {
        for (std::size_t t = 0; t < targets.size(); ++t) {
            BaerExtension b = baer_extend(Int(n), targets[t]);
            ProbeRecord rec;
            rec.kind = "ideal";
            rec.detail = "n = " + std::to_string(n) + ", f(n) = generator " + std::to_string(t) +
                         (b.canonical ? " (canonical witness)" : "");
            rec.succeeded = true;
            rec.r = b.witness.r;
            ev.probes.push_back(std::move(rec));
        }
    }

    std::mt19937_64 rng(seed);
    for (long long k = 0; k < mono_samples; ++k) {
        const auto& inv = probe_pool()[rng() % probe_pool().size()];
        FgModule a2 = FgModule::from_invariants(inv, rng() % 2);
        IntMatrix gens(a2.generators(), 1 + rng() % 2);
        for (std::size_t i = 0; i < gens.rows(); ++i)
            for (std::size_t j = 0; j < gens.cols(); ++j) gens.at(i, j) = Int(rng() % 9) - 4;
        Submodule s = submodule_from_generators(a2, gens);
        if (s.source.is_zero_module()) continue;
        HomModule hom(s.source, e);
        std::vector<Int> coords(hom.group().generators());
        for (Int& cc : coords) cc = Int(rng() % 7) - 3;
        ModMorphism f2 = hom.evaluate(ModElement(hom.group(), coords));
        ExtendResult ext = essential_extend({s.embedding, f2});
        ProbeRecord rec;
        rec.kind = "monic";
        rec.detail = "A1 = " + s.source.describe() + " into A2 = " + a2.describe();
        rec.succeeded = ext.found();
        rec.r = ext.r;
        if (!rec.succeeded) {
            rec.detail += " (ladder exhausted at " + ext.bound_tried.str() + ")";
            ev.all_succeeded = false;
        }
        ev.probes.push_back(std::move(rec));
    }
    return ev;
}

RetractionResult retraction_split(const ShortSequence& s, const Int& r_cap) {
    const FgModule& e = s.first();
    if (!e.is_torsion_free())
        throw PreconditionFailed("retraction_split: the first module must be torsion-free");
    ShortEExactReport rep = is_short_e_exact(s);
    if (!rep.ok())
        throw PreconditionFailed("retraction_split: sequence is not short e-exact: " + rep.failed());
    ExtendResult ext = essential_extend({s.f, ModMorphism::identity(e)}, r_cap);
    RetractionResult out;
    out.bound_tried = ext.bound_tried;
    if (ext.found()) {
        out.retraction = ext.extension;
        out.r = ext.r;
    }
    return out;
}

Resolution trivial_resolution(const FgModule& e) {
    return Resolution{e, ModMorphism::identity(e),
                      CochainComplex::make(0, {e}, {}), {}};
}

ResolutionCheck validate_resolution(const Resolution& res) {
    if (res.complex.lo != 0) return {false, -1, "complex must start at degree 0"};
    if (res.complex.objects.empty()) return {false, -1, "resolution has no terms"};
    if (!res.augmentation.domain().same_presentation(res.target) ||
        !res.augmentation.codomain().same_presentation(res.complex.objects[0]))
        return {false, -1, "augmentation endpoints do not match"};
    if (!kernel(res.augmentation).source.is_zero_module())
        return {false, -1, "augmentation is not monic"};

    // position 0: Im(augmentation) essential in Ker(d^0)
    {
        Submodule im = image(res.augmentation);
        Submodule ker = kernel(res.complex.map_at(0));
        auto restricted = restrict_submodule(im, ker);
        if (!restricted) return {false, 0, "Im(augmentation) not contained in Ker(d^0)"};
        if (!is_essential(*restricted))
            return {false, 0, "Im(augmentation) not essential in Ker(d^0)"};
    }
    for (long long i = 1; i <= res.complex.hi(); ++i) {
        EExactAtReport at = is_e_exact_at(res.complex, i);
        if (!at.contained) return {false, i, "image not contained in kernel"};
        if (!at.essential) return {false, i, "image not essential in kernel"};
    }
    return {true, 0, ""};
}

ChainLift comparison_lift(const ModMorphism& f, const Resolution& bottom, const Resolution& top,
                          const Int& r_cap, std::mt19937_64* variant) {
    if (!f.domain().same_presentation(bottom.target) || !f.codomain().same_presentation(top.target))
        throw DimensionMismatch("comparison_lift: f endpoints must match the resolution targets");
    ResolutionCheck bottom_check = validate_resolution(bottom);
    if (!bottom_check.ok)
        throw PreconditionFailed("comparison_lift: bottom row is not an e-exact resolution: " +
                                 bottom_check.detail);

    ChainLift lift;
    lift.bottom = bottom.complex;
    lift.top = top.complex;
    long long last = std::max(bottom.complex.hi(), top.complex.hi()) + 1;

    // base step: extend (top.aug . f) along the monic bottom augmentation
    ExtendResult base = essential_extend({bottom.augmentation, compose(top.augmentation, f)},
                                         r_cap, variant);
    lift.bound_tried = base.bound_tried;
    if (!base.found()) {
        lift.failed_stage = 0;
        return lift;
    }
    lift.maps.push_back(*base.extension);
    lift.base_scalar = base.r;

    for (long long n = 0; n < last; ++n) {
        const FgModule xn1 = bottom.complex.object_at(n + 1);
        const FgModule en1 = top.complex.object_at(n + 1);
        ModMorphism dxn = bottom.complex.map_at(n);
        ModMorphism den = top.complex.map_at(n);
        ModMorphism target = compose(den, lift.maps.back());  // d^n . f^n : X^n -> E^{n+1}

        if (en1.is_zero_module()) {
            lift.maps.push_back(ModMorphism::zero(xn1, en1));
            lift.square_scalars.push_back(1);
            continue;
        }
        if (xn1.is_zero_module()) {
            // square demands 0 = r . (d^n . f^n)
            ScalarSet set = scalar_proportionality(ModMorphism::zero(dxn.domain(), en1), target);
            auto r = set.nonzero_witness();
            if (!r) {
                lift.failed_stage = n + 1;
                return lift;
            }
            lift.maps.push_back(ModMorphism::zero(xn1, en1));
            lift.square_scalars.push_back(*r);
            continue;
        }

        // factor d^n . f^n through the coimage X^n / Ker(d'^n), prescaling
        // by the exponent of its restriction to the kernel
        Submodule k = kernel(dxn);
        QuotientData q = quotient_by(k);
        ModMorphism coim(q.quotient, xn1, dxn.matrix());
        IntMatrix on_kernel = target.matrix() * k.embedding.matrix();
        Int t = 1;
        bool infinite = false;
        for (std::size_t j = 0; j < on_kernel.cols() && !infinite; ++j) {
            ModElement w(en1, on_kernel.col_vector(j));
            auto ord = w.order();
            if (!ord)
                infinite = true;
            else
                t = lcm_int(t, *ord);
        }
        if (infinite) {
            lift.failed_stage = n + 1;
            return lift;
        }
        ModMorphism induced(q.quotient, en1, target.matrix().scaled(t));
        ExtendResult step = essential_extend({coim, induced}, r_cap, variant);
        if (step.bound_tried > lift.bound_tried) lift.bound_tried = step.bound_tried;
        if (!step.found()) {
            lift.failed_stage = n + 1;
            return lift;
        }
        Int scalar = step.r * t;
        if (!compose(*step.extension, dxn).equals(target.scaled(scalar)))
            throw Error("comparison_lift: stage identity failed to replay");
        lift.maps.push_back(*step.extension);
        lift.square_scalars.push_back(scalar);
    }
    lift.complete = true;
    return lift;
}

HomotopyResult homotopy_witness(const ChainLift& f, const ChainLift& h, const Int& r_cap) {
    if (!f.bottom.same_shape(h.bottom) || !f.top.same_shape(h.top))
        throw DimensionMismatch("homotopy_witness: lifts live over different complexes");
    if (!f.complete || !h.complete)
        throw PreconditionFailed("homotopy_witness: both lifts must be complete");

    const CochainComplex& x = f.bottom;
    const CochainComplex& e = f.top;
    long long top_deg = std::max(x.hi(), e.hi());

    // unknowns: r, then vec(s^k : X^k -> E^{k-1}) for k = 1..top_deg, then
    // one slack block per identity degree; the system is homogeneous.
    std::vector<std::size_t> offset;  // offset of vec(s^k) for k >= 1
    std::size_t ncols = 1;
    for (long long kdeg = 1; kdeg <= top_deg; ++kdeg) {
        offset.push_back(ncols);
        ncols += x.object_at(kdeg).generators() * e.object_at(kdeg - 1).generators();
    }

    std::size_t nrows = 0;
    std::vector<std::size_t> row_offset;
    for (long long n = 0; n <= top_deg; ++n) {
        row_offset.push_back(nrows);
        nrows += e.object_at(n).generators() * x.object_at(n).generators();
    }
    std::size_t slack_start = ncols;
    for (long long n = 0; n <= top_deg; ++n)
        ncols += e.object_at(n).relations().cols() * x.object_at(n).generators();

    Int hint = 1;
    for (const auto& obj : e.objects) hint = lcm_int(hint, obj.exponent());

    std::vector<Int> s_ladder = scalar_ladder(hint, r_cap);
    if (s_ladder.size() > 12) s_ladder.resize(12);

    HomotopyResult out;
    for (const Int& s_val : s_ladder) {
        out.bound_tried = s_val > out.bound_tried ? s_val : out.bound_tried;
        IntMatrix big(nrows, ncols);
        std::size_t slack_col = slack_start;
        for (long long n = 0; n <= top_deg; ++n) {
            std::size_t ge = e.object_at(n).generators();
            std::size_t gx = x.object_at(n).generators();
            std::size_t base = row_offset[static_cast<std::size_t>(n)];
            // r * (H_n - F_n)
            IntMatrix hf = (n < static_cast<long long>(h.maps.size()) ? h.maps[n].matrix()
                                                                      : IntMatrix(ge, gx)) -
                           (n < static_cast<long long>(f.maps.size()) ? f.maps[n].matrix()
                                                                      : IntMatrix(ge, gx));
            for (std::size_t col = 0; col < gx; ++col)
                for (std::size_t i = 0; i < ge; ++i) big.at(base + col * ge + i, 0) = hf.at(i, col);
            // - s^{n+1} * D'_n  (unknown s^{n+1}: X^{n+1} -> E^n)
            if (n + 1 <= top_deg) {
                std::size_t gx1 = x.object_at(n + 1).generators();
                IntMatrix dx = x.map_at(n).matrix();  // gx1 x gx
                std::size_t off = offset[static_cast<std::size_t>(n)];
                for (std::size_t col = 0; col < gx; ++col)
                    for (std::size_t t = 0; t < gx1; ++t) {
                        const Int& coef = dx.at(t, col);
                        if (coef == 0) continue;
                        for (std::size_t i = 0; i < ge; ++i)
                            big.at(base + col * ge + i, off + t * ge + i) -= coef;
                    }
            }
            // - s * D_{n-1} * s^n  (unknown s^n: X^n -> E^{n-1})
            if (n >= 1) {
                std::size_t ge0 = e.object_at(n - 1).generators();
                IntMatrix de = e.map_at(n - 1).matrix();  // ge x ge0
                std::size_t off = offset[static_cast<std::size_t>(n - 1)];
                for (std::size_t col = 0; col < gx; ++col)
                    for (std::size_t t = 0; t < ge0; ++t)
                        for (std::size_t i = 0; i < ge; ++i) {
                            const Int& coef = de.at(i, t);
                            if (coef == 0) continue;
                            big.at(base + col * ge + i, off + col * ge0 + t) -= s_val * coef;
                        }
            }
            // slack: relation span of E^n per condition column
            const IntMatrix& rel = e.object_at(n).relations();
            for (std::size_t col = 0; col < gx; ++col) {
                for (std::size_t rr = 0; rr < rel.cols(); ++rr)
                    for (std::size_t i = 0; i < ge; ++i)
                        big.at(base + col * ge + i, slack_col + rr) = -rel.at(i, rr);
                slack_col += rel.cols();
            }
        }

        IntMatrix kb = kernel_basis(big);
        // combination of kernel vectors with nonzero, minimal positive r
        std::vector<std::size_t> with_r;
        for (std::size_t j = 0; j < kb.cols(); ++j)
            if (kb.at(0, j) != 0) with_r.push_back(j);
        if (with_r.empty()) continue;
        std::vector<Int> combo(kb.rows());
        Int g = 0;
        for (std::size_t j : with_r) {
            if (g == 0) {
                g = kb.at(0, j);
                for (std::size_t i = 0; i < kb.rows(); ++i) combo[i] = kb.at(i, j);
            } else {
                Egcd eg = egcd(g, kb.at(0, j));
                for (std::size_t i = 0; i < kb.rows(); ++i)
                    combo[i] = eg.x * combo[i] + eg.y * kb.at(i, j);
                g = eg.g;
            }
        }
        if (combo[0] < 0)
            for (Int& v : combo) v = -v;

        // extract the maps and replay the identity at every degree
        std::vector<ModMorphism> maps;
        for (long long kdeg = 1; kdeg <= top_deg; ++kdeg) {
            std::size_t gx1 = x.object_at(kdeg).generators();
            std::size_t ge0 = e.object_at(kdeg - 1).generators();
            IntMatrix m(ge0, gx1);
            std::size_t off = offset[static_cast<std::size_t>(kdeg - 1)];
            for (std::size_t t = 0; t < gx1; ++t)
                for (std::size_t i = 0; i < ge0; ++i) m.at(i, t) = combo[off + t * ge0 + i];
            maps.emplace_back(x.object_at(kdeg), e.object_at(kdeg - 1), std::move(m));
        }
        Int r_val = combo[0];
        bool replay = true;
        for (long long n = 0; n <= top_deg && replay; ++n) {
            ModMorphism fh = (n < static_cast<long long>(h.maps.size())
                                  ? h.maps[n]
                                  : ModMorphism::zero(x.object_at(n), e.object_at(n))) -
                             (n < static_cast<long long>(f.maps.size())
                                  ? f.maps[n]
                                  : ModMorphism::zero(x.object_at(n), e.object_at(n)));
            ModMorphism lhs = fh.scaled(r_val);
            ModMorphism term1 = n + 1 <= top_deg
                                    ? compose(maps[static_cast<std::size_t>(n)], x.map_at(n))
                                    : ModMorphism::zero(x.object_at(n), e.object_at(n));
            ModMorphism term2 =
                n >= 1 ? compose(e.map_at(n - 1), maps[static_cast<std::size_t>(n - 1)]).scaled(s_val)
                       : ModMorphism::zero(x.object_at(n), e.object_at(n));
            replay = lhs.equals(term1 + term2);
        }
        if (!replay) throw Error("homotopy_witness: solver produced a non-replaying witness");
        out.found = true;
        out.r = r_val;
        out.s = s_val;
        out.maps = std::move(maps);
        return out;
    }
    return out;
}

namespace {

// assemble the middle resolution from one particular chain lift
HorseshoeResult assemble_horseshoe(const ShortSequence& s, const Resolution& left,
                                   const Resolution& right, ChainLift lift) {
    HorseshoeResult out;
    out.lift = std::move(lift);
    if (!out.lift.complete) {
        out.failure = "comparison lift failed at stage " + std::to_string(out.lift.failed_stage);
        return out;
    }

    // rescale the lift maps so every comparison square commutes exactly
    std::size_t nmaps = out.lift.maps.size();
    std::vector<Int> suffix(nmaps, Int(1));
    for (std::size_t k = nmaps - 1; k-- > 0;)
        suffix[k] = suffix[k + 1] * out.lift.square_scalars[k];
    std::vector<IntMatrix> g;  // g[k] = suffix[k] * f^k
    for (std::size_t k = 0; k < nmaps; ++k) g.push_back(out.lift.maps[k].matrix().scaled(suffix[k]));

    long long top = std::max(left.complex.hi(), right.complex.hi());
    std::vector<DirectSum> sums;
    for (long long n = 0; n <= top + 1; ++n)
        sums.push_back(direct_sum({left.complex.object_at(n), right.complex.object_at(n)}));

    // augmentation m |-> (-g^0(m), aug''(p(m)))
    IntMatrix aug_top = -g[0];
    IntMatrix aug_bot = compose(right.augmentation, s.g).matrix();
    ModMorphism augmentation(s.middle(), sums[0].module, aug_top.vstack(aug_bot));

    std::vector<FgModule> objects;
    std::vector<ModMorphism> maps;
    for (long long n = 0; n <= top; ++n) {
        objects.push_back(sums[static_cast<std::size_t>(n)].module);
        std::size_t gl = left.complex.object_at(n).generators();
        std::size_t gr = right.complex.object_at(n).generators();
        std::size_t gl1 = left.complex.object_at(n + 1).generators();
        std::size_t gr1 = right.complex.object_at(n + 1).generators();
        IntMatrix m(gl1 + gr1, gl + gr);
        IntMatrix dl = left.complex.map_at(n).matrix();
        IntMatrix dr = right.complex.map_at(n).matrix();
        // lift map from I''^n is f^{n+1} (bottom degree n+1)
        const IntMatrix& gmap = g[static_cast<std::size_t>(n + 1)];
        Int sign = (n % 2 == 0) ? 1 : -1;
        for (std::size_t i = 0; i < gl1; ++i)
            for (std::size_t j = 0; j < gl; ++j) m.at(i, j) = dl.at(i, j);
        for (std::size_t i = 0; i < gl1; ++i)
            for (std::size_t j = 0; j < gr; ++j) m.at(i, gl + j) = sign * gmap.at(i, j);
        for (std::size_t i = 0; i < gr1; ++i)
            for (std::size_t j = 0; j < gr; ++j) m.at(gl1 + i, gl + j) = dr.at(i, j);
        if (n + 1 <= top) {
            maps.emplace_back(sums[static_cast<std::size_t>(n)].module,
                              sums[static_cast<std::size_t>(n + 1)].module, std::move(m));
        }
        out.inclusions.push_back(sums[static_cast<std::size_t>(n)].inclusions[0]);
        out.projections.push_back(sums[static_cast<std::size_t>(n)].projections[1]);
        out.sections.push_back(sums[static_cast<std::size_t>(n)].inclusions[1]);
    }

    out.middle = Resolution{s.middle(), augmentation, CochainComplex::make(0, objects, maps), {}};
    out.validation = validate_resolution(out.middle);
    out.ok = out.validation.ok;
    if (!out.ok)
        out.failure = "assembled resolution fails e-exactness at position " +
                      std::to_string(out.validation.failing_position) + ": " + out.validation.detail;
    return out;
}

}  // namespace

HorseshoeResult horseshoe(const ShortSequence& s, const Resolution& left, const Resolution& right,
                          const Int& r_cap) {
    HorseshoeResult out;
    ShortEExactReport seq = is_short_e_exact(s);
    if (!seq.ok()) {
        out.failure = "input sequence is not short e-exact: " + seq.failed();
        return out;
    }
    if (!left.target.same_presentation(s.first()) || !right.target.same_presentation(s.last())) {
        out.failure = "resolution targets do not match the sequence ends";
        return out;
    }
    ResolutionCheck lcheck = validate_resolution(left);
    if (!lcheck.ok) {
        out.failure = "left resolution invalid: " + lcheck.detail;
        return out;
    }
    ResolutionCheck rcheck = validate_resolution(right);
    if (!rcheck.ok) {
        out.failure = "right resolution invalid: " + rcheck.detail;
        return out;
    }

    // bottom row 0 -> M' -> M -> I''^0 -> I''^1 -> ... is e-exact; lift
    // the identity of M' against the left resolution.
    std::vector<FgModule> row_objects{s.middle()};
    std::vector<ModMorphism> row_maps{compose(right.augmentation, s.g)};
    for (std::size_t k = 0; k < right.complex.objects.size(); ++k) {
        row_objects.push_back(right.complex.objects[k]);
        if (k + 1 < right.complex.objects.size()) row_maps.push_back(right.complex.maps[k]);
    }
    Resolution bottom_row{s.first(), s.f, CochainComplex::make(0, row_objects, row_maps), {}};
    ResolutionCheck row_check = validate_resolution(bottom_row);
    if (!row_check.ok) {
        out.failure = "augmented middle row is not e-exact: " + row_check.detail;
        return out;
    }

    // the lift maps are existential choices; search the solution family
    ModMorphism id = ModMorphism::identity(s.first());
    out = assemble_horseshoe(s, left, right, comparison_lift(id, bottom_row, left, r_cap));
    for (std::uint64_t attempt = 1; attempt <= 6 && !out.ok && out.lift.complete; ++attempt) {
        std::mt19937_64 variant(0x9e3779b97f4a7c15ull * attempt);
        HorseshoeResult retry = assemble_horseshoe(
            s, left, right, comparison_lift(id, bottom_row, left, r_cap, &variant));
        if (retry.ok || !out.lift.complete) out = std::move(retry);
        if (out.ok) break;
    }
    return out;
}

}  // namespace essx
