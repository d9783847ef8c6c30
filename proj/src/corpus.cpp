#include "essx/corpus.hpp"

#include <algorithm>

namespace essx {
namespace corpus {

long long Rng::range(long long lo, long long hi) {
    return lo + static_cast<long long>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::size_t Rng::index(std::size_t n) { return static_cast<std::size_t>(gen() % n); }

bool Rng::chance(int percent) { return static_cast<int>(gen() % 100) < percent; }

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long long max_abs) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.range(-max_abs, max_abs);
    return m;
}

namespace {

const std::vector<std::vector<Int>>& torsion_pool() {
    static const std::vector<std::vector<Int>> pool = {
        {}, {2}, {3}, {4}, {8}, {6}, {12}, {2, 2}, {2, 4}, {3, 3}, {2, 6}, {9}};
    return pool;
}

}  // namespace

FgModule random_module(Rng& rng, bool allow_free) {
    if (rng.chance(50)) {
        const auto& tors = torsion_pool()[rng.index(torsion_pool().size())];
        std::size_t fr = allow_free ? static_cast<std::size_t>(rng.range(0, 1)) : 0;
        return FgModule::from_invariants(tors, fr);
    }
    std::size_t g = static_cast<std::size_t>(rng.range(1, 3));
    std::size_t k = static_cast<std::size_t>(rng.range(allow_free ? 0 : 1, 4));
    FgModule m = FgModule::present(g, random_matrix(rng, g, k, 6));
    if (!allow_free && !m.is_finite()) {
        std::vector<Int> tors = m.invariant_factors();
        if (tors.empty()) tors.push_back(Int(2 + 2 * rng.range(0, 3)));
        return FgModule::from_invariants(tors, 0);
    }
    return m;
}

FgModule random_finite_module(Rng& rng) { return random_module(rng, false); }

FgModule random_free_module(Rng& rng, std::size_t max_rank) {
    return FgModule::free(static_cast<std::size_t>(rng.range(0, static_cast<long long>(max_rank))));
}

ModMorphism random_morphism(Rng& rng, const FgModule& a, const FgModule& b) {
    HomModule hom(a, b);
    std::vector<Int> coords(hom.group().generators());
    const auto& moduli = hom.group().coordinate_moduli();
    for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i] = moduli[i] == 0 ? Int(rng.range(-3, 3)) : Int(rng.range(0, 11));
    return hom.evaluate(ModElement(hom.group(), coords));
}

std::pair<IntMatrix, IntMatrix> random_unimodular_pair(Rng& rng, std::size_t n) {
    IntMatrix p = IntMatrix::identity(n);
    IntMatrix pi = IntMatrix::identity(n);
    if (n == 0) return {p, pi};
    long long ops = rng.range(static_cast<long long>(n), static_cast<long long>(2 * n + 2));
    for (long long t = 0; t < ops; ++t) {
        std::size_t i = rng.index(n), j = rng.index(n);
        switch (rng.range(0, 2)) {
            case 0:
                if (i != j) {
                    Int q = rng.range(-2, 2);
                    p.row_axpy(i, j, q);   // P <- E P
                    pi.col_axpy(j, i, -q);  // Pi <- Pi E^{-1}
                }
                break;
            case 1:
                p.swap_rows(i, j);
                pi.swap_cols(i, j);
                break;
            default:
                p.negate_row(i);
                for (std::size_t k = 0; k < n; ++k) pi.at(k, i) = -pi.at(k, i);
                break;
        }
    }
    return {p, pi};
}

Obfuscated obfuscate(Rng& rng, const FgModule& m) {
    std::size_t g = m.generators();
    auto [p, pi] = random_unimodular_pair(rng, g);
    IntMatrix rel = p * m.relations();
    if (rel.cols() > 0 && rng.chance(50)) {
        // append a redundant relator
        IntMatrix w = random_matrix(rng, rel.cols(), 1, 2);
        rel = rel.hstack(rel * w);
    }
    FgModule scrambled = FgModule::present(g, rel);
    return {scrambled, ModMorphism(scrambled, m, pi), ModMorphism(m, scrambled, p)};
}

ShortSequence random_exact_sequence(Rng& rng) {
    FgModule b = random_module(rng);
    IntMatrix gens = random_matrix(rng, b.generators(), static_cast<std::size_t>(rng.range(1, 2)), 4);
    Submodule s = submodule_from_generators(b, gens);
    QuotientData q = quotient_by(s);
    return ShortSequence(s.embedding, q.projection);
}

ShortSequence random_eexact_sequence(Rng& rng, bool torsion_free_last) {
    for (int attempt = 0; attempt < 40; ++attempt) {
        FgModule b;
        IntMatrix outer_gens(0, 0);
        if (torsion_free_last) {
            const auto& tors = torsion_pool()[rng.index(torsion_pool().size())];
            std::size_t fr = static_cast<std::size_t>(rng.range(1, 2));
            b = FgModule::from_invariants(tors, fr);
            // the outer submodule contains the whole torsion part plus a
            // subset of the free generators, so the quotient is free
            std::size_t keep = static_cast<std::size_t>(rng.range(0, static_cast<long long>(fr - 1)));
            IntMatrix g(b.generators(), tors.size() + keep);
            for (std::size_t i = 0; i < tors.size(); ++i) g.at(i, i) = 1;
            for (std::size_t j = 0; j < keep; ++j) g.at(tors.size() + j, tors.size() + j) = 1;
            outer_gens = g;
        } else {
            b = random_module(rng);
            outer_gens =
                random_matrix(rng, b.generators(), static_cast<std::size_t>(rng.range(1, 2)), 4);
        }
        Submodule outer = submodule_from_generators(b, outer_gens);
        Int t = Int(rng.range(1, 4));
        Submodule inner = submodule_from_generators(b, outer_gens.scaled(t));
        if (!is_essential_in(inner, outer)) continue;
        QuotientData q = quotient_by(outer);
        if (torsion_free_last && !q.quotient.is_torsion_free()) continue;
        ShortSequence seq(inner.embedding, q.projection);
        if (!is_short_e_exact(seq).ok()) continue;
        return seq;
    }
    // deterministic fallback: an exact split sequence
    FgModule a = torsion_free_last ? FgModule::from_invariants({2}, 0) : FgModule::cyclic(4);
    FgModule c = torsion_free_last ? FgModule::free(1) : FgModule::cyclic(2);
    DirectSum ds = direct_sum({a, c});
    return ShortSequence(ds.inclusions[0], ds.projections[1]);
}

ESplitInstance random_esplit_instance(Rng& rng) {
    FgModule a = random_module(rng);
    FgModule c = random_module(rng);
    DirectSum ds = direct_sum({a, c});
    Obfuscated ob = obfuscate(rng, ds.module);
    static const long long scalars[] = {1, 1, 1, 2, 3, 5};
    Int s = scalars[rng.index(6)];
    ModMorphism f = compose(ob.from_original, ds.inclusions[0]);
    ModMorphism g = compose(ds.projections[1], ob.to_original);
    ModMorphism j = compose(ob.from_original, ds.inclusions[1]).scaled(s);
    return {ShortSequence(std::move(f), std::move(g)), std::move(j), s};
}

namespace {

// identity-block map between direct sums: for each (from_part, to_part)
// pair the corresponding block is scale * I.
IntMatrix block_map(const std::vector<std::size_t>& from_sizes,
                    const std::vector<std::size_t>& to_sizes,
                    const std::vector<std::pair<std::size_t, std::size_t>>& blocks,
                    const Int& scale = Int(1)) {
    std::size_t rows = 0, cols = 0;
    std::vector<std::size_t> ro(to_sizes.size()), co(from_sizes.size());
    for (std::size_t k = 0; k < to_sizes.size(); ++k) {
        ro[k] = rows;
        rows += to_sizes[k];
    }
    for (std::size_t k = 0; k < from_sizes.size(); ++k) {
        co[k] = cols;
        cols += from_sizes[k];
    }
    IntMatrix m(rows, cols);
    for (const auto& [from_part, to_part] : blocks)
        for (std::size_t i = 0; i < from_sizes[from_part]; ++i)
            m.at(ro[to_part] + i, co[from_part] + i) = scale;
    return m;
}

}  // namespace

NineGrid random_nine_grid(Rng& rng, NineMode mode) {
    for (int attempt = 0; attempt < 40; ++attempt) {
        FgModule p, q, r, s;
        if (mode == NineMode::middle) {
            p = random_free_module(rng);
            q = random_free_module(rng);
            r = random_free_module(rng);
            s = random_free_module(rng);
            if (p.generators() + q.generators() + r.generators() + s.generators() == 0) continue;
        } else {
            p = random_module(rng);
            q = random_module(rng);
            r = random_free_module(rng);
            s = random_free_module(rng);
        }
        std::size_t np = p.generators(), nq = q.generators(), nr = r.generators(),
                    ns = s.generators();

        std::array<std::array<FgModule, 3>, 3> m = {{
            {p, direct_sum({p, q}).module, q},
            {direct_sum({p, r}).module, direct_sum({p, q, r, s}).module, direct_sum({q, s}).module},
            {r, direct_sum({r, s}).module, s},
        }};

        Int kh0 = rng.range(1, 3), kh1 = rng.range(1, 3);
        Int kv0 = rng.range(1, 3), kv1 = rng.range(1, 3);

        auto mk = [&](const FgModule& from, const FgModule& to, IntMatrix mat) {
            return ModMorphism(from, to, std::move(mat));
        };
        std::array<std::array<ModMorphism, 2>, 3> rows = {{
            {mk(m[0][0], m[0][1], block_map({np}, {np, nq}, {{0, 0}}, kh0)),
             mk(m[0][1], m[0][2], block_map({np, nq}, {nq}, {{1, 0}}, kh1))},
            {mk(m[1][0], m[1][1], block_map({np, nr}, {np, nq, nr, ns}, {{0, 0}, {1, 2}}, kh0)),
             mk(m[1][1], m[1][2], block_map({np, nq, nr, ns}, {nq, ns}, {{1, 0}, {3, 1}}, kh1))},
            {mk(m[2][0], m[2][1], block_map({nr}, {nr, ns}, {{0, 0}}, kh0)),
             mk(m[2][1], m[2][2], block_map({nr, ns}, {ns}, {{1, 0}}, kh1))},
        }};
        std::array<std::array<ModMorphism, 3>, 2> cols = {{
            {mk(m[0][0], m[1][0], block_map({np}, {np, nr}, {{0, 0}}, kv0)),
             mk(m[0][1], m[1][1], block_map({np, nq}, {np, nq, nr, ns}, {{0, 0}, {1, 1}}, kv0)),
             mk(m[0][2], m[1][2], block_map({nq}, {nq, ns}, {{0, 0}}, kv0))},
            {mk(m[1][0], m[2][0], block_map({np, nr}, {nr}, {{1, 0}}, kv1)),
             mk(m[1][1], m[2][1], block_map({np, nq, nr, ns}, {nr, ns}, {{2, 0}, {3, 1}}, kv1)),
             mk(m[1][2], m[2][2], block_map({nq, ns}, {ns}, {{1, 0}}, kv1))},
        }};

        // scramble some presentations, adjusting the incident maps
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (!rng.chance(40)) continue;
                Obfuscated ob = obfuscate(rng, m[i][j]);
                m[i][j] = ob.module;
                // incoming row map
                if (j > 0) rows[i][j - 1] = compose(ob.from_original, rows[i][j - 1]);
                // outgoing row map
                if (j < 2) rows[i][j] = compose(rows[i][j], ob.to_original);
                // incoming column map
                if (i > 0) cols[i - 1][j] = compose(ob.from_original, cols[i - 1][j]);
                // outgoing column map
                if (i < 2) cols[i][j] = compose(cols[i][j], ob.to_original);
            }

        NineGrid grid = NineGrid::make(m, rows, cols);

        // verify the mode's hypotheses before emitting
        bool ok = true;
        for (int j = 0; j < 3 && ok; ++j)
            ok = is_short_e_exact(ShortSequence(grid.col_maps[0][j], grid.col_maps[1][j])).ok();
        auto row_ok = [&](int i) {
            return is_short_e_exact(ShortSequence(grid.row_maps[i][0], grid.row_maps[i][1])).ok();
        };
        if (mode == NineMode::middle)
            ok = ok && row_ok(0) && row_ok(2) && grid.m[1][0].is_torsion_free() &&
                 grid.m[1][2].is_torsion_free();
        else
            ok = ok && row_ok(0) && row_ok(1) && grid.m[2][0].is_torsion_free() &&
                 grid.m[2][1].is_torsion_free() && grid.m[2][2].is_torsion_free();
        if (ok) return grid;
    }
    throw Error("random_nine_grid: failed to build a conforming grid");
}

namespace {

// one essential embedding step: M into a module with each cyclic factor
// enlarged by a multiplier supported on its own primes
ModMorphism essential_embedding(Rng& rng, const FgModule& m) {
    const auto& factors = m.invariant_factors();
    std::vector<Int> enlarged;
    std::vector<Int> multipliers;
    for (const Int& d : factors) {
        auto primes = factorize(d);
        Int k = 1;
        if (!rng.chance(25)) {
            const auto& pe = primes[rng.index(primes.size())];
            long long e = rng.range(1, 2);
            for (long long t = 0; t < e; ++t) k *= pe.first;
        }
        multipliers.push_back(k);
        enlarged.push_back(d * k);
    }
    FgModule target = FgModule::from_invariants(enlarged, m.free_rank());

    // canonical live coordinates of m, in chain order
    const auto& moduli = m.coordinate_moduli();
    std::vector<std::size_t> torsion_pos, free_pos;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (moduli[i] >= 2) torsion_pos.push_back(i);
        if (moduli[i] == 0) free_pos.push_back(i);
    }
    IntMatrix d(target.generators(), m.generators());
    for (std::size_t t = 0; t < torsion_pos.size(); ++t) d.at(t, torsion_pos[t]) = multipliers[t];
    for (std::size_t j = 0; j < free_pos.size(); ++j)
        d.at(torsion_pos.size() + j, free_pos[j]) = 1;
    return ModMorphism(m, target, d * m.to_canonical());
}

}  // namespace

Resolution essential_embedding_resolution(Rng& rng, const FgModule& m) {
    ModMorphism eta = essential_embedding(rng, m);
    std::vector<FgModule> objects{eta.codomain()};
    std::vector<ModMorphism> maps;
    QuotientData q = cokernel(eta);
    int extra = rng.chance(30) ? 2 : 1;
    for (int step = 0; step < extra && !q.quotient.is_zero_module(); ++step) {
        ModMorphism iota = essential_embedding(rng, q.quotient);
        maps.push_back(compose(iota, q.projection));
        objects.push_back(iota.codomain());
        q = cokernel(maps.back());
    }
    Resolution res{m, eta, CochainComplex::make(0, objects, maps), {}};
    ResolutionCheck check = validate_resolution(res);
    if (!check.ok)
        throw Error("essential_embedding_resolution: construction failed validation: " +
                    check.detail);
    return res;
}

ComparisonInstance random_comparison_instance(Rng& rng) {
    FgModule mprime = random_finite_module(rng);
    FgModule mmod = random_module(rng);
    ModMorphism f = random_morphism(rng, mprime, mmod);
    Resolution bottom = essential_embedding_resolution(rng, mprime);
    Resolution top = essential_embedding_resolution(rng, mmod);
    return {std::move(f), std::move(bottom), std::move(top)};
}

// Split-exact base sequences behind scrambled presentations: for these the
// degreewise direct sum of the end resolutions is always a valid answer, so
// the construction is never asked for the impossible (non-split inputs can
// genuinely admit no horseshoe; see the obstruction tests).
HorseshoeInstance random_horseshoe_instance(Rng& rng) {
    FgModule a = random_finite_module(rng);
    FgModule c = random_finite_module(rng);
    DirectSum ds = direct_sum({a, c});
    Obfuscated ob = obfuscate(rng, ds.module);
    ShortSequence seq(compose(ob.from_original, ds.inclusions[0]),
                      compose(ds.projections[1], ob.to_original));
    return {std::move(seq), essential_embedding_resolution(rng, a),
            essential_embedding_resolution(rng, c)};
}

CyclicResolutionExample z2_resolution_example() {
    FgModule z2 = FgModule::cyclic(2);
    FgModule z8 = FgModule::cyclic(8);
    FgModule z16 = FgModule::cyclic(16);
    ModMorphism f(z2, z8, IntMatrix::from_rows({{Int(4)}}));
    ModMorphism g(z8, z16, IntMatrix::from_rows({{Int(8)}}));
    ShortSequence seq(f, g);
    Resolution res{z2, f, CochainComplex::make(0, {z8, z16}, {g}), {}};
    return {z2, z8, z16, f, g, std::move(seq), std::move(res), Ideal(2)};
}

}  // namespace corpus
}  // namespace essx
