#include "essx/cohomology.hpp"
#include "essx/corpus.hpp"

#include <doctest.h>

using namespace essx;

TEST_SUITE("cohomology") {

TEST_CASE("torsion submodules of cyclic and free modules") {
    Ideal two(2);
    CHECK(gamma(two, FgModule::cyclic(8)).source.invariant_factors() == std::vector<Int>{8});
    CHECK(gamma(two, FgModule::cyclic(12)).source.invariant_factors() == std::vector<Int>{4});
    CHECK(gamma(two, FgModule::free(1)).source.is_zero_module());
    CHECK(gamma(Ideal(6), FgModule::cyclic(12)).source.invariant_factors() == std::vector<Int>{12});
    CHECK(gamma(Ideal(1), FgModule::cyclic(12)).source.is_zero_module());
    CHECK_THROWS_AS(gamma(Ideal(0), FgModule::cyclic(4)), ZeroIdeal);
}

TEST_CASE("gamma on maps restricts and corestricts") {
    Ideal two(2);
    auto ex = corpus::z2_resolution_example();
    ModMorphism gf = gamma_map(two, ex.g);
    // all terms are 2-torsion, so the restriction is the whole map
    Submodule gm = gamma(two, ex.z8);
    Submodule gn = gamma(two, ex.z16);
    CHECK(compose(gn.embedding, gf).equals(compose(ex.g, gm.embedding)));

    // torsion-free codomain: the restriction is zero
    ModMorphism into_free(FgModule::cyclic(2), FgModule::free(1), IntMatrix(1, 1));
    CHECK(gamma_map(two, into_free).is_zero_morphism());

    // times 3 on Z/12 restricted to the 2-part
    FgModule z12 = FgModule::cyclic(12);
    ModMorphism times3 = ModMorphism::scalar(z12, 3);
    ModMorphism restricted = gamma_map(two, times3);
    Submodule g12 = gamma(two, z12);
    CHECK(compose(g12.embedding, restricted).equals(compose(times3, g12.embedding)));
}

TEST_CASE("gamma functoriality") {
    Ideal two(2);
    corpus::Rng rng(101);
    for (int iter = 0; iter < 30; ++iter) {
        FgModule a = corpus::random_module(rng);
        FgModule b = corpus::random_module(rng);
        FgModule c = corpus::random_module(rng);
        ModMorphism f = corpus::random_morphism(rng, a, b);
        ModMorphism g = corpus::random_morphism(rng, b, c);
        CHECK(gamma_map(two, ModMorphism::identity(a))
                  .equals(ModMorphism::identity(gamma(two, a).source)));
        CHECK(gamma_map(two, compose(g, f)).equals(compose(gamma_map(two, g), gamma_map(two, f))));
    }
}

TEST_CASE("gamma idempotence") {
    Ideal two(2);
    for (const FgModule& m :
         {FgModule::cyclic(8), FgModule::cyclic(12), FgModule::from_invariants({2, 12}, 1)}) {
        Submodule g = gamma(two, m);
        Submodule again = gamma(two, g.source);
        CHECK(again.is_whole());
    }
}

TEST_CASE("cohomology of explicit complexes") {
    FgModule z = FgModule::free(1);
    SUBCASE("exact position vanishes") {
        CochainComplex x = CochainComplex::make(0, {z, z}, {ModMorphism::identity(z)});
        CHECK(cohomology_at(x, 0).h.is_zero_module());
        CHECK(cohomology_at(x, 1).h.is_zero_module());
    }
    SUBCASE("zero differentials reproduce the objects") {
        CochainComplex x = CochainComplex::make(0, {z, z}, {ModMorphism::zero(z, z)});
        CHECK(cohomology_at(x, 0).h.free_rank() == 1);
        CHECK(cohomology_at(x, 1).h.free_rank() == 1);
    }
    SUBCASE("top degree of the cyclic example") {
        auto ex = corpus::z2_resolution_example();
        CochainComplex x = CochainComplex::make(0, {ex.z8, ex.z16}, {ex.g});
        CHECK(cohomology_at(x, 1).h.invariant_factors() == std::vector<Int>{8});
        CHECK(cohomology_at(x, 0).h.invariant_factors() == std::vector<Int>{4});
    }
    SUBCASE("non-complexes are rejected") {
        CochainComplex x =
            CochainComplex::make(0, {z, z, z}, {ModMorphism::identity(z), ModMorphism::identity(z)});
        CHECK_THROWS_AS(cohomology_at(x, 1), NotAComplexAt);
    }
}

TEST_CASE("e-cohomology of the worked example") {
    auto ex = corpus::z2_resolution_example();
    ECohomologyReport rep = e_cohomology(ex.ideal, ex.z2, ex.res, -2, 2);
    REQUIRE(rep.entries.size() == 5);
    CHECK(rep.entries[0].h.is_zero_module());  // degree -2
    CHECK(rep.entries[1].h.is_zero_module());  // degree -1
    CHECK(rep.entries[2].h.invariant_factors() == std::vector<Int>{4});
    CHECK(rep.entries[3].h.invariant_factors() == std::vector<Int>{8});
    CHECK(rep.entries[4].h.is_zero_module());
    for (const auto& ev : rep.term_evidence) CHECK(ev.all_succeeded);
}

TEST_CASE("e-cohomology vanishes on trivial resolutions in positive degrees") {
    corpus::Rng rng(111);
    Ideal two(2);
    for (int iter = 0; iter < 20; ++iter) {
        FgModule e = corpus::random_module(rng);
        ECohomologyReport rep = e_cohomology(two, e, trivial_resolution(e), -3, 3, 2, 0);
        for (const auto& entry : rep.entries) {
            if (entry.degree < 0) CHECK(entry.h.is_zero_module());
            if (entry.degree >= 1) CHECK(entry.h.is_zero_module());
        }
        // degree zero of the trivial resolution is the torsion submodule
        CHECK(is_isomorphic(rep.entries[3].h, gamma(two, e).source).isomorphic);
    }
}

TEST_CASE("e-cohomology validates its resolution input") {
    auto ex = corpus::z2_resolution_example();
    Resolution broken{ex.z2, ModMorphism::zero(ex.z2, ex.z8),
                      CochainComplex::make(0, {ex.z8, ex.z16}, {ex.g}), {}};
    CHECK_THROWS_AS(e_cohomology(ex.ideal, ex.z2, broken, 0, 1), NotEExactResolution);
    CHECK_THROWS_AS(e_cohomology(Ideal(0), ex.z2, ex.res, 0, 1), ZeroIdeal);
}

TEST_CASE("additivity of the induced maps on cohomology") {
    auto ex = corpus::z2_resolution_example();
    Ideal two(2);
    GammaComplex gc = gamma_complex(two, ex.res.complex);
    corpus::Rng rng(121);
    for (int iter = 0; iter < 40; ++iter) {
        // chain endomorphisms (x a, x b) commute with n |-> 8n iff a = b mod 2
        long long a = rng.range(0, 15);
        long long b = a + 2 * rng.range(-3, 3);
        auto endo = [&](long long s0, long long s1) {
            return ChainMap::make(gc.complex, gc.complex,
                                  {ModMorphism::scalar(gc.complex.objects[0], s0),
                                   ModMorphism::scalar(gc.complex.objects[1], s1)});
        };
        ChainMap phi = endo(a, b);
        long long c = rng.range(0, 15);
        long long d = c + 2 * rng.range(-3, 3);
        ChainMap psi = endo(c, d);
        for (long long deg : {0, 1}) {
            ModMorphism lhs = induced_on_cohomology(phi.add(psi), deg);
            ModMorphism rhs = induced_on_cohomology(phi, deg) + induced_on_cohomology(psi, deg);
            CHECK(lhs.equals(rhs));
        }
    }
}

TEST_CASE("gamma is left e-exact, and fully e-exact against torsion-free quotients") {
    Ideal two(2);
    auto ex = corpus::z2_resolution_example();
    GammaEExactReport rep = gamma_e_exactness_check(two, ex.seq);
    CHECK(rep.left_ok());
    CHECK(rep.image_essential);  // holds here as well
    CHECK_FALSE(rep.n_torsion_free);

    // torsion-free everywhere: everything vanishes
    FgModule z = FgModule::free(1);
    DirectSum ds = direct_sum({z, z});
    GammaEExactReport rep2 =
        gamma_e_exactness_check(two, ShortSequence(ds.inclusions[0], ds.projections[1]));
    CHECK(rep2.left_ok());
    CHECK(rep2.full_ok());
    CHECK(rep2.n_torsion_free);

    corpus::Rng rng(131);
    for (int iter = 0; iter < 15; ++iter) {
        Ideal a(rng.range(2, 6));
        ShortSequence s = corpus::random_eexact_sequence(rng, false);
        GammaEExactReport r = gamma_e_exactness_check(a, s);
        REQUIRE(r.left_ok());
    }
    for (int iter = 0; iter < 15; ++iter) {
        Ideal a(rng.range(2, 6));
        ShortSequence s = corpus::random_eexact_sequence(rng, true);
        GammaEExactReport r = gamma_e_exactness_check(a, s);
        REQUIRE(r.left_ok());
        REQUIRE(r.n_torsion_free);
        REQUIRE(r.full_ok());
    }
}

TEST_CASE("degree zero against the torsion functor on torsion-free modules") {
    Ideal two(2);
    for (const FgModule& m : {FgModule::free(1), FgModule::free(2)}) {
        H0Report rep = h0_vs_gamma(two, m, trivial_resolution(m));
        CHECK(rep.isomorphic);
        CHECK(rep.h0.is_zero_module());
        CHECK(rep.gamma_of_m.is_zero_module());
        CHECK(rep.scalar == 1);
    }
    CHECK_THROWS_AS(h0_vs_gamma(two, FgModule::cyclic(2), trivial_resolution(FgModule::cyclic(2))),
                    PreconditionFailed);
}

TEST_CASE("long sequence on a split pair") {
    Ideal two(2);
    FgModule l = FgModule::cyclic(4);
    FgModule n = FgModule::free(1);
    DirectSum ds = direct_sum({l, n});
    ShortSequence s(ds.inclusions[0], ds.projections[1]);
    corpus::Rng rng(141);
    Resolution left = corpus::essential_embedding_resolution(rng, l);
    Resolution right = trivial_resolution(n);
    LongSequenceReport rep = long_sequence_verify(two, s, left, right, 2);
    CHECK(rep.ok);
    CHECK(rep.first_map_monic);
    for (const auto& pos : rep.positions) {
        CHECK(pos.contained);
        CHECK(pos.essential);
    }
}

TEST_CASE("long sequence on torsion-free data is vacuous and e-exact") {
    Ideal two(2);
    FgModule z = FgModule::free(1);
    DirectSum ds = direct_sum({z, z});
    ShortSequence s(ds.inclusions[0], ds.projections[1]);
    LongSequenceReport rep =
        long_sequence_verify(two, s, trivial_resolution(z), trivial_resolution(z), 2);
    CHECK(rep.ok);
    // every cohomology module in sight vanishes
    for (const FgModule& h : rep.sequence.objects) CHECK(h.is_zero_module());
}

TEST_CASE("long sequence randomized instances with torsion-free quotient") {
    corpus::Rng rng(151);
    int done = 0;
    for (int iter = 0; iter < 12 && done < 5; ++iter) {
        Ideal a(rng.range(2, 4));
        FgModule l = corpus::random_finite_module(rng);
        FgModule n = corpus::random_free_module(rng, 1);
        DirectSum ds = direct_sum({l, n});
        corpus::Obfuscated ob = corpus::obfuscate(rng, ds.module);
        ShortSequence s(compose(ob.from_original, ds.inclusions[0]),
                        compose(ds.projections[1], ob.to_original));
        Resolution left = corpus::essential_embedding_resolution(rng, l);
        Resolution right = trivial_resolution(n);
        LongSequenceReport rep = long_sequence_verify(a, s, left, right, 2);
        REQUIRE(rep.ok);
        ++done;
    }
    CHECK(done == 5);
}

TEST_CASE("long sequence gates on a torsion quotient") {
    Ideal two(2);
    auto ex = corpus::z2_resolution_example();
    CHECK_THROWS_AS(
        long_sequence_verify(two, ex.seq, trivial_resolution(ex.z2), trivial_resolution(ex.z16), 1),
        PreconditionFailed);
}

}  // TEST_SUITE
