#include "essx/corpus.hpp"
#include "essx/einjective.hpp"

#include <doctest.h>

using namespace essx;

TEST_SUITE("einjective") {

TEST_CASE("baer extension worked cases") {
    FgModule z = FgModule::free(1);
    // f(2) = 3 in Z: g(1) = 3, r = 2
    BaerExtension b1 = baer_extend(2, ModElement(z, {3}));
    CHECK(b1.witness.r == 2);
    CHECK(b1.g.matrix().at(0, 0) == 3);

    // restriction of times m extends with r = 1
    BaerExtension b2 = baer_extend(5, ModElement(z, {35}));
    CHECK(b2.witness.r == 1);
    CHECK(b2.g.matrix().at(0, 0) == 7);

    // E = Z/8, n = 2, f(2) = 1: solvable at r = 2
    FgModule z8 = FgModule::cyclic(8);
    BaerExtension b3 = baer_extend(2, ModElement(z8, {1}));
    CHECK(b3.witness.r == 2);

    CHECK_THROWS_AS(baer_extend(0, ModElement(z, {1})), PreconditionFailed);
}

TEST_CASE("canonical baer witness identity holds universally") {
    corpus::Rng rng(71);
    for (int iter = 0; iter < 500; ++iter) {
        FgModule e = corpus::random_module(rng);
        if (e.generators() == 0) continue;
        Int n = rng.range(1, 12) * (rng.chance(50) ? 1 : -1);
        std::vector<Int> coords(e.generators());
        for (Int& c : coords) c = rng.range(-6, 6);
        ModElement value(e, coords);
        BaerExtension b = baer_extend(n, value);
        // replay: n * g(1) = r * value
        ModElement lhs = ModElement(e, b.g.matrix().col_vector(0)).scaled(n);
        ModElement rhs = value.scaled(b.witness.r);
        REQUIRE(lhs == rhs);
        REQUIRE(b.witness.r != 0);
        REQUIRE(b.witness.r <= abs_int(n));
    }
}

TEST_CASE("essential extension worked cases") {
    FgModule z = FgModule::free(1);
    SUBCASE("identity inclusion") {
        FgModule z6 = FgModule::cyclic(6);
        ModMorphism f2 = ModMorphism::scalar(z6, 5);
        ExtendResult r = essential_extend({ModMorphism::identity(z6), f2});
        REQUIRE(r.found());
        CHECK(r.r == 1);
        CHECK(r.extension->equals(f2));
    }
    SUBCASE("inclusion 2Z in Z against f(2) = 3") {
        ModMorphism f1 = ModMorphism::scalar(z, 2);
        ModMorphism f2 = ModMorphism::scalar(z, 3);
        ExtendResult r = essential_extend({f1, f2});
        REQUIRE(r.found());
        CHECK(r.r == 2);
        CHECK(r.extension->matrix().at(0, 0) == 3);
    }
    SUBCASE("Z/2 into Z/8 against the identity of Z/2") {
        FgModule z2 = FgModule::cyclic(2);
        FgModule z8 = FgModule::cyclic(8);
        ModMorphism f1(z2, z8, IntMatrix::from_rows({{4}}));
        ExtendResult r = essential_extend({f1, ModMorphism::identity(z2)});
        REQUIRE(r.found());
        CHECK(r.r == 2);
        CHECK(compose(*r.extension, f1).equals(ModMorphism::identity(z2).scaled(r.r)));
    }
    SUBCASE("non-monic first map is rejected") {
        FgModule z2 = FgModule::cyclic(2);
        CHECK_THROWS_AS(essential_extend({ModMorphism::zero(z2, z2), ModMorphism::identity(z2)}),
                        NotMonic);
    }
}

TEST_CASE("essential extension agrees with exhaustive search on cyclic instances") {
    corpus::Rng rng(77);
    for (int iter = 0; iter < 20; ++iter) {
        long long na = 2 + 2 * rng.range(0, 5);
        long long ne = 2 + rng.range(0, 14);
        FgModule a2 = FgModule::cyclic(na);
        FgModule e = FgModule::cyclic(ne);
        IntMatrix gens(1, 1);
        gens.at(0, 0) = rng.range(1, na - 1);
        Submodule s = submodule_from_generators(a2, gens);
        if (s.source.is_zero_module()) continue;
        HomModule hom(s.source, e);
        if (hom.group().is_zero_module()) continue;
        auto elems = enumerate_elements(hom.group());
        ModMorphism f2 = hom.evaluate(elems[rng.index(elems.size())]);

        ExtendResult solved = essential_extend({s.embedding, f2});

        bool exhaustive_found = false;
        Int cap = default_scalar_cap(lcm_int(a2.exponent(), e.exponent()));
        for (const ModElement& h : enumerate_elements(HomModule(a2, e).group())) {
            ModMorphism f3 = HomModule(a2, e).evaluate(h);
            for (Int r = 1; r <= cap && !exhaustive_found; ++r)
                if (compose(f3, s.embedding).equals(f2.scaled(r))) exhaustive_found = true;
            if (exhaustive_found) break;
        }
        REQUIRE(solved.found() == exhaustive_found);
        if (solved.found())
            REQUIRE(compose(*solved.extension, s.embedding).equals(f2.scaled(solved.r)));
    }
}

TEST_CASE("probes always succeed on the ring and on cyclic modules") {
    EInjectivityEvidence ev1 = probe_e_injective(FgModule::free(1), 10, 4, 5);
    CHECK(ev1.all_succeeded);
    CHECK_FALSE(ev1.probes.empty());

    EInjectivityEvidence ev2 = probe_e_injective(FgModule::cyclic(8), 16, 4, 5);
    CHECK(ev2.all_succeeded);

    EInjectivityEvidence ev3 = probe_e_injective(FgModule::zero(), 10, 0, 5);
    CHECK(ev3.all_succeeded);
    CHECK(ev3.probes.empty());

    // direct sums probe as well as their components
    EInjectivityEvidence ev4 =
        probe_e_injective(direct_sum({FgModule::cyclic(4), FgModule::free(1)}).module, 8, 4, 5);
    CHECK(ev4.all_succeeded);
}

TEST_CASE("retraction of a torsion-free first module") {
    FgModule z = FgModule::free(1);
    FgModule z2 = FgModule::cyclic(2);
    ShortSequence s(ModMorphism::scalar(z, 2), ModMorphism(z, z2, IntMatrix::from_rows({{1}})));
    RetractionResult r = retraction_split(s);
    REQUIRE(r.found());
    CHECK(r.r == 2);
    CHECK(compose(*r.retraction, s.f).equals(ModMorphism::scalar(z, 2)));

    // torsion first module is gated
    DirectSum ds = direct_sum({z2, z2});
    ShortSequence bad(ds.inclusions[0], ds.projections[1]);
    CHECK_THROWS_AS(retraction_split(bad), PreconditionFailed);
}

TEST_CASE("resolution validation catches broken inputs") {
    auto ex = corpus::z2_resolution_example();
    CHECK(validate_resolution(ex.res).ok);

    // zero augmentation is not monic
    Resolution broken{ex.z2, ModMorphism::zero(ex.z2, ex.z8),
                      CochainComplex::make(0, {ex.z8, ex.z16}, {ex.g}), {}};
    ResolutionCheck check = validate_resolution(broken);
    CHECK_FALSE(check.ok);
    CHECK(check.failing_position == -1);

    CHECK(validate_resolution(trivial_resolution(FgModule::cyclic(6))).ok);
}

TEST_CASE("comparison lift of the identity along the same resolution") {
    auto ex = corpus::z2_resolution_example();
    ChainLift lift = comparison_lift(ModMorphism::identity(ex.z2), ex.res, ex.res);
    REQUIRE(lift.complete);
    CHECK(lift.base_scalar == 1);
    // base square replays
    CHECK(compose(lift.maps[0], ex.res.augmentation)
              .equals(compose(ex.res.augmentation, ModMorphism::identity(ex.z2))
                          .scaled(lift.base_scalar)));
    // every recorded square scalar is confirmed by the scalar solver
    for (std::size_t n = 0; n + 1 < lift.maps.size(); ++n) {
        ModMorphism lhs = compose(lift.maps[n + 1], lift.bottom.map_at(static_cast<long long>(n)));
        ModMorphism rhs = compose(lift.top.map_at(static_cast<long long>(n)), lift.maps[n]);
        ScalarSet set = scalar_proportionality(lhs, rhs);
        REQUIRE(set.contains(lift.square_scalars[n]));
    }
}

TEST_CASE("comparison lift from the trivial resolution into the cyclic one") {
    auto ex = corpus::z2_resolution_example();
    Resolution bottom = trivial_resolution(ex.z2);
    ChainLift lift = comparison_lift(ModMorphism::identity(ex.z2), bottom, ex.res);
    REQUIRE(lift.complete);
    CHECK(lift.base_scalar == 1);
    CHECK(lift.maps[0].equals(ex.f));  // forced: f0 . id = eta
}

TEST_CASE("two independent lifts are e-homotopic") {
    corpus::Rng rng(83);
    int done = 0;
    for (int iter = 0; iter < 12 && done < 6; ++iter) {
        corpus::ComparisonInstance inst = corpus::random_comparison_instance(rng);
        std::mt19937_64 v1(1000 + iter), v2(9000 + iter);
        ChainLift a = comparison_lift(inst.f, inst.bottom, inst.top, 0, &v1);
        ChainLift b = comparison_lift(inst.f, inst.bottom, inst.top, 0, &v2);
        REQUIRE(a.complete);
        REQUIRE(b.complete);
        HomotopyResult hw = homotopy_witness(a, b);
        REQUIRE(hw.found);
        REQUIRE(hw.r != 0);
        REQUIRE(hw.s != 0);
        ++done;
    }
    CHECK(done == 6);
}

TEST_CASE("homotopy of a lift with itself") {
    auto ex = corpus::z2_resolution_example();
    ChainLift lift = comparison_lift(ModMorphism::identity(ex.z2), ex.res, ex.res);
    HomotopyResult hw = homotopy_witness(lift, lift);
    REQUIRE(hw.found);
    CHECK(hw.r == 1);
    CHECK(hw.s == 1);
}

TEST_CASE("homotopy between a lift and its double") {
    auto ex = corpus::z2_resolution_example();
    Resolution bottom = trivial_resolution(ex.z2);
    ChainLift f = comparison_lift(ModMorphism::identity(ex.z2), bottom, ex.res);
    REQUIRE(f.complete);
    ChainLift h = f;
    for (ModMorphism& m : h.maps) m = m.scaled(2);
    h.base_scalar = f.base_scalar * 2;
    HomotopyResult hw = homotopy_witness(f, h);
    REQUIRE(hw.found);
    // d'^0 is zero here, so the identity forces r(h0 - f0) = 0, i.e. r even
    CHECK(hw.r == 2);
}

TEST_CASE("horseshoe on a split sequence with trivial resolutions") {
    FgModule x = FgModule::cyclic(4);
    DirectSum ds = direct_sum({x, x});
    ShortSequence s(ds.inclusions[0], ds.projections[1]);
    HorseshoeResult hs = horseshoe(s, trivial_resolution(x), trivial_resolution(x));
    REQUIRE(hs.ok);
    CHECK(hs.middle.complex.objects.size() == 1);
    CHECK(is_isomorphic(hs.middle.complex.objects[0], ds.module).isomorphic);
}

TEST_CASE("horseshoe across the cyclic resolution") {
    // 0 -> Z/2 -> Z/8 -> Z/16 -> 0 with the cyclic resolution on the left
    // and the trivial resolution of Z/16 on the right
    auto ex = corpus::z2_resolution_example();
    HorseshoeResult hs = horseshoe(ex.seq, ex.res, trivial_resolution(ex.z16));
    REQUIRE(hs.ok);
    // columns are split exact at each degree
    for (std::size_t n = 0; n < hs.middle.complex.objects.size(); ++n) {
        ShortSequence col(hs.inclusions[n], hs.projections[n]);
        ESplitReport rep = check_e_split(col, hs.sections[n], 1);
        REQUIRE(rep.found());
        REQUIRE(*rep.witness_r == 1);
    }
}

TEST_CASE("horseshoe reports the exponent obstruction honestly") {
    // 0 -> Z/2 -> Z/4 -> Z/2 -> 0 with trivial resolutions: no monomorphism
    // Z/4 into Z/2 + Z/2 exists, so the construction cannot produce a valid
    // augmentation and must say so
    FgModule z2 = FgModule::cyclic(2);
    FgModule z4 = FgModule::cyclic(4);
    ModMorphism i(z2, z4, IntMatrix::from_rows({{2}}));
    ModMorphism p(z4, z2, IntMatrix::from_rows({{1}}));
    ShortSequence s(i, p);
    REQUIRE(is_short_e_exact(s).ok());
    HorseshoeResult hs = horseshoe(s, trivial_resolution(z2), trivial_resolution(z2));
    CHECK_FALSE(hs.ok);
    CHECK_FALSE(hs.failure.empty());
}

TEST_CASE("horseshoe randomized instances") {
    corpus::Rng rng(90);
    for (int i = 0; i < 8; ++i) {
        corpus::HorseshoeInstance inst = corpus::random_horseshoe_instance(rng);
        HorseshoeResult hs = horseshoe(inst.seq, inst.left, inst.right);
        REQUIRE(hs.ok);
        for (std::size_t n = 0; n < hs.middle.complex.objects.size(); ++n) {
            ShortSequence col(hs.inclusions[n], hs.projections[n]);
            ESplitReport rep = check_e_split(col, hs.sections[n], 1);
            REQUIRE(rep.found());
        }
    }
}

}  // TEST_SUITE
