#include "essx/eexact.hpp"
#include "essx/fg_module.hpp"

#include <doctest.h>

#include <random>

using namespace essx;

namespace {

std::vector<Int> factors(const FgModule& m) { return m.invariant_factors(); }

}  // namespace

TEST_SUITE("fg_module") {

TEST_CASE("presentations reduce to canonical invariants") {
    FgModule m1 = FgModule::present(2, IntMatrix::from_rows({{2, 0}, {0, 0}}));
    CHECK(factors(m1) == std::vector<Int>{2});
    CHECK(m1.free_rank() == 1);

    FgModule m2 = FgModule::present(1, IntMatrix::from_rows({{8}}));
    CHECK(factors(m2) == std::vector<Int>{8});
    CHECK(m2.free_rank() == 0);

    // relators (2,0) and (3,0) span (1,0): one generator dies
    FgModule m3 = FgModule::present(2, IntMatrix::from_rows({{2, 3}, {0, 0}}));
    CHECK(factors(m3).empty());
    CHECK(m3.free_rank() == 1);
}

TEST_CASE("zero module representation") {
    FgModule z = FgModule::zero();
    CHECK(z.generators() == 0);
    CHECK(z.is_zero_module());
    CHECK(FgModule::present(1, IntMatrix::from_rows({{1}})).is_zero_module());
    CHECK(z.describe() == "0");
}

TEST_CASE("round trip: canonical form presents an isomorphic module") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 50; ++iter) {
        std::size_t g = 1 + rng() % 3, k = rng() % 4;
        IntMatrix rel(g, k);
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < k; ++j)
                rel.at(i, j) = Int(static_cast<long long>(rng() % 13) - 6);
        FgModule m = FgModule::present(g, rel);
        FgModule canon = FgModule::from_invariants(m.invariant_factors(), m.free_rank());
        CHECK(is_isomorphic(m, canon).isomorphic);
    }
}

TEST_CASE("element order and arithmetic") {
    FgModule z8 = FgModule::cyclic(8);
    CHECK(*ModElement(z8, {4}).order() == 2);
    CHECK(*ModElement(z8, {1}).order() == 8);
    CHECK(ModElement(z8, {8}).is_zero());

    FgModule z = FgModule::free(1);
    CHECK_FALSE(ModElement(z, {1}).order().has_value());
    CHECK(*ModElement(z, {0}).order() == 1);

    ModElement a(z8, {5});
    CHECK(a + a == ModElement(z8, {2}));
    CHECK(a.scaled(3) == ModElement(z8, {7}));
    CHECK((a - a).is_zero());
}

TEST_CASE("membership finds preimages in a submodule") {
    FgModule z8 = FgModule::cyclic(8);
    Submodule two = submodule_from_generators(z8, IntMatrix::from_rows({{2}}));
    CHECK(factors(two.source) == std::vector<Int>{4});
    auto pre = preimage_in(two, ModElement(z8, {2}));
    REQUIRE(pre.has_value());
    CHECK(*pre == ModElement(two.source, {1}));
    CHECK(two.embedding.apply(*pre) == ModElement(z8, {2}));
    CHECK_FALSE(preimage_in(two, ModElement(z8, {1})).has_value());
}

TEST_CASE("morphism well-definedness is certified") {
    FgModule z2 = FgModule::cyclic(2);
    FgModule z8 = FgModule::cyclic(8);
    CHECK_NOTHROW(ModMorphism(z2, z8, IntMatrix::from_rows({{4}})));
    CHECK_THROWS_AS(ModMorphism(z2, z8, IntMatrix::from_rows({{1}})), NotAMorphism);
    CHECK_NOTHROW(ModMorphism::identity(z8));
    CHECK_THROWS_AS(ModMorphism(z2, z8, IntMatrix(1, 2)), DimensionMismatch);
}

TEST_CASE("kernel computations") {
    FgModule z8 = FgModule::cyclic(8);
    FgModule z16 = FgModule::cyclic(16);
    ModMorphism g(z8, z16, IntMatrix::from_rows({{8}}));
    Submodule ker = kernel(g);
    CHECK(factors(ker.source) == std::vector<Int>{4});
    // the kernel is generated by 2 in Z/8
    CHECK(preimage_in(ker, ModElement(z8, {2})).has_value());
    CHECK_FALSE(preimage_in(ker, ModElement(z8, {1})).has_value());

    CHECK(kernel(ModMorphism::identity(z8)).source.is_zero_module());

    FgModule z6 = FgModule::cyclic(6);
    Submodule whole = kernel(ModMorphism::zero(z6, z8));
    CHECK(factors(whole.source) == std::vector<Int>{6});
}

TEST_CASE("image and cokernel") {
    FgModule z8 = FgModule::cyclic(8);
    FgModule z16 = FgModule::cyclic(16);
    ModMorphism g(z8, z16, IntMatrix::from_rows({{8}}));
    CHECK(factors(image(g).source) == std::vector<Int>{2});
    CHECK(factors(cokernel(g).quotient) == std::vector<Int>{8});

    FgModule z = FgModule::free(1);
    ModMorphism zero_map = ModMorphism::zero(z, z);
    CHECK(image(zero_map).source.is_zero_module());
    CHECK(cokernel(zero_map).quotient.free_rank() == 1);

    ModMorphism times2 = ModMorphism::scalar(z, 2);
    CHECK(image(times2).source.free_rank() == 1);
    CHECK(factors(cokernel(times2).quotient) == std::vector<Int>{2});
}

TEST_CASE("kernel-image factorization is exact") {
    std::mt19937_64 rng(17);
    std::vector<FgModule> pool{FgModule::cyclic(4), FgModule::cyclic(6), FgModule::free(1),
                               FgModule::from_invariants({2, 4}, 0),
                               FgModule::from_invariants({3}, 1)};
    for (int iter = 0; iter < 25; ++iter) {
        const FgModule& a = pool[rng() % pool.size()];
        const FgModule& b = pool[rng() % pool.size()];
        HomModule hom(a, b);
        std::vector<Int> coords(hom.group().generators());
        for (Int& c : coords) c = Int(static_cast<long long>(rng() % 9) - 4);
        ModMorphism f = hom.evaluate(ModElement(hom.group(), coords));

        Submodule ker = kernel(f);
        Submodule im = image(f);
        ModMorphism onto = corestrict_to_image(f, im);
        ShortSequence seq(ker.embedding, onto);
        ShortEExactReport rep = is_short_e_exact(seq);
        REQUIRE(rep.ok());
        // classical exactness: the containments hold in both directions
        REQUIRE(restrict_submodule(image(ker.embedding), kernel(onto)).has_value());
        REQUIRE(restrict_submodule(kernel(onto), image(ker.embedding)).has_value());
    }
}

TEST_CASE("isomorphism testing with witnesses") {
    FgModule a = FgModule::from_invariants({2, 4}, 0);
    FgModule b = FgModule::present(2, IntMatrix::from_rows({{2, 0}, {0, 4}}));
    IsoVerdict v = is_isomorphic(a, b);
    CHECK(v.isomorphic);
    REQUIRE(v.witness.has_value());
    CHECK(compose(*v.inverse_witness, *v.witness).equals(ModMorphism::identity(a)));

    CHECK_FALSE(is_isomorphic(FgModule::cyclic(8), FgModule::from_invariants({2, 4}, 0)).isomorphic);

    // split sequence: middle of A + C is isomorphic to the direct sum
    DirectSum ds = direct_sum({FgModule::cyclic(2), FgModule::cyclic(3)});
    CHECK(is_isomorphic(ds.module, FgModule::cyclic(6)).isomorphic);
}

TEST_CASE("hom module sizes and the evaluation bijection") {
    FgModule z2 = FgModule::cyclic(2);
    FgModule z4 = FgModule::cyclic(4);
    FgModule z = FgModule::free(1);

    CHECK(factors(HomModule(z2, z4).group()) == std::vector<Int>{2});
    CHECK(HomModule(z2, z).group().is_zero_module());
    FgModule m = FgModule::from_invariants({2, 4}, 1);
    CHECK(is_isomorphic(HomModule(z, m).group(), m).isomorphic);

    // enumeration cross-check: morphisms Z/2 -> Z/4 are exactly 1 |-> 0, 1 |-> 2
    int well_defined = 0;
    for (int x = 0; x < 4; ++x) {
        try {
            ModMorphism probe(z2, z4, IntMatrix::from_rows({{Int(x)}}));
            ++well_defined;
        } catch (const NotAMorphism&) {
        }
    }
    CHECK(well_defined == 2);

    // distinct elements evaluate to distinct morphisms for cyclic pairs
    for (long long na : {2, 3, 4, 6, 9, 12}) {
        for (long long nb : {2, 3, 4, 6, 9, 12}) {
            FgModule a = FgModule::cyclic(na), b = FgModule::cyclic(nb);
            HomModule hom(a, b);
            auto elems = enumerate_elements(hom.group());
            for (std::size_t i = 0; i < elems.size(); ++i) {
                ModMorphism fi = hom.evaluate(elems[i]);
                CHECK(hom.coordinates(fi) == elems[i]);
                for (std::size_t j = i + 1; j < elems.size(); ++j)
                    CHECK_FALSE(fi.equals(hom.evaluate(elems[j])));
            }
        }
    }
}

TEST_CASE("induced hom is precomposition") {
    FgModule z2 = FgModule::cyclic(2);
    FgModule z4 = FgModule::cyclic(4);
    FgModule e = FgModule::cyclic(8);
    ModMorphism f(z2, z4, IntMatrix::from_rows({{2}}));
    ModMorphism star = induced_hom(f, e);
    HomModule hbe(z4, e), hae(z2, e);
    for (const ModElement& h : enumerate_elements(hbe.group())) {
        ModMorphism lhs = hae.evaluate(star.apply(h));
        ModMorphism rhs = compose(hbe.evaluate(h), f);
        CHECK(lhs.equals(rhs));
    }
}

TEST_CASE("direct sums come with inclusions and projections") {
    DirectSum ds = direct_sum({FgModule::cyclic(4), FgModule::free(1)});
    CHECK(factors(ds.module) == std::vector<Int>{4});
    CHECK(ds.module.free_rank() == 1);
    CHECK(compose(ds.projections[0], ds.inclusions[0]).equals(
        ModMorphism::identity(FgModule::cyclic(4))));
    CHECK(compose(ds.projections[1], ds.inclusions[0]).is_zero_morphism());
}

TEST_CASE("element enumeration covers the whole finite module") {
    FgModule m = FgModule::from_invariants({2, 4}, 0);
    CHECK(enumerate_elements(m).size() == 8);
    CHECK(enumerate_elements(FgModule::zero()).size() == 1);
    CHECK_THROWS_AS(enumerate_elements(FgModule::free(1)), InfiniteModule);
}

}  // TEST_SUITE
