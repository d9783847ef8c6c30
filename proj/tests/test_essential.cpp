#include "essx/essential.hpp"

#include <doctest.h>

using namespace essx;

namespace {

Submodule span_of(const FgModule& m, const std::vector<std::vector<Int>>& cols) {
    IntMatrix g(m.generators(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < m.generators(); ++i) g.at(i, j) = cols[j][i];
    return submodule_from_generators(m, g);
}

}  // namespace

TEST_SUITE("essential") {

TEST_CASE("socle of cyclic and free modules") {
    FgModule z8 = FgModule::cyclic(8);
    CHECK(socle(z8).source.invariant_factors() == std::vector<Int>{2});
    CHECK(preimage_in(socle(z8), ModElement(z8, {4})).has_value());

    FgModule z12 = FgModule::cyclic(12);
    CHECK(socle(z12).source.invariant_factors() == std::vector<Int>{6});

    CHECK(socle(FgModule::free(1)).source.is_zero_module());
}

TEST_CASE("essentiality criterion on the worked examples") {
    FgModule z = FgModule::free(1);
    CHECK(is_essential(span_of(z, {{2}})));
    CHECK_FALSE(is_essential(span_of(z, {})));

    FgModule z8 = FgModule::cyclic(8);
    CHECK(is_essential(span_of(z8, {{4}})));

    FgModule v = FgModule::from_invariants({2, 2}, 0);
    CHECK_FALSE(is_essential(span_of(v, {{0, 1}})));

    // the image {0,4} inside the kernel <2> of n |-> 8n in Z/8
    Submodule im = span_of(z8, {{4}});
    Submodule ker = span_of(z8, {{2}});
    auto restricted = restrict_submodule(im, ker);
    REQUIRE(restricted.has_value());
    CHECK(is_essential(*restricted));
}

TEST_CASE("oracle on small instances") {
    FgModule z8 = FgModule::cyclic(8);
    CHECK(essential_oracle(span_of(z8, {{4}})));

    FgModule v = FgModule::from_invariants({2, 2}, 0);
    CHECK_FALSE(essential_oracle(span_of(v, {{1, 1}})));
    CHECK(essential_oracle(span_of(v, {{1, 0}, {0, 1}})));

    CHECK_THROWS_AS(essential_oracle(span_of(FgModule::free(1), {{2}})), InfiniteModule);
}

TEST_CASE("whole module and zero submodule") {
    for (const FgModule& m : {FgModule::cyclic(12), FgModule::from_invariants({2, 4}, 0)}) {
        Submodule whole = submodule_from_generators(m, IntMatrix::identity(m.generators()));
        CHECK(is_essential(whole));
        CHECK(essential_oracle(whole));
        Submodule zero = submodule_from_generators(m, IntMatrix(m.generators(), 0));
        CHECK_FALSE(is_essential(zero));
    }
    FgModule z0 = FgModule::zero();
    CHECK(is_essential(submodule_from_generators(z0, IntMatrix(0, 0))));
}

TEST_CASE("criterion agrees with the oracle on all groups of order <= 32") {
    for (const FgModule& m : abelian_group_types(32)) {
        SubgroupCorpus corpus = subgroup_corpus(m, 5);
        CHECK(corpus.exhaustive);
        for (const Submodule& s : corpus.subgroups)
            REQUIRE(is_essential(s) == essential_oracle(s));
    }
}

TEST_CASE("essentiality is transitive on nested subgroups") {
    for (const FgModule& m : abelian_group_types(24)) {
        SubgroupCorpus corpus = subgroup_corpus(m, 9);
        for (const Submodule& outer : corpus.subgroups) {
            for (const Submodule& inner : corpus.subgroups) {
                auto nested = restrict_submodule(inner, outer);
                if (!nested) continue;
                if (is_essential(*nested) && is_essential(outer)) REQUIRE(is_essential(inner));
            }
        }
    }
}

TEST_CASE("group type enumeration is complete at small orders") {
    auto types = abelian_group_types(12);
    CHECK(types.size() == 17);
    auto big = abelian_group_types(16);
    int order16 = 0;
    for (const FgModule& m : big)
        if (m.order() == 16) ++order16;
    CHECK(order16 == 5);  // partitions of 4
}

TEST_CASE("full subgroup lattice sizes on known cases") {
    CHECK(subgroup_corpus(FgModule::cyclic(12), 1).subgroups.size() == 6);  // one per divisor
    CHECK(subgroup_corpus(FgModule::from_invariants({2, 2}, 0), 1).subgroups.size() == 5);
    CHECK(subgroup_corpus(FgModule::from_invariants({2, 2, 2}, 0), 1).subgroups.size() == 16);
}

}  // TEST_SUITE
