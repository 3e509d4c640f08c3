#include <catch2/catch_amalgamated.hpp>

#include <cyclodescent/cyclodescent.hpp>

using namespace cyclodescent;

TEST_CASE("closure of permutations") {
    GroupPtr s3 = FiniteGroup::closure({{1, 0, 2}, {1, 2, 0}});
    CHECK(s3->order() == 6);
    CHECK(s3->num_classes() == 3);
    CHECK(s3->exponent() == 6);

    GroupPtr triv = FiniteGroup::closure({});
    CHECK(triv->order() == 1);
    CHECK(triv->identity() == 0);

    GroupPtr q8 = catalog::quaternion8();
    CHECK(q8->order() == 8);
    CHECK(q8->num_classes() == 5);
    CHECK(q8->exponent() == 4);

    CHECK_THROWS_AS(FiniteGroup::closure({{0, 0, 1}}), error);         // not a bijection
    CHECK_THROWS_AS(FiniteGroup::closure({{1, 0}, {1, 2, 0}}), error); // mixed domains
    CHECK_THROWS_AS(FiniteGroup::closure({{1, 2, 3, 4, 0}}, 3), closure_bound_exceeded);
}

TEST_CASE("group invariants on the catalog") {
    for (const std::string& name : catalog::group_names()) {
        GroupPtr g = catalog::group(name);
        INFO("group " << name);
        long total = 0;
        for (long c = 0; c < g->num_classes(); ++c) {
            total += g->class_size(c);
            CHECK(g->order() % g->class_size(c) == 0);
        }
        CHECK(total == g->order());
        CHECK(g->order() % g->exponent() == 0);
        for (long x = 0; x < g->order(); ++x) {
            CHECK(g->inverse(g->inverse(x)) == x);
            CHECK(g->mul(x, g->inverse(x)) == g->identity());
        }
        // class 0 is the identity's class
        CHECK(g->class_of(g->identity()) == 0);
    }
}

TEST_CASE("squaring map") {
    GroupPtr s3 = catalog::symmetric3();
    auto sq = s3->squaring_map();
    CHECK(sq[s3->identity()] == s3->identity());
    for (long g = 0; g < s3->order(); ++g) {
        if (s3->element_order(g) == 2) CHECK(sq[g] == s3->identity());
        if (s3->element_order(g) == 3) {
            CHECK(sq[g] != g);
            CHECK(s3->element_order(sq[g]) == 3);
        }
    }
}

TEST_CASE("table constructor validates") {
    // broken associativity: tweak one entry of C3
    std::vector<std::vector<long>> bad{{0, 1, 2}, {1, 2, 0}, {2, 0, 0}};
    CHECK_THROWS_AS(FiniteGroup::from_table(bad), validation_error);
    std::vector<std::vector<long>> noid{{1, 1}, {1, 1}};
    CHECK_THROWS_AS(FiniteGroup::from_table(noid), validation_error);
    // an identity away from index 0 is fine
    GroupPtr c2 = FiniteGroup::from_table({{1, 0}, {0, 1}});
    CHECK(c2->identity() == 1);
}

TEST_CASE("direct products and subgroups") {
    GroupPtr q8 = catalog::group("q8");
    GroupPtr c2 = catalog::group("c2");
    GroupPtr prod = catalog::group("q8xc2");
    CHECK(prod->order() == 16);
    CHECK(prod->num_classes() == q8->num_classes() * c2->num_classes());
    CHECK(prod->exponent() == lcm_long(q8->exponent(), c2->exponent()));

    // Q8 x {e} inside Q8 x C2
    std::vector<long> elems;
    for (long i = 0; i < q8->order(); ++i) elems.push_back(i * 2);
    auto [h, embed] = FiniteGroup::subgroup(prod, elems);
    CHECK(h->order() == 8);
    CHECK(h->num_classes() == 5);
    for (long a = 0; a < h->order(); ++a)
        for (long b = 0; b < h->order(); ++b)
            CHECK(embed[h->mul(a, b)] == prod->mul(embed[a], embed[b]));

    CHECK_THROWS_AS(FiniteGroup::subgroup(prod, {0, 1, 2}), error);
}

TEST_CASE("dicyclic group of order 12") {
    GroupPtr g = catalog::dicyclic3();
    CHECK(g->order() == 12);
    CHECK(g->exponent() == 12);
    CHECK(g->num_classes() == 6);
    long a = 1, b = 6;
    CHECK(g->element_order(a) == 6);
    CHECK(g->element_order(b) == 4);
    // b^2 = a^3 and b a b^-1 = a^-1
    CHECK(g->mul(b, b) == g->power(a, 3));
    CHECK(g->mul(g->mul(b, a), g->inverse(b)) == g->inverse(a));
    CHECK(g->generators() == std::vector<long>{1, 6});
}

TEST_CASE("bfs parents reconstruct elements") {
    for (const std::string name : {"s3", "q8", "a4", "dic3"}) {
        GroupPtr g = catalog::group(name);
        const auto& par = g->bfs_parents();
        const auto& gens = g->generators();
        for (long x = 0; x < g->order(); ++x) {
            if (x == g->identity()) continue;
            auto [p, s] = par[x];
            REQUIRE(p >= 0);
            CHECK(g->mul(p, gens[s]) == x);
        }
    }
}
