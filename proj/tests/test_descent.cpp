#include <catch2/catch_amalgamated.hpp>

#include <cyclodescent/cyclodescent.hpp>

#include "test_util.hpp"

using namespace cyclodescent;

namespace {

CocycleClass quadratic_table(long n, long s, const Cyclotomic& a) {
    std::map<std::pair<long, long>, Cyclotomic> t;
    t[{1, 1}] = Cyclotomic(1);
    t[{1, s}] = Cyclotomic(1);
    t[{s, 1}] = Cyclotomic(1);
    t[{s, s}] = a;
    return CocycleClass(n, {1, s}, std::move(t));
}

} // namespace

TEST_CASE("rationality data") {
    Representation s3q = catalog::rep("s3_2dim_over_Qi");
    RationalityData rd = rationality_data(s3q);
    CHECK(rd.stabilizer == std::vector<long>{1, 3});
    CHECK(rd.field_of_rationality.is_rationals());

    RationalityData c4 = rationality_data(catalog::rep("c4_char"));
    CHECK(c4.stabilizer == std::vector<long>{1});
    CHECK(c4.field_of_rationality.name() == "Q(i)");

    RationalityData q8 = rationality_data(catalog::rep("q8_2dim"));
    CHECK(q8.stabilizer == std::vector<long>{1, 3});
    CHECK(q8.field_of_rationality.is_rationals());

    Representation red =
        catalog::irreducibles("s3")[0].direct_sum(catalog::irreducibles("s3")[0]);
    CHECK_THROWS_AS(rationality_data(red), not_absolutely_irreducible);
}

TEST_CASE("descent map chooser") {
    Representation q8 = catalog::rep("q8_2dim");
    auto trivial_maps = choose_descent_maps(q8, {1});
    CHECK(trivial_maps.size() == 1);
    CHECK(trivial_maps.at(1).is_identity());

    Representation s3q = catalog::rep("s3_2dim_over_Qi");
    auto s3maps = choose_descent_maps(s3q, {1, 3});
    CHECK(s3maps.at(3) == Matrix::identity(2, 4)); // entries already rational

    auto q8maps = choose_descent_maps(q8, {1, 3});
    const Matrix& phi = q8maps.at(3);
    Matrix prod = phi * phi.twisted(GaloisAutomorphism(4, 3));
    auto sc = prod.scalar_of();
    REQUIRE(sc.has_value());
    CHECK(*sc == Cyclotomic(-1).lifted(4)); // phi conj(phi) = -1

    CHECK_THROWS_AS(choose_descent_maps(catalog::rep("c4_char"), {1, 3}), no_intertwiner);
}

TEST_CASE("borel-tits cocycles on catalog representations") {
    Representation q8 = catalog::rep("q8_2dim");
    auto maps = choose_descent_maps(q8, {1, 3});
    CocycleClass c = borel_tits_cocycle(q8, maps);
    CHECK(c.is_normalized());
    CHECK(c.verify_identity());
    CHECK(c.beta(3, 3) == Cyclotomic(-1).lifted(4));
    CHECK(c.norm_class() == Cyclotomic(-1).lifted(4));

    Representation s3q = catalog::rep("s3_2dim_over_Qi");
    CocycleClass cs = borel_tits_cocycle(s3q, choose_descent_maps(s3q, {1, 3}));
    CHECK(cs.verify_identity());
    CHECK(is_norm_from_quadratic(cs.norm_class().rational_value(), -1));

    auto triv = choose_descent_maps(q8, {1});
    CocycleClass ct = borel_tits_cocycle(q8, triv);
    CHECK(ct.norm_class() == Cyclotomic(1));
}

TEST_CASE("cocycle identity holds on all subgroup choices") {
    for (const std::string name : {"q8_2dim", "s3_2dim_over_Qi", "dic3_2dim", "q8s3_4dim"}) {
        Representation rho = catalog::rep(name);
        RationalityData rd = rationality_data(rho);
        for (const auto& H : subgroups_of_units(rho.conductor())) {
            if (!std::includes(rd.stabilizer.begin(), rd.stabilizer.end(), H.begin(), H.end()))
                continue;
            INFO(name << " subgroup of size " << H.size());
            CocycleClass c = borel_tits_cocycle(rho, choose_descent_maps(rho, H));
            CHECK(c.verify_identity());
            CHECK(c.is_normalized());
        }
    }
}

TEST_CASE("norm class changes by a norm under coboundaries") {
    Representation q8 = catalog::rep("q8_2dim");
    CocycleClass c = borel_tits_cocycle(q8, choose_descent_maps(q8, {1, 3}));
    std::vector<Cyclotomic> cobs{
        Cyclotomic(2).lifted(4),
        Cyclotomic(1) + Cyclotomic::zeta(4),
        Cyclotomic(Rational(1, 3)).lifted(4) + Cyclotomic(Rational(2, 5)) * Cyclotomic::zeta(4)};
    for (const Cyclotomic& w : cobs) {
        std::map<long, Cyclotomic> cb{{1, Cyclotomic(1)}, {3, w}};
        CocycleClass moved = c.times_coboundary(cb);
        CHECK(moved.verify_identity());
        Rational a0 = c.norm_class().rational_value();
        Rational a1 = moved.norm_class().rational_value();
        // ratio is the norm of w
        Rational nw = (w * galois(w, 3)).rational_value();
        CHECK(a1 == a0 * nw);
        CHECK(same_quaternion_class(Rational(-1), a0, Rational(-1), a1));
    }
}

TEST_CASE("choice independence of the chooser order") {
    std::vector<std::pair<long, long>> reversed{{1, 1}, {1, 0}, {0, 1}, {0, 0}};
    for (const std::string name : {"q8_2dim", "s3_2dim_over_Qi", "dic3_2dim"}) {
        Representation rho = catalog::rep(name);
        long n = rho.conductor();
        auto maps0 = choose_descent_maps(rho, units_mod(n));
        auto maps1 = choose_descent_maps(rho, units_mod(n), &reversed);
        CocycleClass c0 = borel_tits_cocycle(rho, maps0);
        CocycleClass c1 = borel_tits_cocycle(rho, maps1);
        // the two choices differ by an exact coboundary of scalars
        std::map<long, Cyclotomic> lambda;
        for (long s : units_mod(n)) {
            Matrix ratio = maps1.at(s) * maps0.at(s).inverse();
            auto sc = ratio.scalar_of();
            REQUIRE(sc.has_value());
            lambda[s] = *sc;
        }
        CocycleClass moved = c0.times_coboundary(lambda);
        for (long s : units_mod(n))
            for (long t : units_mod(n)) CHECK(moved.beta(s, t) == c1.beta(s, t));
        Rational a0 = c0.norm_class().rational_value();
        Rational a1 = c1.norm_class().rational_value();
        mpz_class d = whole_field(n).quadratic_data().d;
        CHECK(same_quaternion_class(Rational(d), a0, Rational(d), a1));
    }
}

TEST_CASE("splitting quadratic cocycles") {
    // trivial class splits with c = 1
    CocycleClass triv = quadratic_table(4, 3, Cyclotomic(1).lifted(4));
    auto cb = split_cocycle_quadratic(triv);
    REQUIRE(cb.has_value());
    CHECK(cb->at(3) == Cyclotomic(1));

    // class 2 over Q(i)/Q: 2 = N(1+i)
    CocycleClass two = quadratic_table(4, 3, Cyclotomic(2).lifted(4));
    auto cb2 = split_cocycle_quadratic(two);
    REQUIRE(cb2.has_value());
    Cyclotomic w = cb2->at(3);
    CHECK(w * galois(w.lifted(4), 3) == Cyclotomic(2).lifted(4));
    CHECK(w == Cyclotomic(1) + Cyclotomic::zeta(4));

    // class -1 over Q(i)/Q is locally obstructed
    CocycleClass neg = quadratic_table(4, 3, Cyclotomic(-1).lifted(4));
    CHECK_FALSE(split_cocycle_quadratic(neg).has_value());
}

TEST_CASE("descent systems verify condition (DS)") {
    Representation s3q = catalog::rep("s3_2dim_over_Qi");
    auto maps = choose_descent_maps(s3q, {1, 3});
    CocycleClass c = borel_tits_cocycle(s3q, maps);
    auto cb = split_cocycle_quadratic(c);
    REQUIRE(cb.has_value());
    DescentSystem ds = build_descent_system(s3q, maps, *cb);
    for (long s : ds.gamma)
        for (long t : ds.gamma) {
            long st = (s * t) % 4;
            CHECK(ds.maps.at(st) ==
                  ds.maps.at(s) * ds.maps.at(t).twisted(GaloisAutomorphism(4, s)));
        }

    // a wrong coboundary is rejected
    std::map<long, Cyclotomic> bad{{1, Cyclotomic(1)}, {3, Cyclotomic(2)}};
    Representation q8 = catalog::rep("q8_2dim");
    auto q8maps = choose_descent_maps(q8, {1, 3});
    CHECK_THROWS_AS(build_descent_system(q8, q8maps, bad), cocycle_not_split);
}

TEST_CASE("rational forms") {
    Representation s3q = catalog::rep("s3_2dim_over_Qi");
    auto maps = choose_descent_maps(s3q, {1, 3});
    auto cb = split_cocycle_quadratic(borel_tits_cocycle(s3q, maps));
    Representation form = rational_form(build_descent_system(s3q, maps, *cb));
    CHECK(form.conductor() == 1);
    CHECK(form.dim() == 2);
    Character chi = character_of(form);
    CHECK(chi.value(0) == Cyclotomic(2));
    CHECK(chi.value(1) == Cyclotomic(0));
    CHECK(chi.value(2) == Cyclotomic(-1));

    // round trip: base change back is isomorphic to the original
    Representation lifted = form.lifted(4);
    auto tw = intertwiner_space(lifted, s3q);
    REQUIRE(tw.size() == 1);
    CHECK(tw[0].is_invertible());
}

TEST_CASE("descent existence decisions") {
    DescentDecision q8 = descent_exists(catalog::rep("q8_2dim"), rationals_in(4));
    CHECK(q8.status == DescentStatus::LocallyObstructed);
    REQUIRE(q8.obstruction.size() == 2);
    CHECK(q8.obstruction[0] == Place::inf());
    CHECK(q8.obstruction[1] == Place::prime(2));
    CHECK(*q8.norm_class_rational == Rational(-1));

    DescentDecision s3 = descent_exists(catalog::rep("s3_2dim_over_Qi"), rationals_in(4));
    CHECK(s3.status == DescentStatus::Exists);
    REQUIRE(s3.form.has_value());
    CHECK(s3.form->conductor() == 1);

    DescentDecision c4 = descent_exists(catalog::rep("c4_char"), rationals_in(4));
    CHECK(c4.status == DescentStatus::NotSelfConjugate);

    // descent onto the whole field is trivial
    DescentDecision self = descent_exists(catalog::rep("q8_2dim"), whole_field(4));
    CHECK(self.status == DescentStatus::Exists);
}

TEST_CASE("quadratic index examples") {
    CHECK(index_quadratic(catalog::rep("q8_2dim"), rationals_in(4)) == -1);
    CHECK(index_quadratic(catalog::rep("s3_2dim_over_Qi"), rationals_in(4)) == 1);
    CHECK(index_quadratic(catalog::rep("dic3_2dim"), rationals_in(6)) == -1);
    CHECK_THROWS_AS(index_quadratic(catalog::rep("q8_2dim"), whole_field(4)), not_quadratic);

    CHECK(archimedean_index(catalog::rep("q8_2dim")) == -1);
    CHECK(archimedean_index(catalog::rep("s3_2dim")) == 1);
    CHECK(archimedean_index(catalog::rep("c4_char")) == 0);
    CHECK(archimedean_index(catalog::rep("c3_char")) == 0);
}

TEST_CASE("cocycle class is an isomorphism invariant") {
    // conjugating the representation moves the table by a coboundary only
    testutil::Rng rng;
    for (const std::string name : {"q8_2dim", "s3_2dim_over_Qi", "dic3_2dim"}) {
        Representation rho = catalog::rep(name);
        long n = rho.conductor();
        mpz_class d = whole_field(n).quadratic_data().d;
        Rational a0 = borel_tits_cocycle(rho, choose_descent_maps(rho, units_mod(n)))
                          .norm_class()
                          .rational_value();
        for (int rep = 0; rep < 3; ++rep) {
            Matrix B = rng.matrix(rho.dim(), rho.dim(), n, 2);
            while (!B.is_invertible()) B = rng.matrix(rho.dim(), rho.dim(), n, 2);
            Representation conj = rho.conjugated(B);
            Rational a1 =
                borel_tits_cocycle(conj, choose_descent_maps(conj, units_mod(n)))
                    .norm_class()
                    .rational_value();
            INFO(name << " trial " << rep);
            CHECK(same_quaternion_class(Rational(d), a0, Rational(d), a1));
        }
    }
}

TEST_CASE("descent onto a real quadratic target") {
    // rational entries are fixed by every twist, so S3 descends to Q(sqrt 2)
    Representation rho = catalog::rep("s3_2dim").lifted(8);
    Subfield sqrt2 = fixed_subfield(8, {1, 7});
    DescentDecision dec = descent_exists(rho, sqrt2);
    REQUIRE(dec.status == DescentStatus::Exists);
    REQUIRE(dec.form.has_value());
    for (long g = 0; g < dec.form->group()->order(); ++g)
        for (long i = 0; i < 2; ++i)
            for (long j = 0; j < 2; ++j)
                CHECK(sqrt2.contains(dec.form->matrix(g).at(i, j)));
}

TEST_CASE("descent onto an intermediate field produces a smaller form") {
    // Q8 inside Q(zeta_8) descends to Q(i); the form reduces to conductor 4
    Representation rho = catalog::rep("q8_2dim_z8");
    std::vector<long> stab{1, 5}; // Gal(Q(zeta_8)/Q(i))
    Subfield qi = fixed_subfield(8, stab);
    DescentDecision dec = descent_exists(rho, qi);
    REQUIRE(dec.status == DescentStatus::Exists);
    REQUIRE(dec.form.has_value());
    CHECK(dec.form->conductor() == 4);
    auto tw = intertwiner_space(dec.form->lifted(8), rho);
    REQUIRE(tw.size() == 1);
    CHECK(tw[0].is_invertible());
}

TEST_CASE("norm class for a cyclic stage of order four") {
    // lift Q8 into Q(zeta_16); <3> is cyclic of order four in (Z/16)^x
    Representation rho = catalog::rep("q8_2dim").lifted(16);
    std::vector<long> gamma = subgroup_closure(16, {3});
    REQUIRE(gamma.size() == 4);
    CocycleClass c = borel_tits_cocycle(rho, choose_descent_maps(rho, gamma));
    CHECK(c.verify_identity());
    REQUIRE(c.cyclic_generator().has_value());
    Cyclotomic a = c.norm_class();
    Subfield fixed = fixed_subfield(16, gamma);
    CHECK(fixed.contains(a));

    // the full group of (Z/8)^x is not cyclic: the decision is left open with
    // the class kept as a table
    DescentDecision dec = descent_exists(catalog::rep("q8_2dim_z8"), rationals_in(8));
    CHECK(dec.status == DescentStatus::Undecidable);
    CHECK(dec.cocycle.has_value());
    CHECK_FALSE(dec.cocycle->cyclic_generator().has_value());
}

TEST_CASE("norm search respects the height bound") {
    // 13 = 3^2 + 2^2 is a norm from Q(i); no witness has |y| <= 1
    CHECK(is_norm_from_quadratic(Rational(13), -1));
    CHECK(solve_norm_equation(Rational(13), -1, 1).status == NormSearchStatus::BoundExceeded);
    auto found = solve_norm_equation(Rational(13), -1, 2);
    REQUIRE(found.status == NormSearchStatus::Found);
    CHECK(found.witness->x * found.witness->x + found.witness->y * found.witness->y ==
          Rational(13));
}

TEST_CASE("indicator matches the archimedean index across the catalog") {
    for (const std::string& name : catalog::group_names()) {
        auto table = character_table(catalog::group(name));
        auto irreps = catalog::irreducibles(name);
        for (const auto& rho : irreps) {
            Rational fs = fs_indicator(character_of(rho).lifted(catalog::group(name)->exponent()));
            int idx = archimedean_index(rho);
            INFO(name << " dim " << rho.dim());
            if (fs == Rational(0)) CHECK(idx == 0);
            else if (fs == Rational(1)) CHECK(idx == 1);
            else CHECK(idx == -1);
        }
    }
}
