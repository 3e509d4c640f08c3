#include <catch2/catch_amalgamated.hpp>

#include <cyclodescent/cyclodescent.hpp>

using namespace cyclodescent;

TEST_CASE("construction validates the homomorphism property") {
    CHECK_NOTHROW(Representation::trivial(catalog::group("s3")));

    Representation q8 = catalog::rep("q8_2dim");
    auto report = q8.validate();
    CHECK(report.ok);

    // flip one sign: the constructor and the validator both notice
    std::vector<Matrix> mats = q8.matrices();
    mats[3].at(0, 0) = -mats[3].at(0, 0);
    CHECK_THROWS_AS(Representation(q8.group(), mats), validation_error);

    CHECK_THROWS_AS(Representation(FiniteGroup::closure({}),
                                   std::vector<Matrix>{Matrix::identity(1)}),
                    validation_error); // trivial group rejected
}

TEST_CASE("validate reports the failing pair without throwing") {
    Representation good = catalog::rep("c4_char");
    auto rep = good.validate();
    CHECK(rep.ok);
    CHECK(rep.g == -1);

    // raw data with one sign flipped: the report names the failing pair
    std::vector<Matrix> mats = good.matrices();
    mats[2].at(0, 0) = -mats[2].at(0, 0);
    auto bad = Representation::validate(good.group(), mats);
    CHECK_FALSE(bad.ok);
    CHECK(bad.g >= 0);
    CHECK(bad.h >= 0);
    CHECK(bad.message.find("product mismatch") != std::string::npos);

    auto wrong_count = Representation::validate(good.group(), {Matrix::identity(1)});
    CHECK_FALSE(wrong_count.ok);
}

TEST_CASE("galois twist examples") {
    Representation s3 = catalog::rep("s3_2dim");
    // rational entries: any twist acts trivially after lifting
    Representation s3q = s3.lifted(4);
    CHECK(s3q.twisted(3).matrices() == s3q.matrices());

    Representation c4 = catalog::rep("c4_char");
    Representation c4bar = c4.twisted(3);
    CHECK(c4bar.matrix(1).at(0, 0) == -Cyclotomic::zeta(4)); // inverse character

    Representation q8 = catalog::rep("q8_2dim");
    Representation q8bar = q8.twisted(3);
    CHECK(q8bar.validate().ok);
    CHECK_FALSE(q8bar.matrices() == q8.matrices());
    CHECK_FALSE(intertwiner_space(q8bar, q8).empty()); // isomorphic twist

    CHECK_THROWS_AS(q8.twisted(GaloisAutomorphism(8, 3)), conductor_mismatch);
}

TEST_CASE("twisting preserves validity and absolute irreducibility") {
    for (const std::string name : {"q8_2dim", "c4_char", "dic3_2dim", "s3_2dim_over_Qi"}) {
        Representation rho = catalog::rep(name);
        for (long k : units_mod(rho.conductor())) {
            Representation tw = rho.twisted(k);
            CHECK(tw.validate().ok);
            CHECK(is_absolutely_irreducible(tw) == is_absolutely_irreducible(rho));
        }
    }
}

TEST_CASE("intertwiner spaces") {
    Representation q8 = catalog::rep("q8_2dim");
    auto self = intertwiner_space(q8, q8);
    REQUIRE(self.size() == 1);
    CHECK(self[0].scalar_of().has_value()); // Schur: scalars only

    auto s3irr = catalog::irreducibles("s3");
    CHECK(intertwiner_space(s3irr[0], s3irr[1]).empty()); // trivial vs sign

    Representation twocopies = s3irr[2].direct_sum(s3irr[2]);
    CHECK(intertwiner_space(twocopies, twocopies).size() == 4);

    CHECK_THROWS_AS(intertwiner_space(s3irr[0], catalog::rep("q8_2dim")), group_mismatch);
}

TEST_CASE("intertwiner dimension equals the character inner product") {
    auto names = {"s3", "q8", "dic3", "a4"};
    for (const std::string name : names) {
        auto irr = catalog::irreducibles(name);
        for (std::size_t i = 0; i < irr.size(); ++i)
            for (std::size_t j = 0; j < irr.size(); ++j) {
                Cyclotomic ip = inner_product(character_of(irr[i]), character_of(irr[j]));
                INFO(name << " pair " << i << "," << j);
                CHECK(Cyclotomic(Rational(static_cast<long>(
                          intertwiner_space(irr[i], irr[j]).size()))) == ip);
            }
    }
    // and on a non-irreducible pair
    auto s3 = catalog::irreducibles("s3");
    Representation sum = s3[2].direct_sum(s3[0]);
    CHECK(intertwiner_space(sum, s3[2]).size() == 1);
}

TEST_CASE("absolute irreducibility") {
    CHECK(is_absolutely_irreducible(catalog::rep("q8_2dim")));
    CHECK(is_absolutely_irreducible(catalog::rep("s3_2dim")));
    Representation doubled =
        catalog::irreducibles("s3")[0].direct_sum(catalog::irreducibles("s3")[0]);
    CHECK_FALSE(is_absolutely_irreducible(doubled));

    // restriction of scalars of the quaternion representation: commutant has
    // dimension four over Q
    Representation res = restriction_of_scalars(catalog::rep("q8_2dim"), rationals_in(4));
    CHECK(res.dim() == 4);
    CHECK(intertwiner_space(res, res).size() == 4);
    CHECK_FALSE(is_absolutely_irreducible(res));
}

TEST_CASE("averaged intertwiner is deterministic and normalized") {
    Representation q8 = catalog::rep("q8_2dim");
    auto t1 = averaged_intertwiner(q8, q8);
    REQUIRE(t1.has_value());
    CHECK(*t1 == Matrix::identity(2, 4));

    Representation tw = q8.twisted(3);
    auto phi = averaged_intertwiner(tw, q8);
    REQUIRE(phi.has_value());
    // first nonzero entry normalized to one
    bool found = false;
    for (long i = 0; i < 2 && !found; ++i)
        for (long j = 0; j < 2 && !found; ++j)
            if (!phi->at(i, j).is_zero()) {
                CHECK(phi->at(i, j) == Cyclotomic(1).lifted(4));
                found = true;
            }

    auto none = averaged_intertwiner(catalog::irreducibles("s3")[0],
                                     catalog::irreducibles("s3")[1]);
    CHECK_FALSE(none.has_value());
}

TEST_CASE("isotypic projectors") {
    auto s3 = catalog::irreducibles("s3");
    Character chi2 = character_of(s3[2]);

    Matrix p_self = isotypic_projector(s3[2], chi2);
    CHECK(p_self == Matrix::identity(2));

    Matrix p_absent = isotypic_projector(s3[2], character_of(s3[1]));
    CHECK(p_absent.is_zero());

    Representation reg = Representation::regular(catalog::group("s3"));
    Matrix p = isotypic_projector(reg, chi2);
    CHECK(p * p == p);
    CHECK(p.rank() == 4); // multiplicity 2 times degree 2

    // orthogonality and completeness of the projector family
    Matrix total(6, 6, 1);
    std::vector<Matrix> ps;
    for (const auto& irr : s3) {
        Matrix q = isotypic_projector(reg, character_of(irr));
        for (const auto& other : ps) CHECK((q * other).is_zero());
        ps.push_back(q);
        total = total + q;
    }
    CHECK(total == Matrix::identity(6));

    CHECK_THROWS_AS(isotypic_projector(reg, character_of(reg)), not_irreducible);
}

TEST_CASE("multiplicities") {
    auto s3 = catalog::irreducibles("s3");
    CHECK(multiplicity(s3[2], character_of(s3[2])) == 1);

    Representation reg = Representation::regular(catalog::group("s3"));
    for (const auto& irr : s3)
        CHECK(multiplicity(reg, character_of(irr)) ==
              character_of(irr).degree().num().get_si());

    // the outer product restricted to Q8 x C2 decomposes with multiplicity one
    Representation big = catalog::rep("q8s3_4dim");
    GroupPtr prod = catalog::group("q8xs3");
    std::vector<long> elems;
    for (long q = 0; q < 8; ++q)
        for (long t : {0L, 1L}) elems.push_back(q * 6 + t);
    auto [h, embed] = FiniteGroup::subgroup(prod, elems);
    Representation restr = big.restricted(h, embed);
    auto table = character_table(h);
    long total = 0;
    for (const auto& chi : table) {
        long m = multiplicity(restr, chi);
        CHECK((m == 0 || m == 1));
        total += m * chi.degree().num().get_si();
    }
    CHECK(total == 4);
}

TEST_CASE("representation document round trip") {
    Representation q8 = catalog::rep("q8_2dim");
    Json doc = to_json(q8);
    Representation back = representation_from_json(doc);
    CHECK(back.dim() == q8.dim());
    CHECK(back.conductor() == q8.conductor());
    CHECK(back.matrices() == q8.matrices());
}
