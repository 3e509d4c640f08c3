// Acceptance suite: runs every top-level correctness criterion with exact
// arithmetic and prints one pass/fail line per criterion.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <cyclodescent/cyclodescent.hpp>

using namespace cyclodescent;

namespace {

int failures = 0;

void report(int num, const std::string& label, bool ok, const std::string& detail = "") {
    std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", num, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

template <typename F>
void criterion(int num, const std::string& label, F&& body) {
    try {
        std::string detail;
        bool ok = body(detail);
        report(num, label, ok, detail);
    } catch (const std::exception& e) {
        report(num, label, false, std::string("exception: ") + e.what());
    }
}

struct CatalogCase {
    std::string rep_name;
    Representation rho;
};

std::vector<CatalogCase> quadratic_cases() {
    std::vector<CatalogCase> out;
    for (const std::string name :
         {"q8_2dim", "s3_2dim_over_Qi", "dic3_2dim", "q8s3_4dim", "q8c2_2dim_sign"})
        out.push_back({name, catalog::rep(name)});
    return out;
}

Rational fs_oracle(const Character& chi) {
    const auto& G = *chi.group();
    Character triv(chi.group(), 1,
                   std::vector<Cyclotomic>(G.num_classes(), Cyclotomic(1)));
    std::vector<Cyclotomic> sym, alt;
    Cyclotomic half{Rational(1, 2)};
    for (long c = 0; c < G.num_classes(); ++c) {
        long g = G.class_representative(c);
        Cyclotomic v = chi.value(c), v2 = chi.value(G.class_of(G.mul(g, g)));
        sym.push_back(half * (v * v + v2));
        alt.push_back(half * (v * v - v2));
    }
    Character s(chi.group(), chi.conductor(), sym), a(chi.group(), chi.conductor(), alt);
    return (inner_product(s, triv) - inner_product(a, triv)).rational_value();
}

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();

    // Collected along the way for criteria 9 and 12.
    std::vector<std::pair<Rational, mpz_class>> quadratic_classes; // (class, discriminant)
    std::vector<std::pair<Representation, Representation>> produced_forms; // (form, original)

    criterion(1, "2-cocycle identity on every catalog (rep, subgroup) pair", [&](std::string& d) {
        long checked = 0;
        std::vector<Representation> reps;
        for (const std::string& name : catalog::group_names())
            for (const auto& rho : catalog::irreducibles(name)) reps.push_back(rho);
        // conductor-lifted copies up to 24 stress the same identity
        reps.push_back(catalog::rep("q8_2dim_z8"));
        reps.push_back(catalog::rep("q8_2dim").lifted(12));
        reps.push_back(catalog::rep("s3_2dim").lifted(24));
        for (const auto& rho : reps) {
            RationalityData rd = rationality_data(rho);
            for (const auto& H : subgroups_of_units(rho.conductor())) {
                if (!std::includes(rd.stabilizer.begin(), rd.stabilizer.end(), H.begin(),
                                   H.end()))
                    continue;
                CocycleClass c = borel_tits_cocycle(rho, choose_descent_maps(rho, H));
                if (!c.verify_identity() || !c.is_normalized()) return false;
                ++checked;
            }
        }
        d = std::to_string(checked) + " cocycle tables verified on all |Gamma|^3 triples";
        return checked > 0;
    });

    criterion(2, "chooser permutation yields cohomologous cocycles", [&](std::string& d) {
        long checked = 0;
        for (const auto& [name, rho] : quadratic_cases()) {
            long n = rho.conductor();
            std::vector<std::pair<long, long>> reversed;
            for (long i = rho.dim() - 1; i >= 0; --i)
                for (long j = rho.dim() - 1; j >= 0; --j) reversed.emplace_back(i, j);
            auto m0 = choose_descent_maps(rho, units_mod(n));
            auto m1 = choose_descent_maps(rho, units_mod(n), &reversed);
            CocycleClass c0 = borel_tits_cocycle(rho, m0);
            CocycleClass c1 = borel_tits_cocycle(rho, m1);
            std::map<long, Cyclotomic> lambda;
            for (long s : units_mod(n)) {
                auto sc = (m1.at(s) * m0.at(s).inverse()).scalar_of();
                if (!sc) return false;
                lambda[s] = *sc;
            }
            CocycleClass moved = c0.times_coboundary(lambda);
            for (long s : units_mod(n))
                for (long t : units_mod(n))
                    if (moved.beta(s, t) != c1.beta(s, t)) return false;
            mpz_class disc = whole_field(n).quadratic_data().d;
            Rational a0 = c0.norm_class().rational_value();
            Rational a1 = c1.norm_class().rational_value();
            if (!same_quaternion_class(Rational(disc), a0, Rational(disc), a1)) return false;
            ++checked;
        }
        d = std::to_string(checked) + " representations, exact coboundary and equal invariants";
        return checked == 5;
    });

    criterion(3, "Q8 flagship: quaternionic case over Q(i)/Q", [&](std::string& d) {
        auto start = std::chrono::steady_clock::now();
        Representation q8 = catalog::rep("q8_2dim");
        RationalityData rd = rationality_data(q8);
        bool ok = rd.stabilizer == units_mod(4); // self-conjugate over Q
        ok = ok && fs_indicator(character_of(q8)) == Rational(-1);
        DescentDecision dec = descent_exists(q8, rationals_in(4));
        ok = ok && dec.norm_class_rational && *dec.norm_class_rational == Rational(-1);
        ok = ok && !dec.exists();
        std::vector<Place> obs = dec.obstruction;
        ok = ok && obs.size() == 2 && obs[0] == Place::inf() && obs[1] == Place::prime(2);
        for (const auto& [v, s] : dec.invariants)
            if (s < 0 && !(v == Place::inf() || v == Place::prime(2))) ok = false;
        Representation res = restriction_of_scalars(q8, rationals_in(4));
        EndAlgebra e = end_algebra(res);
        ok = ok && std::holds_alternative<QuaternionClass>(e.classification);
        if (ok) {
            const auto& qc = std::get<QuaternionClass>(e.classification);
            ok = qc.a == Rational(-1) && qc.b == Rational(-1) && qc.is_division;
        }
        ok = ok && is_simple_over(res, character_table(catalog::group("q8"))) ==
                       Simplicity::Simple;
        quadratic_classes.emplace_back(*dec.norm_class_rational, *dec.discriminant);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        d = "completed in " + std::to_string(ms) + " ms";
        return ok && ms < 1000;
    });

    criterion(4, "S3 split case: trivial class, rational form, Res reducible", [&](std::string& d) {
        Representation s3 = catalog::rep("s3_2dim_over_Qi");
        DescentDecision dec = descent_exists(s3, rationals_in(4));
        bool ok = dec.exists();
        ok = ok && dec.form.has_value();
        if (ok) {
            Character chi = character_of(*dec.form);
            ok = chi.value(0) == Cyclotomic(2) && chi.value(1) == Cyclotomic(0) &&
                 chi.value(2) == Cyclotomic(-1);
            produced_forms.emplace_back(*dec.form, s3);
        }
        Representation res = restriction_of_scalars(s3, rationals_in(4));
        ok = ok && is_simple_over(res, character_table(catalog::group("s3"))) ==
                       Simplicity::NotSimple;
        // both directions of the quadratic rule, together with criterion 3
        Representation q8 = catalog::rep("q8_2dim");
        ok = ok && !descent_exists(q8, rationals_in(4)).exists();
        ok = ok &&
             is_simple_over(restriction_of_scalars(q8, rationals_in(4)),
                            character_table(catalog::group("q8"))) == Simplicity::Simple;
        if (dec.norm_class_rational)
            quadratic_classes.emplace_back(*dec.norm_class_rational, *dec.discriminant);
        d = "rational form has character (2, 0, -1)";
        return ok;
    });

    criterion(5, "C3 complex case: Res simple with End a quadratic field", [&](std::string& d) {
        Representation c3 = catalog::rep("c3_char");
        RationalityData rd = rationality_data(c3);
        bool ok = rd.stabilizer == std::vector<long>{1}; // not self-conjugate
        ok = ok && rd.field_of_rationality.name() == "Q(z3)";
        Representation res = restriction_of_scalars(c3, rationals_in(3));
        EndAlgebra e = end_algebra(res);
        ok = ok && std::holds_alternative<FieldClass>(e.classification);
        ok = ok && std::get<FieldClass>(e.classification).degree == 2;
        ok = ok && e.center_dim() == e.dim(); // center is the whole commutant
        ok = ok && is_simple_over(res, character_table(catalog::group("c3"))) ==
                       Simplicity::Simple;
        d = "End = Field(2) with full center";
        return ok;
    });

    criterion(6, "Loewy bijection over Q on every catalog group", [&](std::string& d) {
        long descriptors = 0;
        for (const std::string& name : catalog::group_names()) {
            GroupPtr G = catalog::group(name);
            auto table = character_table(G);
            long e = table[0].conductor();
            auto desc = loewy_correspondence(G, rationals_in(std::max<long>(e, 3)), table,
                                             catalog::irreducibles(name));
            std::vector<bool> covered(table.size(), false);
            for (const auto& row : desc) {
                if (row.kind == SimpleKind::Flagged || !row.simple || !row.end) return false;
                for (long r : row.orbit_rows) {
                    if (covered[r]) return false;
                    covered[r] = true;
                }
                bool division = std::holds_alternative<FieldClass>(row.end->classification) ||
                                (std::holds_alternative<QuaternionClass>(row.end->classification) &&
                                 std::get<QuaternionClass>(row.end->classification).is_division);
                if (!division) return false;
                if (row.kind == SimpleKind::RationalForm)
                    produced_forms.emplace_back(*row.simple, *row.simple);
                ++descriptors;
            }
            for (bool b : covered)
                if (!b) return false;
        }
        d = std::to_string(descriptors) + " descriptors, all End division algebras";
        return descriptors > 0;
    });

    criterion(7, "Frobenius-Schur indicator oracle and archimedean index", [&](std::string& d) {
        long checked = 0;
        for (const std::string& name : catalog::group_names()) {
            for (const auto& chi : character_table(catalog::group(name)))
                if (fs_indicator(chi) != fs_oracle(chi)) return false;
            for (const auto& rho : catalog::irreducibles(name)) {
                Rational fs = fs_indicator(character_of(rho));
                int idx = archimedean_index(rho);
                if (fs == Rational(0) && idx != 0) return false;
                if (fs == Rational(1) && idx != 1) return false;
                if (fs == Rational(-1) && idx != -1) return false;
                ++checked;
            }
        }
        d = std::to_string(checked) + " irreducibles";
        return checked > 0;
    });

    criterion(8, "Hilbert reciprocity on {+-1,+-2,+-3,+-5}^2", [&](std::string& d) {
        long pairs = 0;
        for (long a : {1L, -1L, 2L, -2L, 3L, -3L, 5L, -5L})
            for (long b : {1L, -1L, 2L, -2L, 3L, -3L, 5L, -5L}) {
                int prod = 1;
                for (const Place& v : relevant_places(Rational(a), Rational(b)))
                    prod *= hilbert_symbol(Rational(a), Rational(b), v);
                for (long p = 7; p <= 30; ++p)
                    if (is_prime(p) && std::abs(a * b) % p == 0)
                        prod *= hilbert_symbol(Rational(a), Rational(b), Place::prime(p));
                if (prod != 1) return false;
                ++pairs;
            }
        d = std::to_string(pairs) + " pairs, product of local symbols is +1";
        return pairs == 64;
    });

    criterion(9, "local-global principle on the quadratic classes", [&](std::string& d) {
        long checked = 0;
        for (const auto& [name, rho] : quadratic_cases()) {
            long n = rho.conductor();
            CocycleClass c = borel_tits_cocycle(rho, choose_descent_maps(rho, units_mod(n)));
            mpz_class disc = whole_field(n).quadratic_data().d;
            LocalGlobalReport lg = local_global(c, disc);
            if (!lg.reciprocity_holds) return false;
            bool global = is_norm_from_quadratic(lg.norm_class, disc);
            if (global != lg.globally_trivial) return false;
            if (descent_exists(rho, rationals_in(n)).exists() != global) return false;
            quadratic_classes.emplace_back(lg.norm_class, disc);
            ++checked;
        }
        for (const auto& [a, disc] : quadratic_classes) {
            bool all_trivial = true;
            for (const auto& [v, s] : hilbert_invariants(Rational(disc), a))
                if (s < 0) all_trivial = false;
            if (all_trivial != is_norm_from_quadratic(a, disc)) return false;
        }
        d = std::to_string(quadratic_classes.size()) + " classes checked at every listed place";
        return checked == 5;
    });

    criterion(10, "multiplicity-one transfer of Borel-Tits classes", [&](std::string& d) {
        GroupPtr prod = catalog::group("q8xc2");
        Representation V = catalog::rep("q8c2_2dim_sign");
        std::vector<long> elems;
        for (long q = 0; q < 8; ++q) elems.push_back(q * 2);
        auto [h, embed] = FiniteGroup::subgroup(prod, elems);
        Character tau = character_of(catalog::rep("q8_2dim"));
        Character tau_h(h, tau.conductor(), tau.values());
        TransferResult tr = multiplicity_one_transfer(V, h, embed, tau_h, rationals_in(4));
        bool ok = tr.equal;
        ok = ok && same_quaternion_class(Rational(-1), tr.class_v, Rational(-1), Rational(-1));

        GroupPtr q8g = catalog::group("q8");
        std::vector<long> all;
        for (long i = 0; i < 8; ++i) all.push_back(i);
        auto [hh, emb2] = FiniteGroup::subgroup(q8g, all);
        Character tau2(hh, tau.conductor(), tau.values());
        TransferResult tr2 = multiplicity_one_transfer(catalog::rep("q8_2dim"), hh, emb2,
                                                       tau2, rationals_in(4));
        ok = ok && tr2.equal && tr2.class_v == tr2.class_tau;
        d = "classes agree on (Q8xC2, Q8) and on G = H";
        return ok;
    });

    criterion(11, "minimal fields of definition", [&](std::string& d) {
        MinFieldReport q8 = minimal_fields_of_definition(catalog::rep("q8_2dim_z8"));
        bool ok = q8.complete && q8.minimal.size() == 2;
        std::vector<std::string> names;
        for (const auto& f : q8.minimal) names.push_back(f.name());
        std::sort(names.begin(), names.end());
        ok = ok && names == std::vector<std::string>{"Q(i)", "Q(sqrt(-2))"};
        bool q_excluded = false, sqrt2_by_inf = false;
        for (const auto& e : q8.entries) {
            if (e.field.is_rationals() && e.status == MinFieldStatus::Obstructed)
                q_excluded = true;
            if (e.field.degree() == 2 && e.field.is_real() &&
                e.status == MinFieldStatus::Obstructed &&
                e.note.find("inf") != std::string::npos)
                sqrt2_by_inf = true;
            if (e.status == MinFieldStatus::Exists && e.form && e.field.degree() == 2)
                produced_forms.emplace_back(*e.form, catalog::rep("q8_2dim_z8"));
        }
        ok = ok && q_excluded && sqrt2_by_inf;

        MinFieldReport c4 = minimal_fields_of_definition(catalog::rep("c4_char"));
        ok = ok && c4.minimal.size() == 1 && c4.minimal[0].name() == "Q(i)";
        d = "Q8 in Q(zeta_8) -> {Q(i), Q(sqrt(-2))}; C4 -> {Q(i)}";
        return ok;
    });

    criterion(12, "round trip: every produced form base-changes back", [&](std::string& d) {
        long checked = 0;
        for (const auto& [form, original] : produced_forms) {
            Representation lifted = form.conductor() == original.conductor()
                                        ? form
                                        : form.lifted(original.conductor());
            auto tw = intertwiner_space(lifted, original);
            if (tw.size() != 1 || !tw[0].is_invertible()) return false;
            ++checked;
        }
        d = std::to_string(checked) + " forms";
        return checked > 0;
    });

    auto total_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::printf("%s  (12 criteria, %ld ms total)\n", failures == 0 ? "PASS" : "FAIL",
                static_cast<long>(total_ms));
    return failures == 0 ? 0 : 1;
}
