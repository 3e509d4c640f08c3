#pragma once

#include <optional>
#include <string>
#include <vector>

#include "descent.hpp"
#include "dixon.hpp"
#include "restriction.hpp"

namespace cyclodescent {

enum class SimpleKind { RationalForm, Restriction, Flagged };

inline const char* simple_kind_str(SimpleKind k) {
    switch (k) {
        case SimpleKind::RationalForm: return "rational_form";
        case SimpleKind::Restriction: return "restriction";
        default: return "flagged";
    }
}

/// One row of the Loewy correspondence: a Galois orbit of absolutely
/// irreducible characters together with the matching simple over the base.
struct LoewyDescriptor {
    std::vector<long> orbit_rows;     // table row indices in the orbit
    Character chi;                    // representative (least row index)
    Subfield field_of_rationality;    // F(chi) at the value conductor
    Rational indicator;               // Frobenius-Schur indicator
    SimpleKind kind = SimpleKind::Flagged;
    std::optional<Representation> simple;
    std::optional<EndAlgebra> end;
    std::string note;
};

/// The orbit |-> simple correspondence over the rationals: for each Galois
/// orbit of the character table, build the matching Q-simple from a concrete
/// irreducible realization (a rational form when descent exists, otherwise a
/// restriction of scalars from the smallest decidable stage).
inline std::vector<LoewyDescriptor> loewy_correspondence(
    const GroupPtr& G, const Subfield& F, const std::vector<Character>& table,
    const std::vector<Representation>& irreps, long height_bound = 50) {
    // orbit partition of table rows over the base field
    long e = table.empty() ? 1 : table[0].conductor();
    std::vector<long> acting;
    if (F.is_rationals()) {
        acting = units_mod(e);
    } else {
        if (e % F.conductor() != 0)
            throw not_a_subfield("base field does not embed in the character field");
        for (long k : units_mod(e)) {
            bool fixes = true;
            for (const Cyclotomic& b : F.basis())
                if (galois(b.lifted(e), k) != b.lifted(e)) { fixes = false; break; }
            if (fixes) acting.push_back(k);
        }
    }
    for (const Character& chi : table)
        if (chi.group() != G && chi.group()->table() != G->table())
            throw group_mismatch();
    std::vector<long> orbit_of(table.size(), -1);
    std::vector<LoewyDescriptor> out;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (orbit_of[i] >= 0) continue;
        LoewyDescriptor desc{{}, table[i], Subfield(), Rational(0), SimpleKind::Flagged,
                             std::nullopt, std::nullopt, ""};
        for (long k : acting) {
            Character tw = table[i].twisted(k);
            for (std::size_t j = 0; j < table.size(); ++j)
                if (orbit_of[j] < 0 && table[j] == tw) {
                    orbit_of[j] = static_cast<long>(i);
                    desc.orbit_rows.push_back(static_cast<long>(j));
                }
        }
        std::sort(desc.orbit_rows.begin(), desc.orbit_rows.end());
        desc.field_of_rationality = galois_orbit(table[i]).field_of_rationality;
        desc.indicator = fs_indicator(table[i]);
        out.push_back(std::move(desc));
    }

    if (!F.is_rationals()) {
        for (auto& d : out) d.note = "simple construction only implemented over Q";
        return out;
    }

    // match a concrete irreducible to each orbit representative
    for (auto& desc : out) {
        long row = -1;
        for (std::size_t r = 0; r < irreps.size(); ++r)
            if (character_of(irreps[r]) == desc.chi) { row = static_cast<long>(r); break; }
        if (row < 0) {
            desc.kind = SimpleKind::Flagged;
            desc.note = "no concrete irreducible realization supplied for this orbit";
            continue;
        }
        // work at the smallest conductor the realization admits
        Representation rho = irreps[row];
        for (long m : divisors(rho.conductor())) {
            if (m == rho.conductor()) break;
            if (auto red = rho.reduced_to(m)) {
                rho = *red;
                break;
            }
        }
        long n = rho.conductor();
        RationalityData rd = rationality_data(rho);
        bool fully_self_conjugate = rd.stabilizer == units_mod(n);
        try {
            if (fully_self_conjugate) {
                if (n <= 2) {
                    desc.kind = SimpleKind::RationalForm;
                    desc.simple = rho;
                } else {
                    DescentDecision dec = descent_exists(rho, rationals_in(n), height_bound);
                    if (dec.status == DescentStatus::Exists) {
                        desc.kind = SimpleKind::RationalForm;
                        desc.simple = dec.form;
                    } else if (dec.status == DescentStatus::LocallyObstructed) {
                        desc.kind = SimpleKind::Restriction;
                        desc.simple = restriction_of_scalars(rho, rationals_in(n));
                    } else {
                        desc.kind = SimpleKind::Flagged;
                        desc.note = "descent over Q undecided: " + dec.note;
                    }
                }
            } else if (rd.stabilizer == std::vector<long>{1}) {
                desc.kind = SimpleKind::Restriction;
                desc.simple = restriction_of_scalars(rho, rationals_in(n));
            } else {
                // descend to an F(chi)-form first, then restrict to Q
                DescentDecision dec = descent_exists(rho, rd.field_of_rationality, height_bound);
                if (dec.status == DescentStatus::Exists) {
                    const Representation& form = *dec.form;
                    desc.kind = SimpleKind::Restriction;
                    desc.simple =
                        restriction_of_scalars(form, rationals_in(form.conductor()));
                    desc.note = "restricted from a minimal form over F(chi)";
                } else {
                    desc.kind = SimpleKind::Flagged;
                    desc.note = "no decidable form over F(chi): " + dec.note;
                }
            }
        } catch (const error& err) {
            desc.kind = SimpleKind::Flagged;
            desc.note = err.what();
        }
        if (desc.simple) desc.end = end_algebra(*desc.simple);
    }
    return out;
}

/// Transfer of Borel-Tits classes along a multiplicity-one constituent:
/// compare the class of V over G with the class of the tau-isotypic
/// constituent of V restricted to the subgroup H.
struct TransferResult {
    Rational class_v, class_tau;
    std::vector<std::pair<Place, int>> invariants_v, invariants_tau;
    bool equal;
};

inline TransferResult multiplicity_one_transfer(const Representation& V, const GroupPtr& H,
                                                const std::vector<long>& embedding,
                                                const Character& tau, const Subfield& F) {
    long n = V.conductor();
    if (F.conductor() != n)
        throw conductor_mismatch("subfield must be given inside the representation's field");
    if (!is_absolutely_irreducible(V))
        throw precondition_failed("V is not absolutely irreducible");
    RationalityData rd = rationality_data(V);
    for (long s : F.stabilizer())
        if (!std::binary_search(rd.stabilizer.begin(), rd.stabilizer.end(), s))
            throw precondition_failed("V is not self-conjugate over the base field");
    if (!is_irreducible(tau)) throw precondition_failed("tau is not irreducible");
    Character tau_red = tau.reduced();
    long m = tau_red.conductor();
    if (n % m != 0)
        throw precondition_failed("tau values do not live inside the ambient field");
    for (long s : F.stabilizer()) {
        long sm = m <= 2 ? 1 : mod_pos(s, m);
        if (tau_red.twisted(sm) != tau_red)
            throw precondition_failed("tau is not self-conjugate over the base field");
    }
    Representation VH = V.restricted(H, embedding);
    if (multiplicity(VH, tau) != 1)
        throw precondition_failed("tau does not have multiplicity one in V");
    // extract the tau-isotypic constituent
    Matrix P = isotypic_projector(VH, tau);
    auto ech = P.rref();
    Matrix B(V.dim(), ech.rank, P.conductor());
    for (long j = 0; j < ech.rank; ++j)
        for (long i = 0; i < V.dim(); ++i) B.at(i, j) = P.at(i, ech.pivots[j]);
    std::vector<Matrix> mats;
    for (long h = 0; h < H->order(); ++h)
        mats.push_back(Matrix::solve(B, VH.matrix(h) * B));
    Representation W(H, std::move(mats));
    if (!is_absolutely_irreducible(W))
        throw error("internal: isotypic constituent is not absolutely irreducible");

    if (F.stabilizer().size() != 2 || !F.is_rationals())
        throw undecidable("class comparison implemented for quadratic stages over Q");
    auto qd = whole_field(n).quadratic_data();
    auto class_of = [&](const Representation& rho) {
        auto maps = choose_descent_maps(rho, F.stabilizer());
        return borel_tits_cocycle(rho, maps).norm_class().rational_value();
    };
    TransferResult out{class_of(V), class_of(W.lifted(n)), {}, {}, false};
    out.invariants_v = hilbert_invariants(Rational(qd.d), out.class_v);
    out.invariants_tau = hilbert_invariants(Rational(qd.d), out.class_tau);
    out.equal = same_quaternion_class(Rational(qd.d), out.class_v, Rational(qd.d), out.class_tau);
    return out;
}

/// Per-place report for a quadratic-over-Q cocycle class.
struct LocalGlobalReport {
    Rational norm_class;
    mpz_class discriminant;
    std::vector<std::pair<Place, int>> invariants;
    bool globally_trivial;
    bool reciprocity_holds;
};

inline LocalGlobalReport local_global(const CocycleClass& c, const mpz_class& d) {
    if (c.gamma().size() != 2) throw not_quadratic("local-global needs a quadratic class");
    Rational a = c.norm_class().rational_value();
    LocalGlobalReport out{a, d, hilbert_invariants(Rational(d), a), true, true};
    int prod = 1;
    for (const auto& [v, s] : out.invariants) {
        if (s < 0) out.globally_trivial = false;
        prod *= s;
    }
    out.reciprocity_holds = (prod == 1);
    return out;
}

enum class MinFieldStatus { Exists, Obstructed, Unknown };

inline const char* minfield_status_str(MinFieldStatus s) {
    switch (s) {
        case MinFieldStatus::Exists: return "exists";
        case MinFieldStatus::Obstructed: return "obstructed";
        default: return "unknown";
    }
}

struct MinFieldEntry {
    Subfield field;
    MinFieldStatus status;
    std::optional<Representation> form;
    std::string note;
};

struct MinFieldReport {
    std::vector<MinFieldEntry> entries;  // all candidates, by degree ascending
    std::vector<Subfield> minimal;       // minimal-degree fields with a form
    bool complete;                       // no unknowns at or below that degree
};

/// Enumerate the subfields E of Q(zeta_n) containing F(rho), decide where an
/// E-form exists, and return the minimal fields of definition. Negative
/// certificates use exact archimedean obstructions; undecided entries are
/// flagged and propagate monotonically (an E-form base-changes to every
/// larger field; obstruction travels the other way).
inline MinFieldReport minimal_fields_of_definition(const Representation& rho,
                                                   long height_bound = 50) {
    long n = rho.conductor();
    RationalityData rd = rationality_data(rho);
    MinFieldReport report{{}, {}, true};
    for (const auto& H : subgroups_of_units(n)) {
        bool inside = std::includes(rd.stabilizer.begin(), rd.stabilizer.end(), H.begin(),
                                    H.end());
        if (!inside) continue;
        Subfield E = fixed_subfield(n, H);
        MinFieldEntry entry{E, MinFieldStatus::Unknown, std::nullopt, ""};
        DescentDecision dec = descent_exists(rho, E, height_bound);
        switch (dec.status) {
            case DescentStatus::Exists:
                entry.status = MinFieldStatus::Exists;
                entry.form = dec.form;
                break;
            case DescentStatus::LocallyObstructed: {
                entry.status = MinFieldStatus::Obstructed;
                std::string pl;
                for (const Place& v : dec.obstruction) pl += (pl.empty() ? "" : ",") + v.str();
                entry.note = "local obstruction at {" + pl + "}";
                break;
            }
            case DescentStatus::NotSelfConjugate:
                throw error("internal: candidate field below the rationality stabilizer");
            default:
                entry.status = MinFieldStatus::Unknown;
                entry.note = dec.note;
        }
        report.entries.push_back(std::move(entry));
    }
    std::sort(report.entries.begin(), report.entries.end(),
              [](const MinFieldEntry& a, const MinFieldEntry& b) {
                  if (a.field.degree() != b.field.degree())
                      return a.field.degree() < b.field.degree();
                  return a.field.stabilizer() < b.field.stabilizer();
              });
    // monotone propagation
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& small : report.entries)
            for (auto& big : report.entries) {
                if (&small == &big) continue;
                if (!subfield_le(small.field, big.field)) continue;
                if (big.status == MinFieldStatus::Obstructed &&
                    small.status == MinFieldStatus::Unknown) {
                    small.status = MinFieldStatus::Obstructed;
                    small.note = "a larger field (" + big.field.name() + ") is obstructed";
                    changed = true;
                }
                if (small.status == MinFieldStatus::Exists &&
                    big.status == MinFieldStatus::Unknown) {
                    big.status = MinFieldStatus::Exists;
                    if (!big.form && small.form) big.form = small.form;
                    big.note = "base change of the " + small.field.name() + "-form";
                    changed = true;
                }
            }
    }
    long min_degree = -1;
    for (const auto& e : report.entries)
        if (e.status == MinFieldStatus::Exists) {
            min_degree = e.field.degree();
            break;
        }
    for (const auto& e : report.entries) {
        if (e.status == MinFieldStatus::Exists && e.field.degree() == min_degree)
            report.minimal.push_back(e.field);
        if (e.status == MinFieldStatus::Unknown && e.field.degree() <= min_degree)
            report.complete = false;
    }
    return report;
}

} // namespace cyclodescent
