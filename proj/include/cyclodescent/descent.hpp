#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hilbert.hpp"
#include "representation.hpp"
#include "subfield.hpp"

namespace cyclodescent {

/// Stabilizer of a representation under Galois twisting, and its fixed field.
struct RationalityData {
    std::vector<long> stabilizer;   // subgroup of (Z/n)^x with twist isomorphic
    Subfield field_of_rationality;  // F(rho), fixed field of the stabilizer
};

/// Twist stabilizer of an absolutely irreducible representation, computed by
/// intertwiner existence and cross-checked against the character stabilizer.
inline RationalityData rationality_data(const Representation& rho) {
    if (!is_absolutely_irreducible(rho))
        throw not_absolutely_irreducible("rationality data needs an absolutely irreducible input");
    long n = rho.conductor();
    Character chi = character_of(rho);
    std::vector<long> stab;
    for (long k : units_mod(n)) {
        bool char_fixed = chi.lifted(n).twisted(k) == chi.lifted(n);
        if (!char_fixed) continue;
        auto phi = averaged_intertwiner(rho.twisted(k), rho);
        if (!phi) throw error("internal: character fixed but no intertwiner found");
        stab.push_back(k);
    }
    // the character stabilizer may not be smaller either
    for (long k : units_mod(n)) {
        if (std::binary_search(stab.begin(), stab.end(), k)) continue;
        if (averaged_intertwiner(rho.twisted(k), rho))
            throw error("internal: twist isomorphism without fixed character");
    }
    return RationalityData{stab, fixed_subfield(n, stab)};
}

/// Chosen intertwiners phi_sigma : twist_sigma(rho) -> rho for sigma in Gamma,
/// phi_e = I, each invertible; deterministic averaged chooser.
inline std::map<long, Matrix> choose_descent_maps(
    const Representation& rho, const std::vector<long>& gamma,
    const std::vector<std::pair<long, long>>* chooser_order = nullptr) {
    long n = rho.conductor();
    if (!is_subgroup_mod(n, gamma))
        throw not_a_subgroup("descent maps need a subgroup of (Z/n)^x");
    std::map<long, Matrix> maps;
    for (long s : gamma) {
        if (s == 1) {
            maps.emplace(1, Matrix::identity(rho.dim(), n));
            continue;
        }
        auto phi = averaged_intertwiner(rho.twisted(s), rho, chooser_order);
        if (!phi || !phi->is_invertible())
            throw no_intertwiner("no isomorphism from the " + std::to_string(s) +
                                 "-twist; is the representation self-conjugate?");
        maps.emplace(s, *phi);
    }
    return maps;
}

/// A Galois 2-cocycle table beta(sigma, tau) in Q(zeta_n)^x over a subgroup
/// Gamma of (Z/n)^x, normalized (beta(e,.) = beta(.,e) = 1).
class CocycleClass {
public:
    CocycleClass(long conductor, std::vector<long> gamma,
                 std::map<std::pair<long, long>, Cyclotomic> table)
        : n_(conductor), gamma_(std::move(gamma)), table_(std::move(table)) {}

    long conductor() const { return n_; }
    const std::vector<long>& gamma() const { return gamma_; }

    const Cyclotomic& beta(long s, long t) const {
        auto it = table_.find({s, t});
        if (it == table_.end()) throw error("cocycle table lookup outside Gamma");
        return it->second;
    }

    bool is_normalized() const {
        for (long s : gamma_)
            if (beta(1, s) != Cyclotomic(1) || beta(s, 1) != Cyclotomic(1)) return false;
        return true;
    }

    /// Exact 2-cocycle identity on all |Gamma|^3 triples:
    /// sigma(beta(tau, rho)) beta(sigma, tau rho) = beta(sigma, tau) beta(sigma tau, rho).
    bool verify_identity() const {
        for (long s : gamma_)
            for (long t : gamma_)
                for (long r : gamma_) {
                    Cyclotomic lhs = galois(beta(t, r).lifted(n_), s) * beta(s, mulmod(t, r)).lifted(n_);
                    Cyclotomic rhs = beta(s, t).lifted(n_) * beta(mulmod(s, t), r).lifted(n_);
                    if (lhs != rhs) return false;
                }
        return true;
    }

    /// Least exponent generating Gamma, when Gamma is cyclic.
    std::optional<long> cyclic_generator() const {
        for (long g : gamma_) {
            std::vector<long> pow{1};
            long x = g;
            while (x != 1) {
                pow.push_back(x);
                x = mulmod(x, g);
            }
            std::sort(pow.begin(), pow.end());
            if (pow == gamma_) return g;
        }
        return std::nullopt;
    }

    /// Norm-class representative a = prod_i beta(sigma, sigma^i) for cyclic
    /// Gamma with generator sigma; lies in the fixed field.
    Cyclotomic norm_class() const {
        auto g = cyclic_generator();
        if (!g) throw not_cyclic("norm class needs a cyclic Gamma");
        Cyclotomic a = Cyclotomic(1).lifted(n_);
        long x = 1;
        for (std::size_t i = 0; i < gamma_.size(); ++i) {
            a *= beta(*g, x).lifted(n_);
            x = mulmod(x, *g);
        }
        for (long s : gamma_)
            if (galois(a, s) != a)
                throw error("internal: norm class is not Gamma-fixed");
        return a;
    }

    long mulmod(long a, long b) const { return n_ <= 2 ? 1 : (a * b) % n_; }

    /// Multiply by the coboundary of c: beta'(s,t) = beta(s,t) c_s s(c_t) / c_{st}.
    CocycleClass times_coboundary(const std::map<long, Cyclotomic>& c) const {
        std::map<std::pair<long, long>, Cyclotomic> t2;
        for (const auto& [key, val] : table_) {
            auto [s, t] = key;
            Cyclotomic cs = c.at(s).lifted(n_), ct = c.at(t).lifted(n_);
            Cyclotomic cst = c.at(mulmod(s, t)).lifted(n_);
            t2[key] = val.lifted(n_) * cs * galois(ct, s) / cst;
        }
        return CocycleClass(n_, gamma_, std::move(t2));
    }

private:
    long n_;
    std::vector<long> gamma_;
    std::map<std::pair<long, long>, Cyclotomic> table_;
};

/// beta(sigma, tau) id = phi_sigma twist_sigma(phi_tau) phi_{sigma tau}^{-1},
/// extracted from chosen descent maps of an absolutely irreducible object.
inline CocycleClass borel_tits_cocycle(const Representation& rho,
                                       const std::map<long, Matrix>& maps) {
    long n = rho.conductor();
    std::vector<long> gamma;
    for (const auto& [s, m] : maps) gamma.push_back(s);
    std::sort(gamma.begin(), gamma.end());
    std::map<long, Matrix> inv;
    for (const auto& [s, m] : maps) inv.emplace(s, m.inverse());
    std::map<std::pair<long, long>, Cyclotomic> table;
    for (long s : gamma)
        for (long t : gamma) {
            long st = n <= 2 ? 1 : (s * t) % n;
            GaloisAutomorphism sig(n, s);
            Matrix D = maps.at(s) * maps.at(t).twisted(sig) * inv.at(st);
            auto sc = D.scalar_of();
            if (!sc)
                throw non_scalar_defect("defect of the chosen maps is not scalar at (" +
                                        std::to_string(s) + "," + std::to_string(t) + ")");
            table[{s, t}] = *sc;
        }
    CocycleClass c(n, std::move(gamma), std::move(table));
    if (!c.verify_identity())
        throw error("internal: extracted table violates the 2-cocycle identity");
    return c;
}

/// Norm-class representative of a cyclic cocycle class.
inline Cyclotomic cocycle_norm_class(const CocycleClass& c) { return c.norm_class(); }

/// Representation together with verified descent maps for a subfield.
struct DescentSystem {
    Representation rho;
    Subfield field;               // descent target, fixed field of gamma
    std::vector<long> gamma;
    std::map<long, Matrix> maps;  // sigma -> phi_sigma, satisfies (DS)
};

/// Split a quadratic-over-Q cocycle: find c_sigma in F'^x with
/// beta(s, t) = c_s s(c_t) c_{st}^{-1}, via a rational norm-equation witness.
/// The general quadratic stage (base a quadratic field) is handled by a
/// bounded coefficient search.
inline std::optional<std::map<long, Cyclotomic>> split_cocycle_quadratic(
    const CocycleClass& c, long height_bound = 50) {
    if (c.gamma().size() != 2) throw not_quadratic("cocycle is not quadratic");
    long n = c.conductor();
    long s = c.gamma()[1];
    Cyclotomic a = c.beta(s, s);
    Subfield F = fixed_subfield(n, c.gamma());
    GaloisAutomorphism sig(n, s);
    auto witness_ok = [&](const Cyclotomic& w) {
        return !w.is_zero() && w * sig(w.lifted(n)) == a.lifted(n);
    };
    if (F.is_rationals()) {
        // whole field is quadratic over Q: solve x^2 - d y^2 = a exactly
        Subfield whole = whole_field(n);
        auto qd = whole.quadratic_data();
        Rational ar = a.rational_value();
        auto res = solve_norm_equation(ar, qd.d, height_bound);
        if (res.status != NormSearchStatus::Found) return std::nullopt;
        Cyclotomic w = Cyclotomic(res.witness->x) + Cyclotomic(res.witness->y) * qd.w;
        if (!witness_ok(w)) throw error("internal: norm witness failed verification");
        return std::map<long, Cyclotomic>{{1, Cyclotomic(1)}, {s, w}};
    }
    // relative quadratic stage: bounded search over small coefficient vectors
    long p = euler_phi(n);
    long hmax = std::min<long>(height_bound, 3);
    for (long h = 1; h <= hmax; ++h) {
        std::vector<long> v(p, -h);
        while (true) {
            for (long q = 1; q <= h; ++q) {
                std::vector<Rational> coeffs(p);
                for (long i = 0; i < p; ++i) coeffs[i] = Rational(v[i], q);
                Cyclotomic w(n, coeffs);
                if (witness_ok(w))
                    return std::map<long, Cyclotomic>{{1, Cyclotomic(1)}, {s, w}};
            }
            long i = 0;
            while (i < p && v[i] == h) v[i++] = -h;
            if (i == p) break;
            ++v[i];
        }
    }
    return std::nullopt;
}

/// Rescale chosen maps by a splitting coboundary and verify condition (DS)
/// exhaustively: phi_{st} = phi_s twist_s(phi_t) for all pairs.
inline DescentSystem build_descent_system(const Representation& rho,
                                          const std::map<long, Matrix>& maps,
                                          const std::map<long, Cyclotomic>& coboundary) {
    long n = rho.conductor();
    std::vector<long> gamma;
    std::map<long, Matrix> rescaled;
    for (const auto& [s, m] : maps) {
        gamma.push_back(s);
        Cyclotomic cs = coboundary.at(s).lifted(n);
        rescaled.emplace(s, cs.inverse() * m);
    }
    std::sort(gamma.begin(), gamma.end());
    for (long s : gamma)
        for (long t : gamma) {
            long st = n <= 2 ? 1 : (s * t) % n;
            GaloisAutomorphism sig(n, s);
            if (rescaled.at(st) != rescaled.at(s) * rescaled.at(t).twisted(sig))
                throw cocycle_not_split("(DS) fails at (" + std::to_string(s) + "," +
                                        std::to_string(t) + ")");
        }
    return DescentSystem{rho, fixed_subfield(n, gamma), gamma, std::move(rescaled)};
}

/// Compute the F-form of a descent system: the fixed space of the semilinear
/// maps v |-> phi_sigma(sigma(v)), solved over Q in the power basis, then a
/// base change of the representation into that basis.
inline Representation rational_form(const DescentSystem& ds) {
    const Representation& rho = ds.rho;
    long n = rho.conductor(), d = rho.dim(), p = euler_phi(n);
    long cols = d * p;
    std::vector<long> nontrivial;
    for (long s : ds.gamma)
        if (s != 1) nontrivial.push_back(s);
    Matrix A(std::max<long>(1, static_cast<long>(nontrivial.size()) * cols), cols, 1);
    long r0 = 0;
    for (long s : nontrivial) {
        GaloisAutomorphism sig(n, s);
        const Matrix& phi = ds.maps.at(s);
        // column (j*p + i): image of basis vector zeta^i e_j minus itself
        for (long j = 0; j < d; ++j)
            for (long i = 0; i < p; ++i) {
                Cyclotomic zi = sig(Cyclotomic::zeta(n, i));
                for (long j2 = 0; j2 < d; ++j2) {
                    Cyclotomic entry = phi.at(j2, j) * zi;
                    for (long i2 = 0; i2 < p; ++i2) {
                        const Rational& co = entry.coeffs()[i2];
                        if (!co.is_zero())
                            A.at(r0 + j2 * p + i2, j * p + i) += Cyclotomic(co);
                    }
                }
                A.at(r0 + j * p + i, j * p + i) -= Cyclotomic(1);
            }
        r0 += cols;
    }
    std::vector<Matrix> fixed = A.nullspace();
    long expected = d * ds.field.degree();
    if (static_cast<long>(fixed.size()) != expected)
        throw fixed_space_dimension_mismatch(
            "fixed space has Q-dimension " + std::to_string(fixed.size()) + ", expected " +
            std::to_string(expected));
    // pick d F'-linearly independent fixed vectors, in deterministic order
    RowSpan span(d, n);
    std::vector<Matrix> chosen;
    for (const Matrix& x : fixed) {
        Matrix v(1, d, n);
        for (long j = 0; j < d; ++j) {
            std::vector<Rational> coeffs(p);
            for (long i = 0; i < p; ++i) coeffs[i] = x.at(j * p + i, 0).rational_value();
            v.at(0, j) = Cyclotomic(n, std::move(coeffs));
        }
        if (span.insert(v)) chosen.push_back(v);
        if (static_cast<long>(chosen.size()) == d) break;
    }
    if (static_cast<long>(chosen.size()) != d)
        throw fixed_space_dimension_mismatch("fixed space does not span over the big field");
    Matrix B(d, d, n);
    for (long c = 0; c < d; ++c)
        for (long j = 0; j < d; ++j) B.at(j, c) = chosen[c].at(0, j);
    Representation form = rho.conjugated(B, ds.field);
    for (long g = 0; g < form.group()->order(); ++g)
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
                if (!ds.field.contains(form.matrix(g).at(i, j)))
                    throw error("internal: descended matrix entry left the target field");
    // rewrite at the target field's own conductor when it is cyclotomic
    if (auto m = ds.field.cyclotomic_kernel()) {
        auto red = form.reduced_to(*m);
        if (red) return *red;
    }
    return form;
}

enum class DescentStatus { Exists, NotSelfConjugate, LocallyObstructed, Undecidable };

/// Full descent decision for one representation and target subfield.
struct DescentDecision {
    DescentStatus status = DescentStatus::Undecidable;
    bool exists() const { return status == DescentStatus::Exists; }

    std::vector<long> gamma;                            // acting subgroup
    std::optional<CocycleClass> cocycle;
    std::optional<Cyclotomic> norm_class;               // cyclic Gamma
    std::optional<Rational> norm_class_rational;        // quadratic over Q
    std::optional<mpz_class> discriminant;              // quadratic over Q
    std::vector<std::pair<Place, int>> invariants;      // quadratic over Q
    std::vector<Place> obstruction;                     // places with -1
    std::optional<std::map<long, Cyclotomic>> coboundary;
    std::optional<Representation> form;
    std::string note;
};

/// Decide whether rho admits an F-form: self-conjugacy plus triviality of the
/// Borel-Tits class. Complete for quadratic stages (base Q exactly, other
/// bases by exact archimedean obstruction or bounded witness); other
/// extensions return the class representative undecided.
inline DescentDecision descent_exists(const Representation& rho, const Subfield& F,
                                      long height_bound = 50) {
    if (!is_absolutely_irreducible(rho))
        throw not_absolutely_irreducible("descent needs an absolutely irreducible input");
    long n = rho.conductor();
    if (F.conductor() != n)
        throw conductor_mismatch("subfield must be given inside the representation's field");
    DescentDecision out;
    out.gamma = F.stabilizer();
    RationalityData rd = rationality_data(rho);
    for (long s : F.stabilizer())
        if (!std::binary_search(rd.stabilizer.begin(), rd.stabilizer.end(), s)) {
            out.status = DescentStatus::NotSelfConjugate;
            out.note = "twist by " + std::to_string(s) + " is not isomorphic to the input";
            return out;
        }
    if (F.is_whole_field()) {
        out.status = DescentStatus::Exists;
        out.coboundary = std::map<long, Cyclotomic>{{1, Cyclotomic(1)}};
        out.form = rho;
        return out;
    }
    auto maps = choose_descent_maps(rho, F.stabilizer());
    out.cocycle = borel_tits_cocycle(rho, maps);
    auto gen = out.cocycle->cyclic_generator();
    if (!gen) {
        out.status = DescentStatus::Undecidable;
        out.note = "Gamma is not cyclic; class kept as a table";
        return out;
    }
    out.norm_class = out.cocycle->norm_class();
    if (F.stabilizer().size() == 2) {
        if (F.is_rationals()) {
            Subfield whole = whole_field(n);
            auto qd = whole.quadratic_data();
            Rational a = out.norm_class->rational_value();
            out.norm_class_rational = a;
            out.discriminant = qd.d;
            out.invariants = hilbert_invariants(Rational(qd.d), a);
            for (const auto& [v, inv] : out.invariants)
                if (inv < 0) out.obstruction.push_back(v);
            if (!out.obstruction.empty()) {
                out.status = DescentStatus::LocallyObstructed;
                return out;
            }
            auto cb = split_cocycle_quadratic(*out.cocycle, height_bound);
            if (!cb) {
                out.status = DescentStatus::Undecidable;
                out.note = "norm equation solvable locally but no witness within height bound";
                return out;
            }
            out.coboundary = cb;
            out.form = rational_form(build_descent_system(rho, maps, *cb));
            out.status = DescentStatus::Exists;
            return out;
        }
        // quadratic stage over a larger base: witness search, then the exact
        // archimedean obstruction for real targets
        auto cb = split_cocycle_quadratic(*out.cocycle, height_bound);
        if (cb) {
            out.coboundary = cb;
            out.form = rational_form(build_descent_system(rho, maps, *cb));
            out.status = DescentStatus::Exists;
            return out;
        }
        if (F.degree() == 2 && F.is_real()) {
            Cyclotomic a = *out.norm_class;
            if (!F.totally_positive(a)) {
                out.status = DescentStatus::LocallyObstructed;
                out.obstruction.push_back(Place::inf());
                out.note = "class is not totally positive; no norm from a CM field";
                return out;
            }
        }
        out.status = DescentStatus::Undecidable;
        out.note = "no witness within height bound over a non-rational base";
        return out;
    }
    out.status = DescentStatus::Undecidable;
    out.note = "cyclic stage of order " + std::to_string(F.stabilizer().size()) +
               " over this base is outside the decidable cases";
    return out;
}

/// Archimedean index of a self-conjugate representation for a quadratic
/// CM stage F'/F: the sign of the norm-class representative. Complete when
/// F = Q; for real quadratic F only embedding-independent signs are decided.
inline int index_quadratic(const Representation& rho, const Subfield& F,
                           bool real_embedding = true) {
    if (F.stabilizer().size() != 2)
        throw not_quadratic("index needs a quadratic stage");
    if (!is_absolutely_irreducible(rho))
        throw not_absolutely_irreducible("index needs an absolutely irreducible input");
    auto maps = choose_descent_maps(rho, F.stabilizer());
    CocycleClass c = borel_tits_cocycle(rho, maps);
    Cyclotomic a = c.norm_class();
    if (!real_embedding)
        throw not_real_embeddable("index is defined at the archimedean place");
    if (auto r = a.to_rational()) {
        if (r->sign() == 0) throw error("internal: norm class is zero");
        return r->sign();
    }
    if (F.degree() == 2 && F.is_real()) {
        if (F.totally_positive(a)) return 1;
        Cyclotomic neg = -a;
        if (F.totally_positive(neg)) return -1;
        throw not_real_embeddable("sign of the class depends on the embedding");
    }
    throw not_real_embeddable("class does not lie in a real subfield");
}

/// Index at the complex-conjugation stage: +1 already-real, 0 when not
/// self-conjugate, otherwise the sign of the quadratic class over the
/// maximal real subfield.
inline int archimedean_index(const Representation& rho) {
    long n = rho.conductor();
    if (n <= 2) return 1;
    RationalityData rd = rationality_data(rho);
    long conj = n - 1;
    if (!std::binary_search(rd.stabilizer.begin(), rd.stabilizer.end(), conj)) return 0;
    Subfield real = fixed_subfield(n, {1, conj});
    return index_quadratic(rho, real);
}

} // namespace cyclodescent
