#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "matrix.hpp"
#include "numtheory.hpp"

namespace cyclodescent {

/// Subfield of Q(zeta_n), represented as the fixed field of a subgroup H of
/// (Z/n)^x, with an explicit Q-basis. Elements of the subfield are H-fixed
/// cyclotomics at conductor n.
class Subfield {
public:
    Subfield() : n_(1), stab_{1}, basis_{Cyclotomic(1)} {}

    Subfield(long n, std::vector<long> stabilizer, std::vector<Cyclotomic> basis)
        : n_(n), stab_(std::move(stabilizer)), basis_(std::move(basis)) {}

    long conductor() const { return n_; }
    const std::vector<long>& stabilizer() const { return stab_; }
    const std::vector<Cyclotomic>& basis() const { return basis_; }
    long degree() const { return static_cast<long>(basis_.size()); }

    bool is_rationals() const { return degree() == 1; }
    bool is_whole_field() const { return stab_ == std::vector<long>{1}; }
    bool is_real() const {
        if (n_ <= 2) return true;
        return std::binary_search(stab_.begin(), stab_.end(), n_ - 1);
    }

    bool contains(const Cyclotomic& x) const {
        Cyclotomic y = x;
        if (y.conductor() != n_) {
            if (n_ % y.conductor() == 0) {
                y = y.lifted(n_);
            } else {
                long m = y.value_conductor();
                if (n_ % m != 0) return false;
                y = y.reduced_to(m)->lifted(n_);
            }
        }
        for (long h : stab_) {
            if (h == 1) continue;
            if (galois(y, h) != y) return false;
        }
        return true;
    }

    /// Q-coordinates with respect to basis(); throws when x is outside.
    std::vector<Rational> coordinates(const Cyclotomic& x) const {
        Cyclotomic y = x.conductor() == n_ ? x : x.lifted(n_);
        long p = euler_phi(n_);
        Matrix A(p, degree(), 1), b(p, 1, 1);
        for (long j = 0; j < degree(); ++j)
            for (long i = 0; i < p; ++i) A.at(i, j) = basis_[j].coeffs()[i];
        for (long i = 0; i < p; ++i) b.at(i, 0) = y.coeffs()[i];
        Matrix sol = Matrix::solve(A, b);
        std::vector<Rational> out(degree());
        for (long j = 0; j < degree(); ++j) out[j] = sol.at(j, 0).rational_value();
        return out;
    }

    Cyclotomic from_coordinates(const std::vector<Rational>& c) const {
        Cyclotomic out = Cyclotomic(0).lifted(n_);
        for (long j = 0; j < degree(); ++j) out += Cyclotomic(c[j]) * basis_[j];
        return out;
    }

    /// If the fixed field is itself cyclotomic Q(zeta_m) with m | n (as the
    /// kernel of reduction mod m), return the least such m.
    std::optional<long> cyclotomic_kernel() const {
        for (long m : divisors(n_)) {
            std::vector<long> ker;
            for (long k : units_mod(n_))
                if (k % m == 1 % m) ker.push_back(k);
            if (n_ <= 2) ker = {1};
            std::sort(ker.begin(), ker.end());
            if (ker == stab_) return m;
        }
        return std::nullopt;
    }

    struct QuadraticData {
        mpz_class d;   // squarefree, field = Q(sqrt d)
        Cyclotomic w;  // element with w^2 = d, trace zero over Q
    };

    /// Squarefree discriminant data for a degree-2 subfield.
    QuadraticData quadratic_data() const {
        if (degree() != 2)
            throw not_quadratic("subfield has degree " + std::to_string(degree()));
        const Cyclotomic& t = basis_[1];
        // trace of t over Q: sum over coset representatives of H in (Z/n)^x
        Cyclotomic tr = Cyclotomic(0).lifted(n_);
        for (long r : coset_representatives()) tr += galois(t, r);
        Cyclotomic s = Cyclotomic(2) * t - tr;
        Rational r2 = (s * s).rational_value();
        mpz_class d = squarefree_part(r2.num() * r2.den());
        Rational k2 = r2 / Rational(d);
        Rational k;
        if (!rational_sqrt(k2, k))
            throw error("internal: quadratic discriminant scale is not a square");
        return QuadraticData{d, Cyclotomic(k.inverse()) * s};
    }

    /// Exact total-positivity test for an element of a real quadratic
    /// subfield: positive under both real embeddings.
    bool totally_positive(const Cyclotomic& x) const {
        auto qd = quadratic_data();
        if (qd.d < 0) throw not_real_embeddable("subfield is imaginary quadratic");
        auto c = quadratic_coordinates(x, qd);
        const Rational& a = c.first;
        const Rational& b = c.second;
        // embeddings a +- b*sqrt(d): both positive iff trace and norm positive
        Rational norm = a * a - Rational(qd.d) * b * b;
        return a.sign() > 0 && norm.sign() > 0;
    }

    /// Coordinates (a, b) of x = a + b*w with respect to {1, w}.
    std::pair<Rational, Rational> quadratic_coordinates(const Cyclotomic& x,
                                                        const QuadraticData& qd) const {
        Cyclotomic y = x.conductor() == n_ ? x : x.lifted(n_);
        // b = (y - sigma(y)) / (2w) for sigma the nontrivial automorphism of
        // the quadratic field; recover via linear algebra on {1, w} instead.
        long p = euler_phi(n_);
        Matrix A(p, 2, 1), rhs(p, 1, 1);
        for (long i = 0; i < p; ++i) {
            A.at(i, 0) = Cyclotomic(1).lifted(n_).coeffs()[i];
            A.at(i, 1) = qd.w.coeffs()[i];
            rhs.at(i, 0) = y.coeffs()[i];
        }
        Matrix sol = Matrix::solve(A, rhs);
        return {sol.at(0, 0).rational_value(), sol.at(1, 0).rational_value()};
    }

    /// Exact square root within a quadratic subfield, if one exists.
    std::optional<Cyclotomic> quadratic_sqrt(const Cyclotomic& x) const {
        auto qd = quadratic_data();
        auto [a, b] = quadratic_coordinates(x, qd);
        Rational d(qd.d);
        auto build = [&](const Rational& u, const Rational& v) {
            return Cyclotomic(u) + Cyclotomic(v) * qd.w;
        };
        if (b.is_zero()) {
            Rational u;
            if (rational_sqrt(a, u)) return build(u, Rational(0));
            Rational v2 = a / d, v;
            if (rational_sqrt(v2, v)) return build(Rational(0), v);
            return std::nullopt;
        }
        // (u + v w)^2 = x: u^2 + v^2 d = a, 2uv = b
        Rational disc = a * a - b * b * d, sq;
        if (!rational_sqrt(disc, sq)) return std::nullopt;
        for (const Rational& root : {(a + sq) / Rational(2), (a - sq) / Rational(2)}) {
            Rational u;
            if (rational_sqrt(root, u) && !u.is_zero())
                return build(u, b / (Rational(2) * u));
        }
        return std::nullopt;
    }

    std::vector<long> coset_representatives() const {
        std::vector<long> reps;
        std::set<long> seen;
        for (long u : units_mod(n_)) {
            if (seen.count(u)) continue;
            reps.push_back(u);
            for (long h : stab_) seen.insert((u * h) % std::max<long>(n_, 2));
            if (n_ <= 2) seen.insert(1);
        }
        return reps;
    }

    std::string name() const {
        if (is_rationals()) return "Q";
        if (auto m = cyclotomic_kernel()) {
            if (*m == 4) return "Q(i)";
            return "Q(z" + std::to_string(*m) + ")";
        }
        if (degree() == 2) {
            auto qd = quadratic_data();
            return "Q(sqrt(" + qd.d.get_str() + "))";
        }
        std::string s = "fixed:" + std::to_string(n_) + ":";
        for (std::size_t i = 0; i < stab_.size(); ++i)
            s += (i ? "," : "") + std::to_string(stab_[i]);
        return s;
    }

    friend bool operator==(const Subfield& a, const Subfield& b) {
        return a.n_ == b.n_ && a.stab_ == b.stab_;
    }
    friend bool operator!=(const Subfield& a, const Subfield& b) { return !(a == b); }

private:
    long n_;
    std::vector<long> stab_;
    std::vector<Cyclotomic> basis_;
};

/// Fixed field of a subgroup H of (Z/n)^x, with Q-basis obtained by
/// echelonizing the H-orbit sums of the power basis.
inline Subfield fixed_subfield(long n, std::vector<long> H) {
    std::sort(H.begin(), H.end());
    H.erase(std::unique(H.begin(), H.end()), H.end());
    if (n <= 2) H = {1};
    if (!is_subgroup_mod(n, H))
        throw not_a_subgroup("stabilizer is not a subgroup of (Z/n)^x");
    long p = euler_phi(n);
    RowSpan span(p, 1);
    for (long i = 0; i < p; ++i) {
        Cyclotomic sum = Cyclotomic(0).lifted(n);
        for (long h : H) sum += galois(Cyclotomic::zeta(n, i), h);
        Matrix row(1, p, 1);
        for (long j = 0; j < p; ++j) row.at(0, j) = sum.coeffs()[j];
        span.insert(row);
    }
    std::vector<Cyclotomic> basis;
    for (const Matrix& row : span.basis()) {
        std::vector<Rational> c(p);
        for (long j = 0; j < p; ++j) c[j] = row.at(0, j).rational_value();
        basis.emplace_back(n, std::move(c));
    }
    if (static_cast<long>(basis.size()) * static_cast<long>(H.size()) != p)
        throw error("internal: fixed field has unexpected degree");
    return Subfield(n, std::move(H), std::move(basis));
}

inline Subfield whole_field(long n) { return fixed_subfield(n, {1}); }
inline Subfield rationals_in(long n) { return fixed_subfield(n, units_mod(n)); }

/// Squarefree d with f = Q(sqrt d); f must be quadratic over Q.
inline mpz_class quadratic_discriminant(const Subfield& f) {
    return f.quadratic_data().d;
}

/// Norm from Q(zeta_n) down to the subfield: product over its stabilizer.
inline Cyclotomic relative_norm(const Cyclotomic& x, const Subfield& f) {
    if (f.conductor() % x.conductor() != 0)
        throw conductor_mismatch("element does not live in the subfield's ambient field");
    Cyclotomic y = x.lifted(f.conductor());
    Cyclotomic out = Cyclotomic(1).lifted(f.conductor());
    for (long h : f.stabilizer()) out *= galois(y, h);
    if (!f.contains(out)) throw error("internal: relative norm left the subfield");
    return out;
}

/// Trace from Q(zeta_n) down to the subfield: sum over its stabilizer.
inline Cyclotomic relative_trace(const Cyclotomic& x, const Subfield& f) {
    Cyclotomic y = x.lifted(f.conductor());
    Cyclotomic out = Cyclotomic(0).lifted(f.conductor());
    for (long h : f.stabilizer()) out += galois(y, h);
    return out;
}

/// All subgroups of (Z/n)^x, each sorted; deterministic order (by size
/// descending, then lexicographic).
inline std::vector<std::vector<long>> subgroups_of_units(long n) {
    std::vector<long> u = units_mod(n);
    std::set<std::vector<long>> found;
    found.insert(subgroup_closure(n, {}));
    // close under adding one generator at a time until stable
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<std::vector<long>> next = found;
        for (const auto& h : found)
            for (long g : u) {
                std::vector<long> gens = h;
                gens.push_back(g);
                auto c = subgroup_closure(n, gens);
                if (next.insert(c).second) grew = true;
            }
        found = std::move(next);
    }
    std::vector<std::vector<long>> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return out;
}

/// All subfields of Q(zeta_n), ordered by degree ascending then stabilizer.
inline std::vector<Subfield> all_subfields(long n) {
    std::vector<Subfield> out;
    for (const auto& h : subgroups_of_units(n)) out.push_back(fixed_subfield(n, h));
    return out;
}

/// A <= B as subfields of the same ambient Q(zeta_n).
inline bool subfield_le(const Subfield& a, const Subfield& b) {
    if (a.conductor() != b.conductor()) throw conductor_mismatch("subfield ambient mismatch");
    return std::includes(a.stabilizer().begin(), a.stabilizer().end(),
                         b.stabilizer().begin(), b.stabilizer().end());
}

} // namespace cyclodescent
