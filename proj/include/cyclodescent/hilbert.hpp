#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "numtheory.hpp"
#include "rational.hpp"

namespace cyclodescent {

/// A place of Q: the archimedean place or a finite prime.
struct Place {
    bool infinite = false;
    long p = 0;

    static Place inf() { return Place{true, 0}; }
    static Place prime(long p) { return Place{false, p}; }

    std::string str() const { return infinite ? "inf" : std::to_string(p); }

    friend bool operator==(const Place& a, const Place& b) {
        return a.infinite == b.infinite && a.p == b.p;
    }
    friend bool operator<(const Place& a, const Place& b) {
        if (a.infinite != b.infinite) return a.infinite; // inf sorts first
        return a.p < b.p;
    }
};

namespace detail {

inline long valuation_q(const Rational& x, long p) {
    return valuation(x.num(), p) - valuation(x.den(), p);
}

/// Unit part of x at p reduced mod m (m a power of p or any modulus coprime
/// to the denominator's unit part).
inline long unit_mod(const Rational& x, long p, long m) {
    mpz_class n = x.num(), d = x.den();
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    while (mpz_divisible_ui_p(d.get_mpz_t(), p)) mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
    mpz_class nm = n % m, dm = d % m;
    long ln = mod_pos(nm.get_si(), m), ld = mod_pos(dm.get_si(), m);
    return (ln * inv_mod(ld, m)) % m;
}

} // namespace detail

/// Hilbert symbol (a, b)_v over Q_v: +1 iff z^2 = a x^2 + b y^2 has a
/// nontrivial solution. Classical valuation / Legendre formulas.
inline int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
    if (a.is_zero() || b.is_zero()) throw error("hilbert symbol needs nonzero arguments");
    if (v.infinite)
        return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
    long p = v.p;
    if (p < 2 || !is_prime(p)) throw invalid_place("not a place: " + std::to_string(p));
    long alpha = detail::valuation_q(a, p), beta = detail::valuation_q(b, p);
    if (p == 2) {
        long u = detail::unit_mod(a, 2, 8), w = detail::unit_mod(b, 2, 8);
        auto eps = [](long x) { return ((x - 1) / 2) % 2; };   // x odd mod 8
        auto omega = [](long x) { return ((x * x - 1) / 8) % 2; };
        long e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
        return e % 2 == 0 ? 1 : -1;
    }
    long u = detail::unit_mod(a, p, p), w = detail::unit_mod(b, p, p);
    int sign = 1;
    if ((alpha % 2) != 0 && (beta % 2) != 0 && ((p - 1) / 2) % 2 == 1) sign = -sign;
    if (beta % 2 != 0 && legendre(u, p) < 0) sign = -sign;
    if (alpha % 2 != 0 && legendre(w, p) < 0) sign = -sign;
    return sign;
}

/// Places where (a, b) can ramify: inf, 2, odd primes dividing the numerators
/// and denominators.
inline std::vector<Place> relevant_places(const Rational& a, const Rational& b) {
    std::vector<Place> out{Place::inf(), Place::prime(2)};
    mpz_class m = a.num() * a.den() * b.num() * b.den();
    for (long p : odd_prime_divisors(m)) out.push_back(Place::prime(p));
    return out;
}

/// Ordered per-place invariant map for the quaternion class (a, b).
inline std::vector<std::pair<Place, int>> hilbert_invariants(const Rational& a,
                                                             const Rational& b) {
    std::vector<std::pair<Place, int>> out;
    for (const Place& v : relevant_places(a, b))
        out.emplace_back(v, hilbert_symbol(a, b, v));
    return out;
}

/// Equality of the quaternion classes (a0, b0) and (a1, b1) in Br(Q): local
/// invariants agree over the union of their relevant places.
inline bool same_quaternion_class(const Rational& a0, const Rational& b0,
                                  const Rational& a1, const Rational& b1) {
    std::vector<Place> places = relevant_places(a0, b0);
    for (const Place& v : relevant_places(a1, b1))
        if (std::find(places.begin(), places.end(), v) == places.end()) places.push_back(v);
    for (const Place& v : places)
        if (hilbert_symbol(a0, b0, v) != hilbert_symbol(a1, b1, v)) return false;
    return true;
}

/// True iff a is a norm from Q(sqrt d): all Hilbert symbols (d, a)_v are +1
/// at v in {inf, 2} and the odd primes dividing 2 a d (Hasse norm theorem for
/// quadratic extensions).
inline bool is_norm_from_quadratic(const Rational& a, const mpz_class& d) {
    if (a.is_zero()) throw error("norm test needs a nonzero argument");
    if (d == 1 || squarefree_part(d) != d) throw error("d must be squarefree and not 1");
    Rational rd{d};
    for (const Place& v : relevant_places(rd, a))
        if (hilbert_symbol(rd, a, v) < 0) return false;
    return true;
}

struct NormWitness {
    Rational x, y; // x^2 - d y^2 = a
};

enum class NormSearchStatus { Found, Unsolvable, BoundExceeded };

struct NormSearchResult {
    NormSearchStatus status;
    std::optional<NormWitness> witness;
};

/// Bounded search for x^2 - d y^2 = a over rationals of height <= bound.
/// Checks local solvability first: a locally non-norm input is Unsolvable.
inline NormSearchResult solve_norm_equation(const Rational& a, const mpz_class& d,
                                            long height_bound = 50) {
    if (!is_norm_from_quadratic(a, d))
        return {NormSearchStatus::Unsolvable, std::nullopt};
    for (long q = 1; q <= height_bound; ++q) {
        for (long pnum = 0; pnum <= height_bound; ++pnum) {
            for (int sgn : {1, -1}) {
                if (pnum == 0 && sgn < 0) continue;
                Rational y(sgn * pnum, q);
                Rational t = a + Rational(d) * y * y; // x^2
                if (t.sign() < 0) continue;
                Rational x;
                if (rational_sqrt(t, x))
                    return {NormSearchStatus::Found, NormWitness{x, y}};
            }
        }
    }
    return {NormSearchStatus::BoundExceeded, std::nullopt};
}

} // namespace cyclodescent
