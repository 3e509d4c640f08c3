#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include <gmpxx.h>

namespace cyclodescent {

inline long gcd_long(long a, long b) { return std::gcd(a, b); }
inline long lcm_long(long a, long b) { return std::lcm(a, b); }

inline long mod_pos(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

inline long pow_mod(long base, long exp, long mod) {
    long r = 1 % mod;
    base = mod_pos(base, mod);
    while (exp > 0) {
        if (exp & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return r;
}

inline long inv_mod(long a, long n) {
    long t = 0, newt = 1, r = n, newr = mod_pos(a, n);
    while (newr != 0) {
        long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    return mod_pos(t, n);
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Trial division factorization, ascending primes with multiplicity.
inline std::vector<std::pair<long, long>> factorize(long n) {
    std::vector<std::pair<long, long>> f;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            long e = 0;
            while (n % d == 0) { n /= d; ++e; }
            f.emplace_back(d, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline long euler_phi(long n) {
    long r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> d;
    for (long i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) d.push_back(n / i);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

/// Multiplicative units of Z/n, ascending. For n <= 2 this is {1}.
inline std::vector<long> units_mod(long n) {
    if (n <= 2) return {1};
    std::vector<long> u;
    for (long k = 1; k < n; ++k)
        if (std::gcd(k, n) == 1) u.push_back(k);
    return u;
}

/// Close a set of exponents under multiplication mod n; always contains 1.
inline std::vector<long> subgroup_closure(long n, std::vector<long> gens) {
    std::vector<long> elems = {1 % std::max<long>(n, 1)};
    if (n <= 2) return {1};
    for (long& g : gens) g = mod_pos(g, n);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<long> cur = elems;
        for (long a : cur)
            for (long g : gens) {
                long p = (a * g) % n;
                if (std::find(elems.begin(), elems.end(), p) == elems.end()) {
                    elems.push_back(p);
                    grew = true;
                }
            }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

inline bool is_subgroup_mod(long n, const std::vector<long>& h) {
    if (n <= 2) return h == std::vector<long>{1};
    if (h.empty()) return false;
    for (long a : h) {
        if (a < 1 || a >= n || std::gcd(a, n) != 1) return false;
        for (long b : h) {
            long p = (a * b) % n;
            if (!std::binary_search(h.begin(), h.end(), p)) return false;
        }
    }
    return std::binary_search(h.begin(), h.end(), 1L);
}

inline long valuation(mpz_class n, long p) {
    long v = 0;
    while (n != 0 && mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++v;
    }
    return v;
}

/// Squarefree part of a nonzero integer, sign preserved.
inline mpz_class squarefree_part(mpz_class n) {
    mpz_class sign = (n < 0) ? -1 : 1;
    mpz_class m = abs(n), out = 1;
    for (mpz_class d = 2; d * d <= m; ++d) {
        long e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
            mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), d.get_mpz_t());
            ++e;
        }
        if (e % 2 == 1) out *= d;
    }
    out *= m; // remaining prime factor, exponent one
    return sign * out;
}

/// Legendre symbol (a/p) for odd prime p.
inline int legendre(mpz_class a, long p) {
    mpz_class r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    long e = pow_mod(r.get_si() % p, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

inline std::vector<long> odd_prime_divisors(const mpz_class& n) {
    std::vector<long> ps;
    mpz_class m = abs(n);
    for (long d = 3; mpz_class(d) * d <= m; d += 2) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            ps.push_back(d);
            while (mpz_divisible_ui_p(m.get_mpz_t(), d))
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
        }
    }
    while (mpz_even_p(m.get_mpz_t())) mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), 2);
    if (m > 1) ps.push_back(m.get_si());
    std::sort(ps.begin(), ps.end());
    return ps;
}

} // namespace cyclodescent
