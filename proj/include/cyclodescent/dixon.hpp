#pragma once

#include <algorithm>
#include <vector>

#include "character.hpp"
#include "cyclotomic.hpp"
#include "group.hpp"

namespace cyclodescent {

namespace detail {

/// Column-echelon subspace of F_p^r with pivot bookkeeping.
struct FpSubspace {
    long p = 2;
    long amb = 0;
    std::vector<std::vector<long>> basis; // reduced, basis[j][pivot[j]] = 1
    std::vector<long> pivots;

    long dim() const { return static_cast<long>(basis.size()); }

    void insert(std::vector<long> v) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            long c = v[pivots[j]];
            if (c == 0) continue;
            for (long i = 0; i < amb; ++i)
                v[i] = mod_pos(v[i] - c * basis[j][i], p);
        }
        long piv = -1;
        for (long i = 0; i < amb; ++i)
            if (v[i] != 0) { piv = i; break; }
        if (piv < 0) return;
        long inv = inv_mod(v[piv], p);
        for (long i = 0; i < amb; ++i) v[i] = mod_pos(v[i] * inv, p);
        for (auto& b : basis) {
            long c = b[piv];
            if (c == 0) continue;
            for (long i = 0; i < amb; ++i) b[i] = mod_pos(b[i] - c * v[i], p);
        }
        basis.push_back(std::move(v));
        pivots.push_back(piv);
    }

    /// Coordinates of v in the basis; v must lie in the subspace.
    std::vector<long> coordinates(std::vector<long> v) const {
        std::vector<long> out(basis.size(), 0);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            long c = v[pivots[j]];
            out[j] = c;
            if (c == 0) continue;
            for (long i = 0; i < amb; ++i)
                v[i] = mod_pos(v[i] - c * basis[j][i], p);
        }
        for (long i = 0; i < amb; ++i)
            if (v[i] != 0) throw lift_failure("class matrix does not preserve a subspace");
        return out;
    }
};

inline std::vector<std::vector<long>> fp_kernel(std::vector<std::vector<long>> A, long k,
                                                long p) {
    // A is k x k row-major; returns kernel basis vectors of length k
    std::vector<long> pivot_col;
    long rank = 0;
    for (long col = 0; col < k && rank < k; ++col) {
        long piv = -1;
        for (long r = rank; r < k; ++r)
            if (A[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(A[rank], A[piv]);
        long inv = inv_mod(A[rank][col], p);
        for (long j = 0; j < k; ++j) A[rank][j] = mod_pos(A[rank][j] * inv, p);
        for (long r = 0; r < k; ++r) {
            if (r == rank || A[r][col] == 0) continue;
            long f = A[r][col];
            for (long j = 0; j < k; ++j) A[r][j] = mod_pos(A[r][j] - f * A[rank][j], p);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_piv(k, false);
    for (long c : pivot_col) is_piv[c] = true;
    std::vector<std::vector<long>> out;
    for (long free = 0; free < k; ++free) {
        if (is_piv[free]) continue;
        std::vector<long> v(k, 0);
        v[free] = 1;
        for (long r = 0; r < rank; ++r) v[pivot_col[r]] = mod_pos(-A[r][free], p);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace detail

/// All irreducible characters of G over Q(zeta_e), e = exponent(G), by the
/// class-sum method: simultaneous eigenvectors of the class matrices modulo
/// the least prime p = 1 (mod e) with p > 2 sqrt|G|, lifted to exact
/// cyclotomic values through discrete logarithms on the e-th roots of unity
/// in F_p. Row orthogonality is re-verified exactly after the lift.
inline std::vector<Character> character_table(const GroupPtr& G) {
    long N = G->order(), r = G->num_classes(), e = G->exponent();
    if (N > 10000) throw error("character table computation capped at order 10000");

    long p = 2;
    while (!(is_prime(p) && p % e == 1 % e && static_cast<double>(p) * p > 4.0 * N)) ++p;

    // structure constants a[i][j][k]: c_i c_j = sum_k a_{ijk} c_k; the pair
    // count over a whole class overcounts by the class size
    std::vector<std::vector<std::vector<long>>> a(
        r, std::vector<std::vector<long>>(r, std::vector<long>(r, 0)));
    for (long i = 0; i < r; ++i)
        for (long x : G->classes()[i])
            for (long j = 0; j < r; ++j)
                for (long y : G->classes()[j])
                    ++a[i][j][G->class_of(G->mul(x, y))];
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j)
            for (long k = 0; k < r; ++k) {
                if (a[i][j][k] % G->class_size(k) != 0)
                    throw lift_failure("structure constants are not class-constant");
                a[i][j][k] /= G->class_size(k);
            }

    // split the class-function space into common eigenspaces
    std::vector<detail::FpSubspace> spaces;
    {
        detail::FpSubspace full;
        full.p = p;
        full.amb = r;
        for (long i = 0; i < r; ++i) {
            std::vector<long> v(r, 0);
            v[i] = 1;
            full.insert(std::move(v));
        }
        spaces.push_back(std::move(full));
    }
    for (long i = 1; i < r; ++i) {
        bool all_split = true;
        for (const auto& w : spaces)
            if (w.dim() > 1) all_split = false;
        if (all_split) break;
        std::vector<detail::FpSubspace> next;
        for (auto& W : spaces) {
            long k = W.dim();
            if (k == 1) {
                next.push_back(std::move(W));
                continue;
            }
            // restriction B of the i-th class matrix to W
            std::vector<std::vector<long>> B(k, std::vector<long>(k));
            for (long j = 0; j < k; ++j) {
                std::vector<long> img(r, 0);
                for (long row = 0; row < r; ++row) {
                    long acc = 0;
                    for (long col = 0; col < r; ++col)
                        acc = (acc + a[i][row][col] % p * W.basis[j][col]) % p;
                    img[row] = acc;
                }
                std::vector<long> coords = W.coordinates(std::move(img));
                for (long m = 0; m < k; ++m) B[m][j] = coords[m];
            }
            long found = 0;
            for (long lam = 0; lam < p && found < k; ++lam) {
                std::vector<std::vector<long>> Bl = B;
                for (long m = 0; m < k; ++m) Bl[m][m] = mod_pos(Bl[m][m] - lam, p);
                auto ker = detail::fp_kernel(std::move(Bl), k, p);
                if (ker.empty()) continue;
                detail::FpSubspace sub;
                sub.p = p;
                sub.amb = r;
                for (const auto& kv : ker) {
                    std::vector<long> v(r, 0);
                    for (long m = 0; m < k; ++m)
                        for (long row = 0; row < r; ++row)
                            v[row] = (v[row] + kv[m] * W.basis[m][row]) % p;
                    sub.insert(std::move(v));
                }
                found += sub.dim();
                next.push_back(std::move(sub));
            }
            if (found != k) throw lift_failure("class matrix failed to split a subspace");
        }
        spaces = std::move(next);
    }
    if (static_cast<long>(spaces.size()) != r)
        throw lift_failure("wrong number of common eigenvectors");

    std::vector<long> inv_cls(r), csize(r);
    for (long c = 0; c < r; ++c) {
        inv_cls[c] = G->class_of(G->inverse(G->class_representative(c)));
        csize[c] = G->class_size(c);
    }

    // central characters -> degrees -> character values mod p
    std::vector<std::vector<long>> chi_p;
    std::vector<long> degs;
    for (const auto& W : spaces) {
        if (W.dim() != 1) throw lift_failure("eigenspace not one-dimensional");
        std::vector<long> v = W.basis[0];
        if (v[0] == 0) throw lift_failure("central character vanishes at the identity");
        long scale = inv_mod(v[0], p);
        for (auto& x : v) x = mod_pos(x * scale, p);
        long s = 0;
        for (long c = 0; c < r; ++c)
            s = (s + v[c] * v[inv_cls[c]] % p * inv_mod(csize[c] % p, p)) % p;
        long d2 = mod_pos(N % p * inv_mod(s, p), p);
        long d = 0;
        for (long t = 1; static_cast<double>(t) * t <= N; ++t)
            if (t * t % p == d2) { d = t; break; }
        if (d == 0) throw lift_failure("degree could not be recovered");
        std::vector<long> chi(r);
        for (long c = 0; c < r; ++c)
            chi[c] = mod_pos(d * v[c] % p * inv_mod(csize[c] % p, p), p);
        chi_p.push_back(std::move(chi));
        degs.push_back(d);
    }

    // primitive e-th root of unity in F_p
    long g0 = 2;
    for (;; ++g0) {
        bool prim = true;
        for (auto [q, m] : factorize(p - 1))
            if (pow_mod(g0, (p - 1) / q, p) == 1) { prim = false; break; }
        if (prim) break;
    }
    long z = pow_mod(g0, (p - 1) / e, p);
    long zinv = inv_mod(z, p), einv = inv_mod(e % p, p);

    // lift chi(g) = sum_j m_j zeta_e^j with m_j the root-of-unity multiplicities
    std::vector<Character> table;
    for (std::size_t t = 0; t < chi_p.size(); ++t) {
        std::vector<Cyclotomic> values;
        for (long c = 0; c < r; ++c) {
            long g = G->class_representative(c);
            std::vector<long> s(e);
            long x = G->identity();
            for (long l = 0; l < e; ++l) {
                s[l] = chi_p[t][G->class_of(x)];
                x = G->mul(x, g);
            }
            Cyclotomic val = Cyclotomic(0).lifted(e);
            long total = 0;
            for (long j = 0; j < e; ++j) {
                long m = 0, zj = pow_mod(zinv, j, p);
                long zl = 1;
                for (long l = 0; l < e; ++l) {
                    m = (m + s[l] * zl) % p;
                    zl = zl * zj % p;
                }
                m = mod_pos(m * einv, p);
                if (m > degs[t]) throw lift_failure("root multiplicity exceeds the degree");
                total += m;
                if (m != 0)
                    val += Cyclotomic(Rational(m)) * Cyclotomic::zeta(e, j);
            }
            if (total != degs[t])
                throw lift_failure("root multiplicities do not sum to the degree");
            values.push_back(std::move(val));
        }
        table.emplace_back(G, e, std::move(values));
    }

    // exact verification after the lift
    long sumsq = 0;
    for (const auto& chi : table) {
        Rational d = chi.degree();
        sumsq += static_cast<long>(d.num().get_si()) * static_cast<long>(d.num().get_si());
    }
    if (sumsq != N) throw lift_failure("degree squares do not sum to the group order");
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j = 0; j < table.size(); ++j) {
            Cyclotomic ip = inner_product(table[i], table[j]);
            if (ip != Cyclotomic(i == j ? 1 : 0))
                throw lift_failure("row orthogonality failed after lift");
        }

    std::sort(table.begin(), table.end(), [](const Character& x, const Character& y) {
        Rational dx = x.degree(), dy = y.degree();
        if (dx != dy) return dx < dy;
        for (long c = 0; c < x.group()->num_classes(); ++c) {
            int cmp = Cyclotomic::compare(x.value(c), y.value(c));
            if (cmp != 0) return cmp < 0;
        }
        return false;
    });
    return table;
}

/// Index of the table row equal to chi, or -1.
inline long match_row(const std::vector<Character>& table, const Character& chi) {
    for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i] == chi) return static_cast<long>(i);
    return -1;
}

} // namespace cyclodescent
