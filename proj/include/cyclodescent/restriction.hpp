#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "character.hpp"
#include "hilbert.hpp"
#include "representation.hpp"
#include "subfield.hpp"

namespace cyclodescent {

/// View an E-linear representation as an F-linear one for F a subfield of its
/// coefficient field E: every entry becomes the [E:F] x [E:F] matrix of
/// multiplication on E over a fixed F-basis of E.
inline Representation restriction_of_scalars(const Representation& rho, const Subfield& F) {
    long n = rho.conductor();
    if (F.conductor() != n)
        throw not_a_subfield("target field must be given inside the representation's field");
    const Subfield& E = rho.coefficient_field();
    if (!subfield_le(F, E))
        throw not_a_subfield("target is not a subfield of the coefficient field");
    if (F == E) return rho;
    long degF = F.degree(), db = E.degree() / degF, p = euler_phi(n);

    // F-basis of E, greedily from E's Q-basis
    std::vector<Cyclotomic> ebasis;
    RowSpan fspan(p, 1);
    auto qrow = [&](const Cyclotomic& x) {
        Matrix r(1, p, 1);
        for (long i = 0; i < p; ++i) r.at(0, i) = x.coeffs()[i];
        return r;
    };
    for (const Cyclotomic& c : E.basis()) {
        if (fspan.coordinates(qrow(c))) continue; // already in the F-span
        ebasis.push_back(c);
        for (const Cyclotomic& f : F.basis()) fspan.insert(qrow(f * c));
        if (static_cast<long>(ebasis.size()) == db) break;
    }
    if (static_cast<long>(ebasis.size()) != db)
        throw error("internal: could not extract an F-basis of the coefficient field");

    // solver for coordinates of y in the products (ebasis_j * fbasis_l)
    Matrix M(p, db * degF, 1);
    for (long j = 0; j < db; ++j)
        for (long l = 0; l < degF; ++l) {
            Cyclotomic prod = ebasis[j] * F.basis()[l];
            for (long i = 0; i < p; ++i) M.at(i, j * degF + l) = prod.coeffs()[i];
        }

    long d = rho.dim();
    std::vector<Matrix> mats;
    for (long g = 0; g < rho.group()->order(); ++g) {
        Matrix out(d * db, d * db, n);
        for (long r = 0; r < d; ++r)
            for (long c = 0; c < d; ++c) {
                const Cyclotomic& y = rho.matrix(g).at(r, c);
                if (y.is_zero()) continue;
                Matrix rhs(p, db, 1);
                for (long j = 0; j < db; ++j) {
                    Cyclotomic yc = y * ebasis[j];
                    for (long i = 0; i < p; ++i) rhs.at(i, j) = yc.coeffs()[i];
                }
                Matrix X = Matrix::solve(M, rhs); // (db*degF) x db
                for (long k = 0; k < db; ++k)
                    for (long j = 0; j < db; ++j) {
                        Cyclotomic entry = Cyclotomic(0).lifted(n);
                        for (long l = 0; l < degF; ++l) {
                            Rational coef = X.at(k * degF + l, j).rational_value();
                            if (!coef.is_zero())
                                entry += Cyclotomic(coef) * F.basis()[l];
                        }
                        out.at(r * db + k, c * db + j) = entry;
                    }
            }
        mats.push_back(std::move(out));
    }
    Representation res(rho.group(), std::move(mats), F);
    if (auto m = F.cyclotomic_kernel()) {
        auto red = res.reduced_to(*m);
        if (red) return *red;
    }
    return res;
}

struct FieldClass {
    long degree;
};
struct QuaternionClass {
    Rational a, b;
    bool is_division;
    std::vector<std::pair<Place, int>> invariants;
};
struct UnclassifiedClass {
    long dim;
    long center_dim;
};
using EndClassification = std::variant<FieldClass, QuaternionClass, UnclassifiedClass>;

/// Commutant of a representation as an F-algebra: basis, exact structure
/// constants, center, and the division-algebra classification.
struct EndAlgebra {
    std::vector<Matrix> basis;
    std::vector<std::vector<std::vector<Cyclotomic>>> structure; // B_i B_j = sum c_ijk B_k
    std::vector<Cyclotomic> identity_coords;
    std::vector<Matrix> center;
    EndClassification classification;

    long dim() const { return static_cast<long>(basis.size()); }
    long center_dim() const { return static_cast<long>(center.size()); }

    /// Multiply in coordinates through the structure constants.
    std::vector<Cyclotomic> mul_coords(const std::vector<Cyclotomic>& x,
                                       const std::vector<Cyclotomic>& y) const {
        long k = dim();
        std::vector<Cyclotomic> out(k);
        for (long i = 0; i < k; ++i) {
            if (x[i].is_zero()) continue;
            for (long j = 0; j < k; ++j) {
                if (y[j].is_zero()) continue;
                Cyclotomic f = x[i] * y[j];
                for (long l = 0; l < k; ++l)
                    if (!structure[i][j][l].is_zero()) out[l] += f * structure[i][j][l];
            }
        }
        return out;
    }

    std::string classification_str() const {
        if (std::holds_alternative<FieldClass>(classification))
            return "Field(" + std::to_string(std::get<FieldClass>(classification).degree) + ")";
        if (std::holds_alternative<QuaternionClass>(classification)) {
            const auto& q = std::get<QuaternionClass>(classification);
            return "Quaternion(" + q.a.str() + "," + q.b.str() + "," +
                   (q.is_division ? "division" : "split") + ")";
        }
        const auto& u = std::get<UnclassifiedClass>(classification);
        return "Unclassified(dim=" + std::to_string(u.dim) +
               ",center=" + std::to_string(u.center_dim) + ")";
    }
};

namespace detail {

/// Minimal polynomial (monic, rational coefficients) of an algebra element
/// over Q, computed from successive powers in coordinates.
inline std::vector<Rational> algebra_min_poly_q(const EndAlgebra& A,
                                                const std::vector<Cyclotomic>& x) {
    long k = A.dim();
    std::vector<std::vector<Cyclotomic>> powers{A.identity_coords};
    RowSpan span(k, 1);
    auto as_row = [&](const std::vector<Cyclotomic>& v) {
        Matrix r(1, k, 1);
        for (long i = 0; i < k; ++i) r.at(0, i) = Cyclotomic(v[i].rational_value());
        return r;
    };
    span.insert(as_row(powers[0]));
    std::vector<Cyclotomic> cur = powers[0];
    for (long m = 1; m <= k; ++m) {
        cur = A.mul_coords(cur, x);
        if (!span.insert(as_row(cur))) {
            // cur = sum lambda_i powers[i]
            Matrix P(k, m, 1), rhs(k, 1, 1);
            for (long j = 0; j < m; ++j)
                for (long i = 0; i < k; ++i)
                    P.at(i, j) = Cyclotomic(powers[j][i].rational_value());
            for (long i = 0; i < k; ++i) rhs.at(i, 0) = Cyclotomic(cur[i].rational_value());
            Matrix lam = Matrix::solve(P, rhs);
            std::vector<Rational> poly(m + 1);
            poly[m] = Rational(1);
            for (long j = 0; j < m; ++j) poly[j] = -lam.at(j, 0).rational_value();
            return poly;
        }
        powers.push_back(cur);
    }
    throw error("internal: minimal polynomial not found within the algebra dimension");
}

/// Irreducibility over Q of a monic rational polynomial, degree <= 6, by an
/// exact bounded integer factor search.
inline bool poly_irreducible_q(const std::vector<Rational>& monic) {
    long m = static_cast<long>(monic.size()) - 1;
    if (m <= 0) return false;
    if (m == 1) return true;
    mpz_class den = 1;
    for (const auto& c : monic) den = den / gcd(den, c.den()) * c.den();
    std::vector<mpz_class> f(m + 1);
    for (long i = 0; i <= m; ++i) f[i] = Rational(monic[i] * Rational(den)).num();
    if (f[0] == 0) return false; // x divides
    auto divisors_of = [](const mpz_class& v) {
        std::vector<mpz_class> ds;
        mpz_class a = abs(v);
        for (mpz_class t = 1; t * t <= a; ++t)
            if (a % t == 0) {
                ds.push_back(t);
                if (t * t != a) ds.push_back(a / t);
            }
        return ds;
    };
    // rational roots p/q, p | f0, q | lead
    for (const mpz_class& pn : divisors_of(f[0]))
        for (const mpz_class& qn : divisors_of(f[m]))
            for (int sg : {1, -1}) {
                Rational r(sg * pn, qn);
                Rational v(0);
                for (long i = m; i >= 0; --i) v = v * r + Rational(f[i]);
                if (v.is_zero()) return false;
            }
    if (m <= 3) return true;
    // bounded search for integer factors of degree 2 .. m/2
    mpz_class norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    mpz_class bound;
    mpz_sqrt(bound.get_mpz_t(), norm2.get_mpz_t());
    bound = (bound + 1) * (1 << std::min<long>(m, 8));
    long B = bound.get_si();
    std::vector<mpz_class> lead_div = divisors_of(f[m]), const_div = divisors_of(f[0]);
    for (long dg = 2; dg <= m / 2; ++dg) {
        std::vector<long> mid(dg - 1, -B);
        bool more = true;
        while (more) {
            for (const mpz_class& lg : lead_div)
                for (const mpz_class& cg : const_div)
                    for (int s1 : {1, -1})
                        for (int s2 : {1, -1}) {
                            std::vector<mpz_class> g(dg + 1);
                            g[dg] = s1 * lg;
                            g[0] = s2 * cg;
                            for (long i = 1; i < dg; ++i) g[i] = mid[i - 1];
                            // exact division test f / g over Q
                            std::vector<Rational> rem(f.size());
                            for (std::size_t i = 0; i < f.size(); ++i) rem[i] = Rational(f[i]);
                            bool ok = true;
                            for (long i = m - dg; i >= 0 && ok; --i) {
                                Rational c = rem[i + dg] / Rational(g[dg]);
                                for (long j = 0; j <= dg; ++j) rem[i + j] -= c * Rational(g[j]);
                            }
                            for (long i = 0; i < dg && ok; ++i)
                                if (!rem[i].is_zero()) ok = false;
                            if (ok) return false;
                        }
            long i = 0;
            while (i < dg - 1 && mid[i] == B) mid[i++] = -B;
            if (i == dg - 1) more = false;
            else ++mid[i];
        }
    }
    return true;
}

/// Deterministic canonical (a, b) pair for a quaternion class over Q with the
/// given local invariants: smallest squarefree pair supported on the ramified
/// primes and 2, matched invariant-by-invariant.
inline std::pair<Rational, Rational> canonical_quaternion_pair(
    const Rational& a0, const Rational& b0,
    const std::vector<std::pair<Place, int>>& found) {
    std::vector<long> ram_primes{2};
    bool any = false;
    for (const auto& [v, s] : found)
        if (s < 0) {
            any = true;
            if (!v.infinite && v.p != 2) ram_primes.push_back(v.p);
        }
    if (!any) return {Rational(1), Rational(1)};
    std::sort(ram_primes.begin(), ram_primes.end());
    std::vector<long> mags{1};
    for (long p : ram_primes) {
        std::size_t sz = mags.size();
        for (std::size_t i = 0; i < sz; ++i) mags.push_back(mags[i] * p);
    }
    std::sort(mags.begin(), mags.end());
    std::vector<Rational> cands;
    for (long m : mags) {
        cands.push_back(Rational(-m));
        cands.push_back(Rational(m));
    }
    std::sort(cands.begin(), cands.end(), [](const Rational& x, const Rational& y) {
        Rational ax = x.abs(), ay = y.abs();
        if (ax != ay) return ax < ay;
        return x < y;
    });
    for (const Rational& a : cands)
        for (const Rational& b : cands)
            if (same_quaternion_class(a, b, a0, b0)) return {a, b};
    return {a0, b0}; // fall back to the found pair
}

} // namespace detail

/// Commutant of rho restricted to matrices with entries in its coefficient
/// field, with structure constants, center and classification.
inline EndAlgebra end_algebra(const Representation& rho) {
    long n = rho.conductor(), d = rho.dim();
    const Subfield& F = rho.coefficient_field();
    EndAlgebra A;

    if (F.is_whole_field()) {
        A.basis = intertwiner_space(rho, rho);
    } else {
        // solve the equivariance system over Q with F-coordinate unknowns
        long degF = F.degree(), p = euler_phi(n);
        const auto& gens = rho.group()->generators();
        long rows = static_cast<long>(gens.size()) * d * d * p;
        Matrix Aq(std::max<long>(rows, 1), d * d * degF, 1);
        long r0 = 0;
        for (long s : gens) {
            const Matrix& R = rho.matrix(s);
            for (long r = 0; r < d; ++r)
                for (long c = 0; c < d; ++c) {
                    // sum_k T[r][k] R[k][c] - R[r][k] T[k][c] = 0
                    for (long k = 0; k < d; ++k)
                        for (long l = 0; l < degF; ++l) {
                            if (!R.at(k, c).is_zero()) {
                                Cyclotomic coef = F.basis()[l] * R.at(k, c);
                                for (long i = 0; i < p; ++i)
                                    if (!coef.coeffs()[i].is_zero())
                                        Aq.at(r0 + i, (r * d + k) * degF + l) +=
                                            Cyclotomic(coef.coeffs()[i]);
                            }
                            if (!R.at(r, k).is_zero()) {
                                Cyclotomic coef = R.at(r, k) * F.basis()[l];
                                for (long i = 0; i < p; ++i)
                                    if (!coef.coeffs()[i].is_zero())
                                        Aq.at(r0 + i, (k * d + c) * degF + l) -=
                                            Cyclotomic(coef.coeffs()[i]);
                            }
                        }
                    r0 += p;
                }
        }
        // the nullspace is a Q-basis of the F-algebra; extract an F-basis by
        // greedy F-linear independence
        std::vector<Matrix> qspan;
        for (const Matrix& v : Aq.nullspace()) {
            Matrix T(d, d, n);
            for (long r = 0; r < d; ++r)
                for (long c = 0; c < d; ++c) {
                    Cyclotomic entry = Cyclotomic(0).lifted(n);
                    for (long l = 0; l < degF; ++l) {
                        Rational coef = v.at((r * d + c) * degF + l, 0).rational_value();
                        if (!coef.is_zero()) entry += Cyclotomic(coef) * F.basis()[l];
                    }
                    T.at(r, c) = entry;
                }
            qspan.push_back(std::move(T));
        }
        RowSpan fspan(d * d * p, 1);
        auto qcoords = [&](const Matrix& T) {
            Matrix row(1, d * d * p, 1);
            for (long r = 0; r < d; ++r)
                for (long c = 0; c < d; ++c)
                    for (long i = 0; i < p; ++i)
                        row.at(0, (r * d + c) * p + i) = T.at(r, c).coeffs()[i];
            return row;
        };
        for (const Matrix& T : qspan) {
            if (fspan.coordinates(qcoords(T))) continue; // already in the F-span
            A.basis.push_back(T);
            for (const Cyclotomic& f : F.basis()) fspan.insert(qcoords(f.lifted(n) * T));
        }
        if (static_cast<long>(A.basis.size()) * degF != static_cast<long>(qspan.size()))
            throw error("internal: commutant F-dimension bookkeeping failed");
    }

    long k = A.dim();
    if (k == 0) throw error("internal: commutant is zero");

    // structure constants and identity coordinates via one exact solve
    Matrix Bmat(d * d, k, n), rhs(d * d, k * k + 1, n);
    for (long i = 0; i < k; ++i)
        for (long r = 0; r < d; ++r)
            for (long c = 0; c < d; ++c) Bmat.at(r * d + c, i) = A.basis[i].at(r, c);
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) {
            Matrix P = A.basis[i] * A.basis[j];
            for (long r = 0; r < d; ++r)
                for (long c = 0; c < d; ++c) rhs.at(r * d + c, i * k + j) = P.at(r, c);
        }
    for (long r = 0; r < d; ++r) rhs.at(r * d + r, k * k) = Cyclotomic(1).lifted(n);
    Matrix X = Matrix::solve(Bmat, rhs);
    A.structure.assign(k, std::vector<std::vector<Cyclotomic>>(k, std::vector<Cyclotomic>(k)));
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j)
            for (long l = 0; l < k; ++l) A.structure[i][j][l] = X.at(l, i * k + j);
    A.identity_coords.assign(k, Cyclotomic(0));
    for (long l = 0; l < k; ++l) A.identity_coords[l] = X.at(l, k * k);

    // center: x with x B_j = B_j x for all j
    Matrix C(k * k, k, n);
    for (long j = 0; j < k; ++j)
        for (long l = 0; l < k; ++l)
            for (long i = 0; i < k; ++i)
                C.at(j * k + l, i) = A.structure[i][j][l] - A.structure[j][i][l];
    for (const Matrix& v : C.nullspace()) {
        Matrix Z(d, d, n);
        for (long i = 0; i < k; ++i)
            if (!v.at(i, 0).is_zero()) Z = Z + v.at(i, 0) * A.basis[i];
        A.center.push_back(std::move(Z));
    }
    long z = A.center_dim();

    // classification
    bool commutative = (z == k);
    if (k == 1) {
        A.classification = FieldClass{1};
        return A;
    }
    if (commutative && F.is_rationals()) {
        // primitive element ladder, then irreducibility of its minimal poly
        std::vector<std::vector<Cyclotomic>> candidates;
        for (long i = 0; i < k; ++i) {
            std::vector<Cyclotomic> e(k, Cyclotomic(0));
            e[i] = Cyclotomic(1);
            candidates.push_back(e);
        }
        for (long i = 0; i < k; ++i)
            for (long j = i + 1; j < k; ++j) {
                std::vector<Cyclotomic> e(k, Cyclotomic(0));
                e[i] = Cyclotomic(1);
                e[j] = Cyclotomic(1);
                candidates.push_back(e);
            }
        for (const auto& t : candidates) {
            auto mp = detail::algebra_min_poly_q(A, t);
            if (static_cast<long>(mp.size()) - 1 != k) continue;
            if (k <= 6) {
                A.classification = detail::poly_irreducible_q(mp)
                                       ? EndClassification(FieldClass{k})
                                       : EndClassification(UnclassifiedClass{k, z});
                return A;
            }
        }
        A.classification = UnclassifiedClass{k, z};
        return A;
    }
    if (!commutative && k == 4 && z == 1 && F.is_rationals()) {
        // quaternion pair: trace-zero anticommuting units
        auto scalar_square = [&](const std::vector<Cyclotomic>& x) -> std::optional<Rational> {
            auto sq = A.mul_coords(x, x);
            // sq must be proportional to the identity coords
            long m0 = -1;
            for (long i = 0; i < k; ++i)
                if (!A.identity_coords[i].is_zero()) { m0 = i; break; }
            Cyclotomic s = sq[m0] / A.identity_coords[m0];
            for (long i = 0; i < k; ++i)
                if (sq[i] != s * A.identity_coords[i]) return std::nullopt;
            auto r = s.to_rational();
            if (!r) return std::nullopt;
            return *r;
        };
        // reduced trace via left multiplication, Trd = tr(L_x) / 2
        std::vector<Cyclotomic> trd(k);
        for (long i = 0; i < k; ++i) {
            Cyclotomic t = Cyclotomic(0).lifted(n);
            for (long j = 0; j < k; ++j) t += A.structure[i][j][j];
            trd[i] = t * Cyclotomic(Rational(1, 2));
        }
        Matrix Trow(1, k, n);
        for (long i = 0; i < k; ++i) Trow.at(0, i) = trd[i];
        std::vector<Matrix> V0 = Trow.nullspace(); // 3 coordinate vectors
        auto coords_of = [&](const Matrix& v) {
            std::vector<Cyclotomic> x(k);
            for (long i = 0; i < k; ++i) x[i] = v.at(i, 0);
            return x;
        };
        auto ladder = [&](const std::vector<Matrix>& basis) {
            std::vector<std::vector<Cyclotomic>> out;
            for (const auto& v : basis) out.push_back(coords_of(v));
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = i + 1; j < basis.size(); ++j) {
                    auto x = coords_of(basis[i]), y = coords_of(basis[j]);
                    for (long l = 0; l < k; ++l) x[l] += y[l];
                    out.push_back(x);
                }
            return out;
        };
        std::optional<std::vector<Cyclotomic>> u;
        std::optional<Rational> a;
        for (const auto& cand : ladder(V0)) {
            auto s = scalar_square(cand);
            if (s && !s->is_zero()) {
                u = cand;
                a = s;
                break;
            }
        }
        if (u) {
            // {x in V0 : ux + xu = 0}
            long v0dim = static_cast<long>(V0.size());
            Matrix AC(k, v0dim, n);
            for (long j = 0; j < v0dim; ++j) {
                auto x = coords_of(V0[j]);
                auto anti = A.mul_coords(*u, x);
                auto anti2 = A.mul_coords(x, *u);
                for (long l = 0; l < k; ++l) AC.at(l, j) = anti[l] + anti2[l];
            }
            std::vector<Matrix> Wc = AC.nullspace();
            std::vector<Matrix> W;
            for (const auto& w : Wc) {
                Matrix amb(k, 1, n);
                for (long j = 0; j < v0dim; ++j)
                    for (long l = 0; l < k; ++l)
                        amb.at(l, 0) += w.at(j, 0) * V0[j].at(l, 0);
                W.push_back(std::move(amb));
            }
            std::optional<Rational> b;
            for (const auto& cand : ladder(W)) {
                auto s = scalar_square(cand);
                if (s && !s->is_zero()) {
                    b = s;
                    break;
                }
            }
            if (b) {
                Rational asf{squarefree_part(a->num() * a->den())};
                Rational bsf{squarefree_part(b->num() * b->den())};
                auto inv0 = hilbert_invariants(asf, bsf);
                auto [ca, cb] = detail::canonical_quaternion_pair(asf, bsf, inv0);
                auto inv = hilbert_invariants(ca, cb);
                bool division = false;
                for (const auto& [v, s] : inv)
                    if (s < 0) division = true;
                A.classification = QuaternionClass{ca, cb, division, std::move(inv)};
                return A;
            }
        }
        A.classification = UnclassifiedClass{k, z};
        return A;
    }
    A.classification = UnclassifiedClass{k, z};
    return A;
}

enum class Simplicity { Simple, NotSimple, Undecided };

inline const char* simplicity_str(Simplicity s) {
    switch (s) {
        case Simplicity::Simple: return "simple";
        case Simplicity::NotSimple: return "not_simple";
        default: return "undecided";
    }
}

/// Is rho_F simple over its coefficient field? Division commutant decides;
/// otherwise fall back to the constituent orbit structure of its character.
inline Simplicity is_simple_over(const Representation& rho,
                                 const std::vector<Character>& table) {
    EndAlgebra A = end_algebra(rho);
    if (std::holds_alternative<FieldClass>(A.classification)) return Simplicity::Simple;
    if (std::holds_alternative<QuaternionClass>(A.classification))
        return std::get<QuaternionClass>(A.classification).is_division ? Simplicity::Simple
                                                                       : Simplicity::NotSimple;
    if (!rho.coefficient_field().is_rationals()) return Simplicity::Undecided;
    Character chi = character_of(rho);
    std::vector<long> mult(table.size());
    std::vector<bool> in_support(table.size(), false);
    for (std::size_t i = 0; i < table.size(); ++i) {
        Cyclotomic m = inner_product(chi, table[i]);
        mult[i] = static_cast<long>(m.rational_value().num().get_si());
        in_support[i] = mult[i] != 0;
    }
    // Galois orbits of supported rows
    std::vector<long> orbit_of(table.size(), -1);
    long orbits_in_support = 0, support_mult = -1;
    bool mixed = false;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (orbit_of[i] >= 0 || !in_support[i]) continue;
        ++orbits_in_support;
        for (long kexp : units_mod(table[i].conductor())) {
            Character tw = table[i].twisted(kexp);
            for (std::size_t j = 0; j < table.size(); ++j)
                if (table[j] == tw) orbit_of[j] = static_cast<long>(i);
        }
        if (support_mult < 0) support_mult = mult[i];
        else if (support_mult != mult[i]) mixed = true;
    }
    if (orbits_in_support > 1 || mixed) return Simplicity::NotSimple;
    if (support_mult == 1) return Simplicity::Simple;
    return Simplicity::Undecided;
}

} // namespace cyclodescent
