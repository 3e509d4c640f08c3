#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "numtheory.hpp"
#include "rational.hpp"

namespace cyclodescent {

namespace detail {

/// Per-conductor data: the n-th cyclotomic polynomial and reduction rows
/// expressing zeta_n^k in the power basis for 0 <= k < max(n, 2*phi-1).
struct ConductorData {
    long n = 1;
    long phi = 1;
    std::vector<mpz_class> poly;              // Phi_n, monic, degree phi
    std::vector<std::vector<mpz_class>> pow;  // pow[k] = zeta^k in basis

    explicit ConductorData(long conductor) : n(conductor), phi(euler_phi(conductor)) {
        poly = cyclotomic_poly(n);
        long maxpow = std::max(n, 2 * phi - 1);
        pow.assign(maxpow, std::vector<mpz_class>(phi, 0));
        pow[0][0] = 1;
        for (long k = 1; k < maxpow; ++k) {
            // shift previous row by one, fold the overflow with Phi_n (monic)
            mpz_class carry = pow[k - 1][phi - 1];
            for (long i = phi - 1; i >= 1; --i) pow[k][i] = pow[k - 1][i - 1];
            pow[k][0] = 0;
            if (carry != 0)
                for (long i = 0; i < phi; ++i) pow[k][i] -= carry * poly[i];
        }
    }

    static std::vector<mpz_class> cyclotomic_poly(long n) {
        // x^n - 1 divided by the product of Phi_d for proper divisors d
        std::vector<mpz_class> num(n + 1, 0);
        num[0] = -1;
        num[n] = 1;
        for (long d : divisors(n)) {
            if (d == n) continue;
            num = exact_div(num, cyclotomic_poly(d));
        }
        return num;
    }

    static std::vector<mpz_class> exact_div(std::vector<mpz_class> a,
                                            const std::vector<mpz_class>& b) {
        long db = static_cast<long>(b.size()) - 1;
        while (!a.empty() && a.back() == 0) a.pop_back();
        long da = static_cast<long>(a.size()) - 1;
        std::vector<mpz_class> q(da - db + 1, 0);
        for (long i = da - db; i >= 0; --i) {
            mpz_class c = a[i + db] / b[db];
            q[i] = c;
            for (long j = 0; j <= db; ++j) a[i + j] -= c * b[j];
        }
        return q;
    }
};

inline const ConductorData& conductor_data(long n) {
    static std::map<long, std::unique_ptr<ConductorData>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<ConductorData>(n)).first;
    return *it->second;
}

} // namespace detail

/// Exact element of Q(zeta_n) in the power basis zeta^0 .. zeta^{phi(n)-1},
/// reduced modulo the n-th cyclotomic polynomial. Immutable value type.
class Cyclotomic {
public:
    Cyclotomic() : n_(1), c_(1) {}
    Cyclotomic(const Rational& r) : n_(1), c_{r} {}
    Cyclotomic(long v) : n_(1), c_{Rational(v)} {}

    Cyclotomic(long n, std::vector<Rational> coeffs) : n_(n), c_(std::move(coeffs)) {
        if (n_ < 1) throw error("conductor must be positive");
        if (static_cast<long>(c_.size()) != phi())
            throw error("coefficient vector must have length phi(n)");
    }

    /// zeta_n^k
    static Cyclotomic zeta(long n, long k = 1) {
        const auto& cd = detail::conductor_data(n);
        std::vector<Rational> c(cd.phi);
        const auto& row = cd.pow[mod_pos(k, n)];
        for (long i = 0; i < cd.phi; ++i) c[i] = Rational(row[i]);
        return Cyclotomic(n, std::move(c));
    }

    long conductor() const { return n_; }
    long phi() const { return detail::conductor_data(n_).phi; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }

    std::optional<Rational> to_rational() const {
        if (!is_rational()) return std::nullopt;
        return c_[0];
    }

    Rational rational_value() const {
        auto r = to_rational();
        if (!r) throw error("cyclotomic value is not rational: " + str());
        return *r;
    }

    /// Re-express at conductor m, where n | m.
    Cyclotomic lifted(long m) const {
        if (m == n_) return *this;
        if (m % n_ != 0)
            throw conductor_mismatch("cannot lift conductor " + std::to_string(n_) +
                                     " to " + std::to_string(m));
        const auto& cd = detail::conductor_data(m);
        std::vector<Rational> out(cd.phi);
        long step = m / n_;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            const auto& row = cd.pow[(static_cast<long>(i) * step) % m];
            for (long j = 0; j < cd.phi; ++j)
                if (row[j] != 0) out[j] += c_[i] * Rational(row[j]);
        }
        return Cyclotomic(m, std::move(out));
    }

    /// Try to re-express at conductor m, where m | n; fails when the element
    /// does not lie in Q(zeta_m).
    std::optional<Cyclotomic> reduced_to(long m) const {
        if (m == n_) return *this;
        if (n_ % m != 0) return std::nullopt;
        const auto& cd = detail::conductor_data(n_);
        long pm = euler_phi(m);
        // columns: zeta_m^j expressed in the zeta_n basis
        std::vector<std::vector<Rational>> A(cd.phi, std::vector<Rational>(pm + 1));
        long step = n_ / m;
        for (long j = 0; j < pm; ++j) {
            const auto& row = cd.pow[(j * step) % n_];
            for (long i = 0; i < cd.phi; ++i) A[i][j] = Rational(row[i]);
        }
        for (long i = 0; i < cd.phi; ++i) A[i][pm] = c_[i];
        // solve A[:, :pm] x = A[:, pm]
        long rank = 0;
        std::vector<long> pivot_of_col(pm, -1);
        for (long col = 0; col < pm && rank < cd.phi; ++col) {
            long piv = -1;
            for (long r = rank; r < cd.phi; ++r)
                if (!A[r][col].is_zero()) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(A[rank], A[piv]);
            Rational inv = A[rank][col].inverse();
            for (long j = col; j <= pm; ++j) A[rank][j] *= inv;
            for (long r = 0; r < cd.phi; ++r) {
                if (r == rank || A[r][col].is_zero()) continue;
                Rational f = A[r][col];
                for (long j = col; j <= pm; ++j) A[r][j] -= f * A[rank][j];
            }
            pivot_of_col[col] = rank;
            ++rank;
        }
        for (long r = rank; r < cd.phi; ++r)
            if (!A[r][pm].is_zero()) return std::nullopt;
        std::vector<Rational> out(pm);
        for (long col = 0; col < pm; ++col)
            if (pivot_of_col[col] >= 0) out[col] = A[pivot_of_col[col]][pm];
        return Cyclotomic(m, std::move(out));
    }

    /// Smallest conductor m | n at which this element can be written.
    long value_conductor() const {
        for (long m : divisors(n_))
            if (reduced_to(m)) return m;
        return n_;
    }

    Cyclotomic reduced() const {
        return *reduced_to(value_conductor());
    }

    Cyclotomic operator-() const {
        std::vector<Rational> out(c_);
        for (auto& x : out) x = -x;
        return Cyclotomic(n_, std::move(out));
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = align(a, b);
        const auto& cd = detail::conductor_data(x.n_);
        long p = cd.phi;
        std::vector<Rational> conv(2 * p - 1);
        for (long i = 0; i < p; ++i) {
            if (x.c_[i].is_zero()) continue;
            for (long j = 0; j < p; ++j) {
                if (y.c_[j].is_zero()) continue;
                conv[i + j] += x.c_[i] * y.c_[j];
            }
        }
        std::vector<Rational> out(p);
        for (long k = 0; k < 2 * p - 1; ++k) {
            if (conv[k].is_zero()) continue;
            if (k < p) {
                out[k] += conv[k];
            } else {
                const auto& row = cd.pow[k];
                for (long i = 0; i < p; ++i)
                    if (row[i] != 0) out[i] += conv[k] * Rational(row[i]);
            }
        }
        return Cyclotomic(x.n_, std::move(out));
    }
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
        return a * b.inverse();
    }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

    /// Inverse via extended Euclid in Q[x] against Phi_n.
    Cyclotomic inverse() const {
        if (is_zero()) throw division_by_zero();
        const auto& cd = detail::conductor_data(n_);
        std::vector<Rational> r0(cd.poly.size()), r1(c_);
        for (std::size_t i = 0; i < cd.poly.size(); ++i) r0[i] = Rational(cd.poly[i]);
        std::vector<Rational> s0{}, s1{Rational(1)};
        trim(r1);
        while (!r1.empty()) {
            auto [q, rem] = poly_divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(rem);
            auto qs1 = poly_mul(q, s1);
            std::vector<Rational> s2 = poly_sub(s0, qs1);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 = gcd, a nonzero constant since Phi_n is irreducible
        if (r0.size() != 1)
            throw error("internal: cyclotomic gcd not constant");
        Rational scale = r0[0].inverse();
        std::vector<Rational> out(phi());
        for (std::size_t i = 0; i < s0.size() && i < out.size(); ++i)
            out[i] = s0[i] * scale;
        // s0 may have degree >= phi in principle; reduce defensively
        if (s0.size() > out.size()) {
            Cyclotomic acc(n_, out);
            const auto& pw = detail::conductor_data(n_).pow;
            for (std::size_t k = out.size(); k < s0.size(); ++k) {
                if (s0[k].is_zero()) continue;
                std::vector<Rational> term(phi());
                for (long i = 0; i < phi(); ++i) term[i] = s0[k] * scale * Rational(pw[k][i]);
                acc += Cyclotomic(n_, term);
            }
            return acc;
        }
        return Cyclotomic(n_, std::move(out));
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.n_ == b.n_) return a.c_ == b.c_;
        auto [x, y] = align(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    /// Deterministic total order (conductor-aligned, lexicographic coefficients).
    static int compare(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = align(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] < y.c_[i]) return -1;
            if (x.c_[i] > y.c_[i]) return 1;
        }
        return 0;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!first) os << " + ";
            if (i == 0) os << c_[i];
            else {
                os << c_[i] << "*z" << n_;
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) {
        return os << x.str();
    }

    static std::pair<Cyclotomic, Cyclotomic> align(const Cyclotomic& a, const Cyclotomic& b) {
        long m = lcm_long(a.n_, b.n_);
        return {a.lifted(m), b.lifted(m)};
    }

private:
    static void trim(std::vector<Rational>& p) {
        while (!p.empty() && p.back().is_zero()) p.pop_back();
    }
    static std::vector<Rational> poly_mul(const std::vector<Rational>& a,
                                          const std::vector<Rational>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rational> r(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        trim(r);
        return r;
    }
    static std::vector<Rational> poly_sub(const std::vector<Rational>& a,
                                          const std::vector<Rational>& b) {
        std::vector<Rational> r(std::max(a.size(), b.size()));
        for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        trim(r);
        return r;
    }
    static std::pair<std::vector<Rational>, std::vector<Rational>> poly_divmod(
        std::vector<Rational> a, const std::vector<Rational>& b) {
        std::vector<Rational> q(a.size() > b.size() ? a.size() - b.size() + 1 : 1);
        Rational lead = b.back().inverse();
        while (a.size() >= b.size() && !a.empty()) {
            Rational c = a.back() * lead;
            std::size_t shift = a.size() - b.size();
            q[shift] = c;
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
            trim(a);
            if (a.size() < b.size()) break;
        }
        trim(q);
        return {q, a};
    }

    long n_;
    std::vector<Rational> c_;
};

/// Field automorphism of Q(zeta_n), zeta |-> zeta^k with gcd(k, n) = 1.
class GaloisAutomorphism {
public:
    GaloisAutomorphism(long n, long k) : n_(n), k_(n <= 2 ? 1 : mod_pos(k, n)) {
        if (n_ < 1) throw error("conductor must be positive");
        if (n_ > 2 && std::gcd(k_, n_) != 1)
            throw error("exponent must be a unit mod the conductor");
        if (k_ == 0) k_ = 1;
    }

    long conductor() const { return n_; }
    long exponent() const { return k_; }
    bool is_identity() const { return k_ == 1; }

    Cyclotomic operator()(const Cyclotomic& x) const {
        if (x.conductor() != n_)
            throw conductor_mismatch("automorphism conductor " + std::to_string(n_) +
                                     " vs element conductor " + std::to_string(x.conductor()));
        if (k_ == 1) return x;
        const auto& cd = detail::conductor_data(n_);
        std::vector<Rational> out(cd.phi);
        for (long i = 0; i < cd.phi; ++i) {
            if (x.coeffs()[i].is_zero()) continue;
            const auto& row = cd.pow[(i * k_) % n_];
            for (long j = 0; j < cd.phi; ++j)
                if (row[j] != 0) out[j] += x.coeffs()[i] * Rational(row[j]);
        }
        return Cyclotomic(n_, std::move(out));
    }

    /// Composition: apply `o` first, then this. Exponents multiply mod n.
    GaloisAutomorphism after(const GaloisAutomorphism& o) const {
        if (n_ != o.n_) throw conductor_mismatch("automorphism conductors differ");
        if (n_ <= 2) return *this;
        return GaloisAutomorphism(n_, (k_ * o.k_) % n_);
    }

    GaloisAutomorphism inverse() const {
        if (n_ <= 2) return *this;
        return GaloisAutomorphism(n_, inv_mod(k_, n_));
    }

private:
    long n_;
    long k_;
};

/// Apply zeta |-> zeta^k on x's own conductor.
inline Cyclotomic galois(const Cyclotomic& x, long k) {
    return GaloisAutomorphism(x.conductor(), k)(x);
}

} // namespace cyclodescent
