#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"

namespace cyclodescent {

/// Dense matrix over a cyclotomic field. All entries share one conductor.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0), n_(1) {}

    Matrix(long rows, long cols, long conductor = 1)
        : rows_(rows), cols_(cols), n_(conductor),
          e_(rows * cols, Cyclotomic(0).lifted(conductor)) {}

    static Matrix identity(long d, long conductor = 1) {
        Matrix m(d, d, conductor);
        for (long i = 0; i < d; ++i) m.at(i, i) = Cyclotomic(1).lifted(conductor);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<Cyclotomic>>& rows) {
        if (rows.empty() || rows[0].empty()) throw shape_mismatch("empty matrix literal");
        long n = 1;
        for (const auto& r : rows)
            for (const auto& x : r) n = lcm_long(n, x.conductor());
        Matrix m(rows.size(), rows[0].size(), n);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows[0].size()) throw shape_mismatch("ragged matrix literal");
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                m.at(i, j) = rows[i][j].lifted(n);
        }
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    long conductor() const { return n_; }

    const Cyclotomic& at(long i, long j) const { return e_[i * cols_ + j]; }
    Cyclotomic& at(long i, long j) { return e_[i * cols_ + j]; }

    Matrix lifted(long m) const {
        if (m == n_) return *this;
        Matrix out(rows_, cols_, m);
        for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = e_[k].lifted(m);
        return out;
    }

    /// Try to re-express at a smaller conductor m | n.
    std::optional<Matrix> reduced_to(long m) const {
        Matrix out(rows_, cols_, m);
        for (std::size_t k = 0; k < e_.size(); ++k) {
            auto r = e_[k].reduced_to(m);
            if (!r) return std::nullopt;
            out.e_[k] = *r;
        }
        return out;
    }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        return *this == identity(rows_, n_);
    }

    /// If this equals c*I, return c.
    std::optional<Cyclotomic> scalar_of() const {
        if (rows_ != cols_ || rows_ == 0) return std::nullopt;
        const Cyclotomic& c = at(0, 0);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) {
                if (i == j) {
                    if (at(i, j) != c) return std::nullopt;
                } else if (!at(i, j).is_zero()) {
                    return std::nullopt;
                }
            }
        return c;
    }

    Cyclotomic trace() const {
        if (rows_ != cols_) throw shape_mismatch("trace of non-square matrix");
        Cyclotomic t = Cyclotomic(0).lifted(n_);
        for (long i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    Matrix transposed() const {
        Matrix out(cols_, rows_, n_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    /// Entrywise field automorphism.
    Matrix twisted(const GaloisAutomorphism& s) const {
        Matrix out(rows_, cols_, n_);
        for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = s(e_[k]);
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        auto [x, y] = aligned(a, b);
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw shape_mismatch("matrix addition shape mismatch");
        for (std::size_t k = 0; k < x.e_.size(); ++k) x.e_[k] += y.e_[k];
        return x;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        auto [x, y] = aligned(a, b);
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw shape_mismatch("matrix subtraction shape mismatch");
        for (std::size_t k = 0; k < x.e_.size(); ++k) x.e_[k] -= y.e_[k];
        return x;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        auto [x, y] = aligned(a, b);
        if (x.cols_ != y.rows_) throw shape_mismatch("matrix product shape mismatch");
        Matrix out(x.rows_, y.cols_, x.n_);
        for (long i = 0; i < x.rows_; ++i)
            for (long k = 0; k < x.cols_; ++k) {
                const Cyclotomic& xik = x.at(i, k);
                if (xik.is_zero()) continue;
                for (long j = 0; j < y.cols_; ++j) {
                    if (y.at(k, j).is_zero()) continue;
                    out.at(i, j) += xik * y.at(k, j);
                }
            }
        return out;
    }

    friend Matrix operator*(const Cyclotomic& c, const Matrix& a) {
        long n = lcm_long(c.conductor(), a.n_);
        Matrix out = a.lifted(n);
        Cyclotomic cl = c.lifted(n);
        for (auto& x : out.e_) x *= cl;
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        auto [x, y] = aligned(a, b);
        return x.e_ == y.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix kron(const Matrix& o) const {
        auto [x, y] = aligned(*this, o);
        Matrix out(x.rows_ * y.rows_, x.cols_ * y.cols_, x.n_);
        for (long i = 0; i < x.rows_; ++i)
            for (long j = 0; j < x.cols_; ++j) {
                if (x.at(i, j).is_zero()) continue;
                for (long r = 0; r < y.rows_; ++r)
                    for (long c = 0; c < y.cols_; ++c)
                        out.at(i * y.rows_ + r, j * y.cols_ + c) = x.at(i, j) * y.at(r, c);
            }
        return out;
    }

    Matrix direct_sum(const Matrix& o) const {
        auto [x, y] = aligned(*this, o);
        Matrix out(x.rows_ + y.rows_, x.cols_ + y.cols_, x.n_);
        for (long i = 0; i < x.rows_; ++i)
            for (long j = 0; j < x.cols_; ++j) out.at(i, j) = x.at(i, j);
        for (long i = 0; i < y.rows_; ++i)
            for (long j = 0; j < y.cols_; ++j) out.at(x.rows_ + i, x.cols_ + j) = y.at(i, j);
        return out;
    }

    struct Echelon;

    /// Reduced row echelon form. Pivot: first nonzero entry in column order.
    Echelon rref() const;

    long rank() const;

    /// Exact basis of the right kernel, one column vector per basis element.
    std::vector<Matrix> nullspace() const;

    Matrix inverse() const;

    bool is_invertible() const {
        if (rows_ != cols_) return false;
        return rank() == rows_;
    }

    /// Solve A X = B exactly; B may have several columns. Throws when the
    /// system is inconsistent.
    static Matrix solve(const Matrix& A, const Matrix& B);

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        for (long i = 0; i < m.rows_; ++i) {
            os << (i == 0 ? "[" : " ") << "[";
            for (long j = 0; j < m.cols_; ++j)
                os << m.at(i, j) << (j + 1 == m.cols_ ? "" : ", ");
            os << "]" << (i + 1 == m.rows_ ? "]" : "\n");
        }
        return os;
    }

    static std::pair<Matrix, Matrix> aligned(const Matrix& a, const Matrix& b) {
        long n = lcm_long(a.n_, b.n_);
        return {a.lifted(n), b.lifted(n)};
    }

private:
    long rows_, cols_, n_;
    std::vector<Cyclotomic> e_;
};

struct Matrix::Echelon {
    Matrix R;
    long rank = 0;
    std::vector<long> pivots;
};

inline Matrix::Echelon Matrix::rref() const {
    Echelon out{*this, 0, {}};
    Matrix& R = out.R;
    long r = 0;
    for (long col = 0; col < cols_ && r < rows_; ++col) {
        long piv = -1;
        for (long i = r; i < rows_; ++i)
            if (!R.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (long j = 0; j < cols_; ++j) std::swap(R.at(piv, j), R.at(r, j));
        Cyclotomic inv = R.at(r, col).inverse();
        for (long j = col; j < cols_; ++j)
            if (!R.at(r, j).is_zero()) R.at(r, j) *= inv;
        for (long i = 0; i < rows_; ++i) {
            if (i == r || R.at(i, col).is_zero()) continue;
            Cyclotomic f = R.at(i, col);
            for (long j = col; j < cols_; ++j) {
                if (R.at(r, j).is_zero()) continue;
                R.at(i, j) -= f * R.at(r, j);
            }
        }
        out.pivots.push_back(col);
        ++r;
    }
    out.rank = r;
    return out;
}

inline long Matrix::rank() const { return rref().rank; }

inline std::vector<Matrix> Matrix::nullspace() const {
    Echelon e = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (long p : e.pivots) is_pivot[p] = true;
    std::vector<Matrix> basis;
    for (long free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        Matrix v(cols_, 1, n_);
        v.at(free, 0) = Cyclotomic(1).lifted(n_);
        for (long r = 0; r < e.rank; ++r)
            v.at(e.pivots[r], 0) = -e.R.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw shape_mismatch("inverse of non-square matrix");
    Matrix aug(rows_, 2 * cols_, n_);
    for (long i = 0; i < rows_; ++i) {
        for (long j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = Cyclotomic(1).lifted(n_);
    }
    Echelon e = aug.rref();
    if (e.rank < rows_) throw singular_matrix();
    for (long r = 0; r < e.rank; ++r)
        if (e.pivots[r] != r) throw singular_matrix();
    Matrix out(rows_, cols_, n_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) out.at(i, j) = e.R.at(i, cols_ + j);
    return out;
}

inline Matrix Matrix::solve(const Matrix& A, const Matrix& B) {
    auto [a, b] = aligned(A, B);
    if (a.rows_ != b.rows_) throw shape_mismatch("solve: row mismatch");
    Matrix aug(a.rows_, a.cols_ + b.cols_, a.n_);
    for (long i = 0; i < a.rows_; ++i) {
        for (long j = 0; j < a.cols_; ++j) aug.at(i, j) = a.at(i, j);
        for (long j = 0; j < b.cols_; ++j) aug.at(i, a.cols_ + j) = b.at(i, j);
    }
    Echelon e = aug.rref();
    Matrix X(a.cols_, b.cols_, a.n_);
    for (long r = 0; r < e.rank; ++r) {
        if (e.pivots[r] >= a.cols_) throw error("solve: inconsistent linear system");
        for (long j = 0; j < b.cols_; ++j)
            X.at(e.pivots[r], j) = e.R.at(r, a.cols_ + j);
    }
    return X;
}

/// Incremental echelon span, used to extract bases from spanning sets and to
/// compute coordinates with respect to the extracted basis.
class RowSpan {
public:
    explicit RowSpan(long width, long conductor = 1) : width_(width), n_(conductor) {}

    /// Insert a row vector (as 1 x width matrix); returns true if it enlarged
    /// the span.
    bool insert(const Matrix& row) {
        Matrix r = row.lifted(n_ = lcm_long(n_, row.conductor()));
        for (auto& [piv, b] : rows_) {
            if (b.conductor() != r.conductor()) b = b.lifted(r.conductor());
            if (!r.at(0, piv).is_zero()) {
                Cyclotomic f = r.at(0, piv);
                for (long j = 0; j < width_; ++j)
                    if (!b.at(0, j).is_zero()) r.at(0, j) -= f * b.at(0, j);
            }
        }
        long piv = -1;
        for (long j = 0; j < width_; ++j)
            if (!r.at(0, j).is_zero()) { piv = j; break; }
        if (piv < 0) return false;
        Cyclotomic inv = r.at(0, piv).inverse();
        for (long j = 0; j < width_; ++j)
            if (!r.at(0, j).is_zero()) r.at(0, j) *= inv;
        // keep fully reduced: eliminate the new pivot from existing rows
        for (auto& [p, b] : rows_) {
            if (!b.at(0, piv).is_zero()) {
                Cyclotomic f = b.at(0, piv);
                for (long j = 0; j < width_; ++j)
                    if (!r.at(0, j).is_zero()) b.at(0, j) -= f * r.at(0, j);
            }
        }
        rows_.emplace_back(piv, std::move(r));
        return true;
    }

    long dim() const { return static_cast<long>(rows_.size()); }

    /// Coordinates of v in the echelon basis; nullopt when v is outside.
    std::optional<std::vector<Cyclotomic>> coordinates(const Matrix& v) const {
        long n = lcm_long(n_, v.conductor());
        Matrix r = v.lifted(n);
        std::vector<Cyclotomic> coords(rows_.size(), Cyclotomic(0).lifted(n));
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const auto& [piv, b] = rows_[k];
            Cyclotomic c = r.at(0, piv);
            if (c.is_zero()) continue;
            coords[k] = c;
            Matrix bl = b.lifted(n);
            for (long j = 0; j < width_; ++j)
                if (!bl.at(0, j).is_zero()) r.at(0, j) -= c * bl.at(0, j);
        }
        if (!r.is_zero()) return std::nullopt;
        return coords;
    }

    /// Echelon basis rows in insertion-reduced order, sorted by pivot.
    std::vector<Matrix> basis() const {
        std::vector<std::pair<long, Matrix>> sorted = rows_;
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Matrix> out;
        out.reserve(sorted.size());
        for (auto& [p, b] : sorted) out.push_back(b);
        return out;
    }

private:
    long width_;
    long n_;
    std::vector<std::pair<long, Matrix>> rows_; // (pivot, normalized row)
};

} // namespace cyclodescent
