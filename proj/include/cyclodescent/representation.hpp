#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "character.hpp"
#include "group.hpp"
#include "matrix.hpp"
#include "subfield.hpp"

namespace cyclodescent {

/// Exact matrix representation of a finite group over Q(zeta_n): one
/// invertible d x d matrix per group element. The coefficient field records
/// the subfield of Q(zeta_n) the entries are known to lie in (the whole field
/// unless the representation came out of a descent or restriction).
class Representation {
public:
    Representation(GroupPtr group, std::vector<Matrix> matrices,
                   std::optional<Subfield> coefficient_field = std::nullopt)
        : group_(std::move(group)), mats_(std::move(matrices)) {
        if (group_->order() < 2)
            throw validation_error("degenerate input: trivial group");
        if (mats_.size() != static_cast<std::size_t>(group_->order()))
            throw validation_error("need one matrix per group element");
        dim_ = mats_[0].rows();
        if (dim_ < 1) throw validation_error("degenerate input: dimension zero");
        n_ = 1;
        for (const auto& m : mats_) {
            if (m.rows() != dim_ || m.cols() != dim_)
                throw validation_error("matrices must be square of equal size");
            n_ = lcm_long(n_, m.conductor());
        }
        for (auto& m : mats_) m = m.lifted(n_);
        coeff_ = coefficient_field ? *coefficient_field : whole_field(n_);
        if (coeff_.conductor() != n_) {
            if (n_ % coeff_.conductor() == 0) {
                coeff_ = lift_subfield(coeff_, n_);
            } else {
                throw conductor_mismatch("coefficient field conductor mismatch");
            }
        }
        check_homomorphism();
    }

    /// Build from matrices for the group's generating set, filling the rest
    /// along the breadth-first words.
    static Representation from_generators(const GroupPtr& group,
                                          const std::vector<Matrix>& gen_matrices,
                                          std::optional<Subfield> coeff = std::nullopt) {
        const auto& gens = group->generators();
        if (gens.size() != gen_matrices.size())
            throw validation_error("need one matrix per group generator");
        long n = 1, d = gen_matrices.empty() ? 1 : gen_matrices[0].rows();
        for (const auto& m : gen_matrices) n = lcm_long(n, m.conductor());
        std::vector<Matrix> mats(group->order(), Matrix::identity(d, n));
        const auto& par = group->bfs_parents();
        // fill in BFS order: element = parent * generator
        std::vector<long> order_of_fill;
        std::vector<bool> filled(group->order(), false);
        filled[group->identity()] = true;
        bool progress = true;
        while (progress) {
            progress = false;
            for (long g = 0; g < group->order(); ++g) {
                if (filled[g]) continue;
                auto [p, s] = par[g];
                if (p < 0 || !filled[p]) continue;
                mats[g] = mats[p] * gen_matrices[s].lifted(n);
                filled[g] = true;
                progress = true;
            }
        }
        return Representation(group, std::move(mats), std::move(coeff));
    }

    static Representation trivial(const GroupPtr& group) {
        return Representation(group, std::vector<Matrix>(group->order(), Matrix::identity(1)));
    }

    /// Left regular representation: permutation matrices of g |-> gh.
    static Representation regular(const GroupPtr& group) {
        long N = group->order();
        std::vector<Matrix> mats;
        mats.reserve(N);
        for (long g = 0; g < N; ++g) {
            Matrix m(N, N, 1);
            for (long h = 0; h < N; ++h) m.at(group->mul(g, h), h) = Cyclotomic(1);
            mats.push_back(std::move(m));
        }
        return Representation(group, std::move(mats));
    }

    const GroupPtr& group() const { return group_; }
    long conductor() const { return n_; }
    long dim() const { return dim_; }
    const Matrix& matrix(long g) const { return mats_[g]; }
    const std::vector<Matrix>& matrices() const { return mats_; }
    const Subfield& coefficient_field() const { return coeff_; }

    struct ValidationReport {
        bool ok = true;
        long g = -1, h = -1;
        std::string message;
    };

    /// Exhaustive homomorphism check over the full multiplication table on
    /// raw per-element matrices; returns a report, never throws. Useful for
    /// data that has not passed the constructor.
    static ValidationReport validate(const GroupPtr& group, const std::vector<Matrix>& mats) {
        if (mats.size() != static_cast<std::size_t>(group->order()))
            return {false, -1, -1, "need one matrix per group element"};
        long n = 1;
        for (const auto& m : mats) {
            if (m.rows() != mats[0].rows() || m.cols() != m.rows())
                return {false, -1, -1, "matrices must be square of equal size"};
            n = lcm_long(n, m.conductor());
        }
        if (!mats[group->identity()].lifted(n).is_identity())
            return {false, group->identity(), -1, "identity element is not mapped to I"};
        for (long g = 0; g < group->order(); ++g)
            for (long h = 0; h < group->order(); ++h)
                if (mats[g].lifted(n) * mats[h].lifted(n) !=
                    mats[group->mul(g, h)].lifted(n))
                    return {false, g, h,
                            "product mismatch at (" + group->label(g) + ", " +
                                group->label(h) + ")"};
        return {};
    }

    ValidationReport validate() const { return validate(group_, mats_); }

    /// Base change to Q(zeta_m), n | m: the result is an object over the
    /// whole bigger field.
    Representation lifted(long m) const {
        std::vector<Matrix> mats;
        for (const auto& M : mats_) mats.push_back(M.lifted(m));
        return Representation(group_, std::move(mats), whole_field(m));
    }

    /// Reinterpret over a larger coefficient field F (the current one must be
    /// contained in it): base change of a form along F0 -> F.
    Representation over_field(const Subfield& F) const {
        if (!subfield_le(coeff_, F))
            throw not_a_subfield("current coefficient field is not contained in the target");
        return Representation(group_, mats_, F);
    }

    /// Try to rewrite at a smaller conductor m | n.
    std::optional<Representation> reduced_to(long m) const {
        std::vector<Matrix> mats;
        for (const auto& M : mats_) {
            auto r = M.reduced_to(m);
            if (!r) return std::nullopt;
            mats.push_back(*r);
        }
        auto cf = reduce_subfield(coeff_, m);
        return Representation(group_, std::move(mats), cf);
    }

    /// Entrywise Galois twist.
    Representation twisted(const GaloisAutomorphism& s) const {
        if (s.conductor() != n_)
            throw conductor_mismatch("twist conductor differs from representation conductor");
        std::vector<Matrix> mats;
        for (const auto& M : mats_) mats.push_back(M.twisted(s));
        return Representation(group_, std::move(mats), coeff_);
    }

    Representation twisted(long k) const { return twisted(GaloisAutomorphism(n_, k)); }

    /// Conjugate by an invertible matrix: g |-> B^-1 rho(g) B.
    Representation conjugated(const Matrix& B,
                              std::optional<Subfield> coeff = std::nullopt) const {
        Matrix Binv = B.inverse();
        std::vector<Matrix> mats;
        for (const auto& M : mats_) mats.push_back(Binv * M * B);
        return Representation(group_, std::move(mats), std::move(coeff));
    }

    Representation direct_sum(const Representation& o) const {
        if (!same_group(o)) throw group_mismatch();
        std::vector<Matrix> mats;
        for (long g = 0; g < group_->order(); ++g)
            mats.push_back(mats_[g].direct_sum(o.mats_[g]));
        return Representation(group_, std::move(mats));
    }

    Representation tensor(const Representation& o) const {
        if (!same_group(o)) throw group_mismatch();
        std::vector<Matrix> mats;
        for (long g = 0; g < group_->order(); ++g)
            mats.push_back(mats_[g].kron(o.mats_[g]));
        return Representation(group_, std::move(mats));
    }

    /// Outer tensor product on a direct product group built with
    /// FiniteGroup::direct_product (index = i * |B| + j).
    static Representation external_tensor(const GroupPtr& product, const Representation& a,
                                          const Representation& b) {
        long nb = b.group()->order();
        std::vector<Matrix> mats;
        for (long idx = 0; idx < product->order(); ++idx)
            mats.push_back(a.matrix(idx / nb).kron(b.matrix(idx % nb)));
        return Representation(product, std::move(mats));
    }

    /// Restriction along a subgroup embedding (from FiniteGroup::subgroup).
    Representation restricted(const GroupPtr& H, const std::vector<long>& embedding) const {
        std::vector<Matrix> mats;
        for (long h = 0; h < H->order(); ++h) mats.push_back(mats_[embedding[h]]);
        return Representation(H, std::move(mats), coeff_);
    }

    bool same_group(const Representation& o) const {
        return group_ == o.group_ || group_->table() == o.group_->table();
    }

    static Subfield lift_subfield(const Subfield& f, long m) {
        if (f.conductor() == m) return f;
        long n = f.conductor();
        if (m % n != 0) throw conductor_mismatch("cannot lift coefficient field");
        std::vector<long> stab;
        for (long k : units_mod(m)) {
            long r = n <= 2 ? 1 : mod_pos(k, n);
            if (std::binary_search(f.stabilizer().begin(), f.stabilizer().end(), r))
                stab.push_back(k);
        }
        return fixed_subfield(m, stab);
    }

    /// Coefficient field after rewriting at conductor m | n: the intersection
    /// F and Q(zeta_m), whose stabilizer is the image of F's stabilizer under
    /// restriction (Z/n)^x -> (Z/m)^x.
    static Subfield reduce_subfield(const Subfield& f, long m) {
        if (m <= 2) return fixed_subfield(m, {1});
        std::vector<long> stab;
        for (long k : f.stabilizer()) stab.push_back(mod_pos(k, m));
        std::sort(stab.begin(), stab.end());
        stab.erase(std::unique(stab.begin(), stab.end()), stab.end());
        return fixed_subfield(m, stab);
    }

private:
    void check_homomorphism() {
        long e = group_->identity();
        if (!mats_[e].is_identity())
            throw validation_error("identity element is not mapped to the identity matrix");
        // products against generators imply the full homomorphism property
        for (long s : group_->generators())
            for (long h = 0; h < group_->order(); ++h)
                if (mats_[s] * mats_[h] != mats_[group_->mul(s, h)])
                    throw validation_error("not a homomorphism at pair (" +
                                           group_->label(s) + ", " + group_->label(h) + ")");
    }

    GroupPtr group_;
    long n_ = 1;
    long dim_ = 0;
    std::vector<Matrix> mats_;
    Subfield coeff_;
};

/// Trace character of a representation, reduced to its value conductor.
inline Character character_of(const Representation& rho) {
    const auto& G = *rho.group();
    std::vector<Cyclotomic> vals;
    for (long c = 0; c < G.num_classes(); ++c)
        vals.push_back(rho.matrix(G.class_representative(c)).trace());
    Character chi(rho.group(), rho.conductor(), std::move(vals));
    return chi.reduced();
}

/// Exact basis of {T : T rho1(g) = rho2(g) T for all g}, by the nullspace of
/// the equivariance system stacked over a generating set.
inline std::vector<Matrix> intertwiner_space(const Representation& rho1,
                                             const Representation& rho2) {
    if (!rho1.same_group(rho2)) throw group_mismatch();
    long n = lcm_long(rho1.conductor(), rho2.conductor());
    long d1 = rho1.dim(), d2 = rho2.dim();
    const auto& gens = rho1.group()->generators();
    long rows = static_cast<long>(gens.size()) * d1 * d2;
    Matrix A(std::max<long>(rows, 1), d1 * d2, n);
    long r0 = 0;
    for (long s : gens) {
        Matrix M1 = rho1.matrix(s).lifted(n), M2 = rho2.matrix(s).lifted(n);
        // vec(T M1) - vec(M2 T) with column-major vec: (M1^t (x) I) - (I (x) M2)
        for (long c = 0; c < d1; ++c)
            for (long r = 0; r < d2; ++r) {
                long row = r0 + c * d2 + r;
                for (long k = 0; k < d1; ++k)
                    A.at(row, k * d2 + r) += M1.at(k, c);
                for (long k = 0; k < d2; ++k)
                    A.at(row, c * d2 + k) -= M2.at(r, k);
            }
        r0 += d1 * d2;
    }
    std::vector<Matrix> basis;
    for (const Matrix& v : A.nullspace()) {
        Matrix T(d2, d1, n);
        for (long c = 0; c < d1; ++c)
            for (long r = 0; r < d2; ++r) T.at(r, c) = v.at(c * d2 + r, 0);
        basis.push_back(std::move(T));
    }
    return basis;
}

/// Deterministic averaged intertwiner rho1 -> rho2: first nonzero among
/// T_C = (1/|G|) sum_g rho2(g) C rho1(g)^-1 over basis matrices C in the
/// given order (row-major by default), normalized so its first nonzero entry
/// is 1. Returns nullopt when no intertwiner exists.
inline std::optional<Matrix> averaged_intertwiner(
    const Representation& rho1, const Representation& rho2,
    const std::vector<std::pair<long, long>>* basis_order = nullptr) {
    if (!rho1.same_group(rho2)) throw group_mismatch();
    const auto& G = *rho1.group();
    long n = lcm_long(rho1.conductor(), rho2.conductor());
    long d1 = rho1.dim(), d2 = rho2.dim();
    std::vector<std::pair<long, long>> order;
    if (basis_order) {
        order = *basis_order;
    } else {
        for (long i = 0; i < d2; ++i)
            for (long j = 0; j < d1; ++j) order.emplace_back(i, j);
    }
    for (auto [i, j] : order) {
        Matrix T(d2, d1, n);
        for (long g = 0; g < G.order(); ++g) {
            const Matrix M2 = rho2.matrix(g).lifted(n);
            const Matrix M1i = rho1.matrix(G.inverse(g)).lifted(n);
            // rho2(g) E_ij rho1(g)^-1 = col_i(rho2(g)) * row_j(rho1(g^-1))
            for (long r = 0; r < d2; ++r) {
                if (M2.at(r, i).is_zero()) continue;
                for (long c = 0; c < d1; ++c) {
                    if (M1i.at(j, c).is_zero()) continue;
                    T.at(r, c) += M2.at(r, i) * M1i.at(j, c);
                }
            }
        }
        if (T.is_zero()) continue;
        Cyclotomic lead;
        bool found = false;
        for (long r = 0; r < d2 && !found; ++r)
            for (long c = 0; c < d1 && !found; ++c)
                if (!T.at(r, c).is_zero()) {
                    lead = T.at(r, c);
                    found = true;
                }
        return lead.inverse() * T;
    }
    return std::nullopt;
}

inline bool is_absolutely_irreducible(const Representation& rho) {
    return intertwiner_space(rho, rho).size() == 1;
}

/// Averaging projector onto the chi-isotypic component:
/// P = (chi(1)/|G|) sum_g chi(g^-1) rho(g).
inline Matrix isotypic_projector(const Representation& rho, const Character& chi) {
    if (!is_irreducible(chi))
        throw not_irreducible("isotypic projector needs an irreducible character");
    const auto& G = *rho.group();
    long n = lcm_long(rho.conductor(), chi.conductor());
    Matrix P(rho.dim(), rho.dim(), n);
    for (long g = 0; g < G.order(); ++g) {
        const Cyclotomic& c = chi.value_at_element(G.inverse(g));
        if (c.is_zero()) continue;
        P = P + c.lifted(n) * rho.matrix(g).lifted(n);
    }
    return Cyclotomic(chi.degree() / Rational(G.order())).lifted(n) * P;
}

/// Multiplicity of the irreducible chi in rho, an exact non-negative integer.
inline long multiplicity(const Representation& rho, const Character& chi) {
    if (!is_irreducible(chi))
        throw not_irreducible("multiplicity needs an irreducible character");
    Cyclotomic m = inner_product(character_of(rho), chi);
    Rational r = m.rational_value();
    if (!r.is_integer() || r.sign() < 0)
        throw error("internal: multiplicity is not a non-negative integer");
    return static_cast<long>(r.num().get_si());
}

} // namespace cyclodescent
