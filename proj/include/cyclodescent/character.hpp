#pragma once

#include <vector>

#include "cyclotomic.hpp"
#include "group.hpp"
#include "subfield.hpp"

namespace cyclodescent {

/// Class function with exact cyclotomic values, one per conjugacy class.
/// Class 0 is the class of the identity, so values()[0] is the degree for
/// characters of representations.
class Character {
public:
    Character(GroupPtr group, long conductor, std::vector<Cyclotomic> values)
        : group_(std::move(group)), n_(conductor), values_(std::move(values)) {
        if (static_cast<long>(values_.size()) != group_->num_classes())
            throw error("character needs one value per conjugacy class");
        for (auto& v : values_) v = v.lifted(n_);
    }

    const GroupPtr& group() const { return group_; }
    long conductor() const { return n_; }
    const std::vector<Cyclotomic>& values() const { return values_; }
    const Cyclotomic& value(long cls) const { return values_[cls]; }
    const Cyclotomic& value_at_element(long g) const { return values_[group_->class_of(g)]; }

    Rational degree() const { return values_[0].rational_value(); }

    /// Smallest conductor containing all values.
    long value_conductor() const {
        long m = 1;
        for (const auto& v : values_) m = lcm_long(m, v.value_conductor());
        return m;
    }

    Character reduced() const {
        long m = value_conductor();
        std::vector<Cyclotomic> vals;
        for (const auto& v : values_) vals.push_back(*v.reduced_to(m));
        return Character(group_, m, std::move(vals));
    }

    Character lifted(long m) const {
        std::vector<Cyclotomic> vals;
        for (const auto& v : values_) vals.push_back(v.lifted(m));
        return Character(group_, m, std::move(vals));
    }

    Character twisted(long k) const {
        GaloisAutomorphism s(n_, k);
        std::vector<Cyclotomic> vals;
        for (const auto& v : values_) vals.push_back(s(v));
        return Character(group_, n_, std::move(vals));
    }

    friend Character operator+(const Character& a, const Character& b) {
        check_same_group(a, b);
        long m = lcm_long(a.n_, b.n_);
        std::vector<Cyclotomic> vals;
        for (long c = 0; c < a.group_->num_classes(); ++c)
            vals.push_back(a.values_[c].lifted(m) + b.values_[c].lifted(m));
        return Character(a.group_, m, std::move(vals));
    }

    friend Character operator*(const Character& a, const Character& b) {
        check_same_group(a, b);
        long m = lcm_long(a.n_, b.n_);
        std::vector<Cyclotomic> vals;
        for (long c = 0; c < a.group_->num_classes(); ++c)
            vals.push_back(a.values_[c].lifted(m) * b.values_[c].lifted(m));
        return Character(a.group_, m, std::move(vals));
    }

    friend bool operator==(const Character& a, const Character& b) {
        if (!same_group(a, b)) return false;
        for (long c = 0; c < a.group_->num_classes(); ++c)
            if (a.values_[c] != b.values_[c]) return false;
        return true;
    }
    friend bool operator!=(const Character& a, const Character& b) { return !(a == b); }

    static bool same_group(const Character& a, const Character& b) {
        return a.group_ == b.group_ || a.group_->table() == b.group_->table();
    }
    static void check_same_group(const Character& a, const Character& b) {
        if (!same_group(a, b)) throw group_mismatch();
    }

private:
    GroupPtr group_;
    long n_;
    std::vector<Cyclotomic> values_;
};

/// (1/|G|) sum_g chi(g) psi(g^-1), exact.
inline Cyclotomic inner_product(const Character& chi, const Character& psi) {
    Character::check_same_group(chi, psi);
    const auto& G = *chi.group();
    long m = lcm_long(chi.conductor(), psi.conductor());
    Cyclotomic sum = Cyclotomic(0).lifted(m);
    for (long c = 0; c < G.num_classes(); ++c) {
        long inv_cls = G.class_of(G.inverse(G.class_representative(c)));
        sum += Cyclotomic(Rational(G.class_size(c))) *
               chi.value(c).lifted(m) * psi.value(inv_cls).lifted(m);
    }
    return sum * Cyclotomic(Rational(1, G.order()));
}

inline bool is_irreducible(const Character& chi) {
    return inner_product(chi, chi) == Cyclotomic(1);
}

/// Frobenius-Schur indicator (1/|G|) sum_g chi(g^2); one of -1, 0, +1.
inline Rational fs_indicator(const Character& chi) {
    if (!is_irreducible(chi))
        throw not_irreducible("fs_indicator needs an irreducible character");
    const auto& G = *chi.group();
    Cyclotomic sum = Cyclotomic(0).lifted(chi.conductor());
    for (long c = 0; c < G.num_classes(); ++c) {
        long g = G.class_representative(c);
        long sq_cls = G.class_of(G.mul(g, g));
        sum += Cyclotomic(Rational(G.class_size(c))) * chi.value(sq_cls);
    }
    Rational ind = (sum * Cyclotomic(Rational(1, G.order()))).rational_value();
    if (ind != Rational(-1) && ind != Rational(0) && ind != Rational(1))
        throw error("internal: Frobenius-Schur indicator outside {-1,0,1}");
    return ind;
}

struct GaloisOrbit {
    std::vector<Character> orbit;   // distinct twists, deterministic order
    std::vector<long> stabilizer;   // subgroup of (Z/m)^x, m = value conductor
    Subfield field_of_rationality;  // fixed field of the stabilizer
};

/// Orbit of a character under the Galois action on its value field.
inline GaloisOrbit galois_orbit(const Character& chi) {
    Character red = chi.reduced();
    long m = red.conductor();
    std::vector<Character> orbit;
    std::vector<long> stab;
    for (long k : units_mod(m)) {
        Character tw = red.twisted(k);
        if (tw == red) stab.push_back(k);
        bool seen = false;
        for (const auto& o : orbit)
            if (o == tw) { seen = true; break; }
        if (!seen) orbit.push_back(std::move(tw));
    }
    return GaloisOrbit{std::move(orbit), stab, fixed_subfield(m, stab)};
}

} // namespace cyclodescent
