#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "group.hpp"
#include "matrix.hpp"
#include "representation.hpp"

namespace cyclodescent {
namespace catalog {

namespace detail {

inline Matrix m1(const Cyclotomic& a) { return Matrix::from_rows({{a}}); }

inline Matrix m2(const Cyclotomic& a, const Cyclotomic& b, const Cyclotomic& c,
                 const Cyclotomic& d) {
    return Matrix::from_rows({{a, b}, {c, d}});
}

/// Smallest conductor at which the representation can be written.
inline Representation minimized(const Representation& rho) {
    for (long m : divisors(rho.conductor())) {
        if (m == rho.conductor()) break;
        if (auto r = rho.reduced_to(m)) return *r;
    }
    return rho;
}

} // namespace detail

inline GroupPtr cyclic(long k) {
    std::vector<std::vector<long>> mul(k, std::vector<long>(k));
    std::vector<std::string> labels;
    for (long i = 0; i < k; ++i) {
        labels.push_back(i == 0 ? "e" : "g^" + std::to_string(i));
        for (long j = 0; j < k; ++j) mul[i][j] = (i + j) % k;
    }
    return FiniteGroup::from_table(std::move(mul), std::move(labels));
}

inline GroupPtr symmetric3() {
    return FiniteGroup::closure({{1, 0, 2}, {1, 2, 0}});
}

inline GroupPtr dihedral4() {
    return FiniteGroup::closure({{1, 2, 3, 0}, {0, 3, 2, 1}});
}

/// Q8 as left multiplications on {1, -1, i, -i, j, -j, k, -k}.
inline GroupPtr quaternion8() {
    return FiniteGroup::closure({{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}});
}

inline GroupPtr alternating4() {
    return FiniteGroup::closure({{1, 0, 3, 2}, {1, 2, 0, 3}});
}

/// Dicyclic group of order 12: a^6 = e, b^2 = a^3, b a b^-1 = a^-1.
/// Element i + 6j stands for a^i b^j.
inline GroupPtr dicyclic3() {
    auto idx = [](long i, long j) { return mod_pos(i, 6) + 6 * mod_pos(j, 2); };
    std::vector<std::vector<long>> mul(12, std::vector<long>(12));
    std::vector<std::string> labels(12);
    for (long i = 0; i < 6; ++i)
        for (long j = 0; j < 2; ++j)
            labels[idx(i, j)] = "a^" + std::to_string(i) + (j ? "b" : "");
    for (long i1 = 0; i1 < 6; ++i1)
        for (long j1 = 0; j1 < 2; ++j1)
            for (long i2 = 0; i2 < 6; ++i2)
                for (long j2 = 0; j2 < 2; ++j2) {
                    long g;
                    if (j1 == 0) g = idx(i1 + i2, j2);
                    else if (j2 == 0) g = idx(i1 - i2, 1);
                    else g = idx(i1 - i2 + 3, 0);
                    mul[idx(i1, j1)][idx(i2, j2)] = g;
                }
    return FiniteGroup::from_table(std::move(mul), std::move(labels));
}

inline GroupPtr group(const std::string& name) {
    static std::map<std::string, GroupPtr> cache;
    static std::recursive_mutex mu;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    GroupPtr g;
    if (name == "c2") g = cyclic(2);
    else if (name == "c3") g = cyclic(3);
    else if (name == "c4") g = cyclic(4);
    else if (name == "c5") g = cyclic(5);
    else if (name == "c6") g = cyclic(6);
    else if (name == "s3") g = symmetric3();
    else if (name == "d4") g = dihedral4();
    else if (name == "q8") g = quaternion8();
    else if (name == "a4") g = alternating4();
    else if (name == "dic3") g = dicyclic3();
    else if (name == "q8xc2") g = FiniteGroup::direct_product(group("q8"), group("c2"));
    else if (name == "q8xs3") g = FiniteGroup::direct_product(group("q8"), group("s3"));
    else throw error("unknown catalog group: " + name);
    cache.emplace(name, g);
    return g;
}

inline std::vector<std::string> group_names() {
    return {"c2", "c3", "c4", "c5", "c6", "s3", "d4", "q8", "a4", "dic3", "q8xc2", "q8xs3"};
}

/// All irreducible representations of a catalog group, each written at its
/// smallest conductor. Generator matrices follow the group's generating set.
inline std::vector<Representation> irreducibles(const std::string& name) {
    using detail::m1;
    using detail::m2;
    using detail::minimized;
    GroupPtr G = group(name);
    std::vector<Representation> out;
    auto gen1 = [&](const std::vector<Cyclotomic>& gen_values) {
        std::vector<Matrix> mats;
        for (const auto& v : gen_values) mats.push_back(m1(v));
        return minimized(Representation::from_generators(G, mats));
    };
    if (name == "c2" || name == "c3" || name == "c4" || name == "c5" || name == "c6") {
        long k = G->order();
        for (long j = 0; j < k; ++j)
            out.push_back(gen1({Cyclotomic::zeta(k, j)}));
        return out;
    }
    if (name == "s3") {
        out.push_back(gen1({Cyclotomic(1), Cyclotomic(1)}));
        out.push_back(gen1({Cyclotomic(-1), Cyclotomic(1)}));
        Matrix s = m2(Cyclotomic(0), Cyclotomic(1), Cyclotomic(1), Cyclotomic(0));
        Matrix r = m2(Cyclotomic(0), Cyclotomic(-1), Cyclotomic(1), Cyclotomic(-1));
        out.push_back(Representation::from_generators(G, {s, r}));
        return out;
    }
    if (name == "d4") {
        for (long a : {1, -1})
            for (long b : {1, -1})
                out.push_back(gen1({Cyclotomic(a), Cyclotomic(b)}));
        Matrix r = m2(Cyclotomic(0), Cyclotomic(-1), Cyclotomic(1), Cyclotomic(0));
        Matrix s = m2(Cyclotomic(1), Cyclotomic(0), Cyclotomic(0), Cyclotomic(-1));
        out.push_back(Representation::from_generators(G, {r, s}));
        return out;
    }
    if (name == "q8") {
        for (long a : {1, -1})
            for (long b : {1, -1})
                out.push_back(gen1({Cyclotomic(a), Cyclotomic(b)}));
        Cyclotomic i4 = Cyclotomic::zeta(4);
        Matrix mi = m2(i4, Cyclotomic(0).lifted(4), Cyclotomic(0).lifted(4), -i4);
        Matrix mj = m2(Cyclotomic(0), Cyclotomic(-1), Cyclotomic(1), Cyclotomic(0));
        out.push_back(Representation::from_generators(G, {mi, mj.lifted(4)}));
        return out;
    }
    if (name == "a4") {
        Cyclotomic w = Cyclotomic::zeta(3);
        out.push_back(gen1({Cyclotomic(1), Cyclotomic(1)}));
        out.push_back(gen1({Cyclotomic(1).lifted(3), w}));
        out.push_back(gen1({Cyclotomic(1).lifted(3), w * w}));
        Matrix x = Matrix::from_rows({{Cyclotomic(1), Cyclotomic(0), Cyclotomic(0)},
                                      {Cyclotomic(0), Cyclotomic(-1), Cyclotomic(0)},
                                      {Cyclotomic(0), Cyclotomic(0), Cyclotomic(-1)}});
        Matrix r = Matrix::from_rows({{Cyclotomic(0), Cyclotomic(0), Cyclotomic(1)},
                                      {Cyclotomic(1), Cyclotomic(0), Cyclotomic(0)},
                                      {Cyclotomic(0), Cyclotomic(1), Cyclotomic(0)}});
        out.push_back(Representation::from_generators(G, {x, r}));
        return out;
    }
    if (name == "dic3") {
        Cyclotomic i4 = Cyclotomic::zeta(4), z6 = Cyclotomic::zeta(6);
        for (long k = 0; k < 4; ++k) {
            Cyclotomic bval = Cyclotomic(1).lifted(4);
            for (long t = 0; t < k; ++t) bval *= i4;
            Cyclotomic aval = (k % 2 == 0) ? Cyclotomic(1) : Cyclotomic(-1);
            out.push_back(gen1({aval.lifted(4), bval}));
        }
        Matrix a_std = m2(Cyclotomic(0), Cyclotomic(-1), Cyclotomic(1), Cyclotomic(-1));
        Matrix b_std = m2(Cyclotomic(0), Cyclotomic(1), Cyclotomic(1), Cyclotomic(0));
        out.push_back(Representation::from_generators(G, {a_std, b_std}));
        Matrix a_f = m2(z6, Cyclotomic(0).lifted(6), Cyclotomic(0).lifted(6),
                        galois(z6, 5));
        Matrix b_f = m2(Cyclotomic(0), Cyclotomic(-1), Cyclotomic(1), Cyclotomic(0));
        out.push_back(Representation::from_generators(G, {a_f, b_f.lifted(6)}));
        return out;
    }
    if (name == "q8xc2" || name == "q8xs3") {
        const std::string other = (name == "q8xc2") ? "c2" : "s3";
        auto left = irreducibles("q8");
        auto right = irreducibles(other);
        for (const auto& a : left)
            for (const auto& b : right)
                out.push_back(Representation::external_tensor(G, a, b));
        return out;
    }
    throw error("unknown catalog group: " + name);
}

/// Named representations used by the command line and the test suites.
inline Representation rep(const std::string& name) {
    if (name == "q8_2dim") return irreducibles("q8")[4];
    if (name == "q8_2dim_z8") return irreducibles("q8")[4].lifted(8);
    if (name == "s3_2dim") return irreducibles("s3")[2];
    if (name == "s3_2dim_over_Qi") return irreducibles("s3")[2].lifted(4);
    if (name == "c4_char") return irreducibles("c4")[1];
    if (name == "c3_char") return irreducibles("c3")[1];
    if (name == "dic3_2dim") return irreducibles("dic3")[5];
    if (name == "q8c2_2dim_sign")
        return Representation::external_tensor(group("q8xc2"), irreducibles("q8")[4],
                                               irreducibles("c2")[1]);
    if (name == "q8s3_4dim")
        return Representation::external_tensor(group("q8xs3"), irreducibles("q8")[4],
                                               irreducibles("s3")[2]);
    throw error("unknown catalog representation: " + name);
}

inline std::vector<std::string> rep_names() {
    return {"q8_2dim", "q8_2dim_z8", "s3_2dim", "s3_2dim_over_Qi", "c4_char",
            "c3_char", "dic3_2dim", "q8c2_2dim_sign", "q8s3_4dim"};
}

} // namespace catalog
} // namespace cyclodescent
