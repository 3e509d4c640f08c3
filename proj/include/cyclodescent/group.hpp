#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numtheory.hpp"

namespace cyclodescent {

using Permutation = std::vector<long>;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Finite group as an explicit multiplication table, with conjugacy classes,
/// inverses, element orders and a generating set. Immutable once built.
class FiniteGroup {
public:
    static GroupPtr from_table(std::vector<std::vector<long>> mul,
                               std::vector<std::string> labels = {}) {
        auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
        g->mul_ = std::move(mul);
        g->labels_ = std::move(labels);
        g->validate_table();
        g->finish();
        return g;
    }

    /// Group generated by permutations of a common finite set. Elements are
    /// numbered breadth-first from the identity with the generator order
    /// fixed; products compose left-to-right on words.
    static GroupPtr closure(const std::vector<Permutation>& gens, long cap = 10000) {
        std::size_t deg = gens.empty() ? 1 : gens[0].size();
        for (const auto& p : gens) {
            if (p.size() != deg) throw error("generators act on different sets");
            std::vector<bool> seen(deg, false);
            for (long v : p) {
                if (v < 0 || static_cast<std::size_t>(v) >= deg || seen[v])
                    throw error("generator is not a bijection");
                seen[v] = true;
            }
        }
        Permutation id(deg);
        std::iota(id.begin(), id.end(), 0);
        std::vector<Permutation> elems{id};
        std::map<Permutation, long> index{{id, 0}};
        std::vector<std::pair<long, long>> parent{{-1, -1}};
        for (std::size_t head = 0; head < elems.size(); ++head) {
            for (std::size_t s = 0; s < gens.size(); ++s) {
                Permutation next(deg);
                // word convention: next = current * gen (apply gen first)
                for (std::size_t x = 0; x < deg; ++x)
                    next[x] = elems[head][gens[s][x]];
                if (!index.count(next)) {
                    if (static_cast<long>(elems.size()) >= cap)
                        throw closure_bound_exceeded("closure exceeds cap " +
                                                     std::to_string(cap));
                    index[next] = static_cast<long>(elems.size());
                    elems.push_back(next);
                    parent.emplace_back(static_cast<long>(head), static_cast<long>(s));
                }
            }
        }
        long n = static_cast<long>(elems.size());
        auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
        g->mul_.assign(n, std::vector<long>(n));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                Permutation prod(deg);
                for (std::size_t x = 0; x < deg; ++x) prod[x] = elems[i][elems[j][x]];
                g->mul_[i][j] = index.at(prod);
            }
        g->parent_ = std::move(parent);
        for (std::size_t s = 0; s < gens.size(); ++s) {
            Permutation p = gens[s];
            g->generators_.push_back(index.at(p));
        }
        g->finish();
        return g;
    }

    static GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
        long na = a->order(), nb = b->order();
        std::vector<std::vector<long>> mul(na * nb, std::vector<long>(na * nb));
        for (long i1 = 0; i1 < na; ++i1)
            for (long j1 = 0; j1 < nb; ++j1)
                for (long i2 = 0; i2 < na; ++i2)
                    for (long j2 = 0; j2 < nb; ++j2)
                        mul[i1 * nb + j1][i2 * nb + j2] =
                            a->mul(i1, i2) * nb + b->mul(j1, j2);
        std::vector<std::string> labels;
        if (!a->labels_.empty() && !b->labels_.empty())
            for (long i = 0; i < na; ++i)
                for (long j = 0; j < nb; ++j)
                    labels.push_back("(" + a->label(i) + "," + b->label(j) + ")");
        auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
        g->mul_ = std::move(mul);
        g->labels_ = std::move(labels);
        g->validate_table();
        for (long s : a->generators()) g->generators_.push_back(s * nb + b->identity());
        for (long s : b->generators()) g->generators_.push_back(a->identity() * nb + s);
        g->finish();
        return g;
    }

    /// Subgroup from a closed subset of element indices; returns the subgroup
    /// as its own table plus the embedding into this group.
    static std::pair<GroupPtr, std::vector<long>> subgroup(const GroupPtr& big,
                                                           std::vector<long> elements) {
        std::sort(elements.begin(), elements.end());
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
        std::map<long, long> idx;
        for (std::size_t i = 0; i < elements.size(); ++i) idx[elements[i]] = i;
        std::vector<std::vector<long>> mul(elements.size(),
                                           std::vector<long>(elements.size()));
        for (std::size_t i = 0; i < elements.size(); ++i)
            for (std::size_t j = 0; j < elements.size(); ++j) {
                long p = big->mul(elements[i], elements[j]);
                auto it = idx.find(p);
                if (it == idx.end()) throw error("subset is not closed under products");
                mul[i][j] = it->second;
            }
        std::vector<std::string> labels;
        if (!big->labels_.empty())
            for (long e : elements) labels.push_back(big->label(e));
        return {from_table(std::move(mul), std::move(labels)), elements};
    }

    long order() const { return static_cast<long>(mul_.size()); }
    long identity() const { return identity_; }
    long mul(long g, long h) const { return mul_[g][h]; }
    long inverse(long g) const { return inv_[g]; }
    long exponent() const { return exponent_; }
    long element_order(long g) const { return ord_[g]; }

    long num_classes() const { return static_cast<long>(classes_.size()); }
    const std::vector<std::vector<long>>& classes() const { return classes_; }
    long class_of(long g) const { return class_of_[g]; }
    long class_representative(long c) const { return classes_[c][0]; }
    long class_size(long c) const { return static_cast<long>(classes_[c].size()); }

    /// g |-> g^2 per element.
    std::vector<long> squaring_map() const {
        std::vector<long> sq(order());
        for (long g = 0; g < order(); ++g) sq[g] = mul_[g][g];
        return sq;
    }

    long power(long g, long k) const {
        long r = identity_;
        for (long i = 0; i < k; ++i) r = mul_[r][g];
        return r;
    }

    const std::vector<long>& generators() const { return generators_; }

    std::string label(long g) const {
        if (static_cast<std::size_t>(g) < labels_.size()) return labels_[g];
        return "g" + std::to_string(g);
    }
    const std::vector<std::string>& labels() const { return labels_; }

    const std::vector<std::vector<long>>& table() const { return mul_; }

    /// BFS fill order over the generating set: for each element other than
    /// the identity, a pair (previous element, generator position) with
    /// element = previous * generator.
    const std::vector<std::pair<long, long>>& bfs_parents() const { return parent_; }

private:
    FiniteGroup() = default;

    void validate_table() {
        long n = order();
        if (n == 0) throw validation_error("empty multiplication table");
        for (const auto& row : mul_) {
            if (static_cast<long>(row.size()) != n)
                throw validation_error("multiplication table is not square");
            for (long v : row)
                if (v < 0 || v >= n) throw validation_error("table entry out of range");
        }
        identity_ = -1;
        for (long e = 0; e < n; ++e) {
            bool ok = true;
            for (long g = 0; g < n && ok; ++g)
                ok = mul_[e][g] == g && mul_[g][e] == g;
            if (ok) { identity_ = e; break; }
        }
        if (identity_ < 0) throw validation_error("no identity element");
        inv_.assign(n, -1);
        for (long g = 0; g < n; ++g) {
            for (long h = 0; h < n; ++h)
                if (mul_[g][h] == identity_ && mul_[h][g] == identity_) { inv_[g] = h; break; }
            if (inv_[g] < 0) throw validation_error("element without inverse");
        }
        if (n <= 64) {
            for (long a = 0; a < n; ++a)
                for (long b = 0; b < n; ++b)
                    for (long c = 0; c < n; ++c)
                        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
                            throw validation_error("multiplication is not associative");
        } else {
            // Latin square property plus a deterministic associativity sample
            for (long g = 0; g < n; ++g) {
                std::vector<bool> row(n, false), col(n, false);
                for (long h = 0; h < n; ++h) {
                    if (row[mul_[g][h]] || col[mul_[h][g]])
                        throw validation_error("table row/column is not a permutation");
                    row[mul_[g][h]] = col[mul_[h][g]] = true;
                }
            }
            for (long a = 0; a < n; a += 7)
                for (long b = 0; b < n; b += 5)
                    for (long c = 0; c < n; c += 3)
                        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
                            throw validation_error("multiplication is not associative");
        }
    }

    void finish() {
        if (identity_ < 0) validate_table();
        long n = order();
        // conjugacy classes, identity's class first, then by least element
        class_of_.assign(n, -1);
        std::vector<long> seeds;
        seeds.push_back(identity_);
        for (long g = 0; g < n; ++g) seeds.push_back(g);
        for (long seed : seeds) {
            if (class_of_[seed] >= 0) continue;
            std::vector<long> cls;
            for (long h = 0; h < n; ++h) {
                long c = mul_[mul_[h][seed]][inv_[h]];
                if (class_of_[c] < 0) {
                    class_of_[c] = static_cast<long>(classes_.size());
                    cls.push_back(c);
                }
            }
            std::sort(cls.begin(), cls.end());
            classes_.push_back(std::move(cls));
        }
        ord_.assign(n, 0);
        exponent_ = 1;
        for (long g = 0; g < n; ++g) {
            long k = 1, x = g;
            while (x != identity_) { x = mul_[x][g]; ++k; }
            ord_[g] = k;
            exponent_ = lcm_long(exponent_, k);
        }
        if (generators_.empty()) compute_generators();
        if (parent_.empty()) compute_parents();
    }

    void compute_generators() {
        long n = order();
        std::vector<bool> in(n, false);
        in[identity_] = true;
        long covered = 1;
        for (long g = 0; g < n && covered < n; ++g) {
            if (in[g]) continue;
            generators_.push_back(g);
            // close
            std::vector<long> frontier{identity_};
            std::vector<bool> nin(n, false);
            nin[identity_] = true;
            covered = 1;
            for (std::size_t head = 0; head < frontier.size(); ++head)
                for (long s : generators_) {
                    long next = mul_[frontier[head]][s];
                    if (!nin[next]) {
                        nin[next] = true;
                        frontier.push_back(next);
                        ++covered;
                    }
                }
            in = nin;
        }
    }

    void compute_parents() {
        long n = order();
        parent_.assign(n, {-1, -1});
        std::vector<bool> seen(n, false);
        seen[identity_] = true;
        std::vector<long> queue{identity_};
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (std::size_t s = 0; s < generators_.size(); ++s) {
                long next = mul_[queue[head]][generators_[s]];
                if (!seen[next]) {
                    seen[next] = true;
                    parent_[next] = {queue[head], static_cast<long>(s)};
                    queue.push_back(next);
                }
            }
        for (long g = 0; g < n; ++g)
            if (!seen[g]) throw error("internal: generating set does not generate");
    }

    std::vector<std::vector<long>> mul_;
    std::vector<std::string> labels_;
    long identity_ = -1;
    std::vector<long> inv_;
    std::vector<std::vector<long>> classes_;
    std::vector<long> class_of_;
    std::vector<long> ord_;
    long exponent_ = 1;
    std::vector<long> generators_;
    std::vector<std::pair<long, long>> parent_;
};

} // namespace cyclodescent
