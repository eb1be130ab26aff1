#include "ad/grp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace ad::grp {

namespace {

Perm perm_compose(const Perm& g, const Perm& h) {  // h first, then g
    Perm r(g.size());
    for (size_t i = 0; i < g.size(); ++i) r[i] = g[h[i]];
    return r;
}

std::string perm_word(const Perm& p) {
    // disjoint cycle notation on 1-based points
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i)) continue;
        out += "(";
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out += " ";
            out += std::to_string(j + 1);
            first = false;
            j = p[j];
        }
        out += ")";
    }
    return out.empty() ? "e" : out;
}

}  // namespace

bool FiniteGroup::is_abelian() const {
    for (int g = 0; g < order; ++g)
        for (int h = g + 1; h < order; ++h)
            if (mul(g, h) != mul(h, g)) return false;
    return true;
}

void FiniteGroup::verify(int assoc_limit) const {
    if (order <= 0) throw Error("group order must be positive");
    if (static_cast<int>(table.size()) != order * order) throw Error("bad table size");
    if (static_cast<int>(inverse.size()) != order) throw Error("bad inverse array");
    for (int v : table)
        if (v < 0 || v >= order) throw Error("table entry out of range");
    for (int g = 0; g < order; ++g) {
        if (mul(identity, g) != g || mul(g, identity) != g)
            throw Error("identity row/column not fixed");
        if (mul(g, inverse[g]) != identity || mul(inverse[g], g) != identity)
            throw Error("inverse array broken");
    }
    std::vector<bool> seen(order);
    for (int g = 0; g < order; ++g) {
        std::fill(seen.begin(), seen.end(), false);
        for (int h = 0; h < order; ++h) {
            if (seen[mul(g, h)]) throw Error("table row is not a permutation");
            seen[mul(g, h)] = true;
        }
        std::fill(seen.begin(), seen.end(), false);
        for (int h = 0; h < order; ++h) {
            if (seen[mul(h, g)]) throw Error("table column is not a permutation");
            seen[mul(h, g)] = true;
        }
    }
    if (order <= assoc_limit) {
        for (int g = 0; g < order; ++g)
            for (int h = 0; h < order; ++h)
                for (int k = 0; k < order; ++k)
                    if (mul(mul(g, h), k) != mul(g, mul(h, k)))
                        throw Error("multiplication table is not associative");
    }
}

void GroupHom::verify(const FiniteGroup& source, const FiniteGroup& target) const {
    if (static_cast<int>(map.size()) != source.order) throw Error("hom map size mismatch");
    if (map[source.identity] != target.identity) throw Error("hom does not fix identity");
    for (int g = 0; g < source.order; ++g)
        for (int h = 0; h < source.order; ++h)
            if (map[source.mul(g, h)] != target.mul(map[g], map[h]))
                throw Error("hom is not multiplicative");
}

bool GroupHom::is_surjective(const FiniteGroup& target) const {
    std::vector<bool> hit(target.order, false);
    for (int v : map) hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

FiniteGroup group_from_generators(int n_points, const std::vector<Perm>& generators,
                                  int order_bound) {
    for (const Perm& p : generators) {
        if (static_cast<int>(p.size()) != n_points) throw Error("generator size mismatch");
        std::vector<bool> seen(n_points, false);
        for (int v : p) {
            if (v < 0 || v >= n_points || seen[v]) throw Error("not a permutation");
            seen[v] = true;
        }
    }
    Perm id(n_points);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> elems{id};
    std::map<Perm, int> index{{id, 0}};
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const Perm& gen : generators) {
            Perm next = perm_compose(elems[head], gen);
            if (index.emplace(next, static_cast<int>(elems.size())).second) {
                elems.push_back(next);
                if (static_cast<int>(elems.size()) > order_bound) throw Error("group too large");
            }
        }
    }
    int n = static_cast<int>(elems.size());
    FiniteGroup G;
    G.order = n;
    G.identity = 0;
    G.table.resize(static_cast<size_t>(n) * n);
    G.inverse.assign(n, -1);
    G.labels.resize(n);
    for (int g = 0; g < n; ++g) {
        G.labels[g] = perm_word(elems[g]);
        for (int h = 0; h < n; ++h) {
            Perm prod = perm_compose(elems[g], elems[h]);
            auto it = index.find(prod);
            AD_INTERNAL_CHECK(it != index.end(), "closure not closed");
            G.table[static_cast<size_t>(g) * n + h] = it->second;
            if (it->second == 0) G.inverse[g] = h;
        }
    }
    G.verify();
    return G;
}

FiniteGroup cyclic_group(int n) {
    FiniteGroup G;
    G.order = n;
    G.identity = 0;
    G.table.resize(static_cast<size_t>(n) * n);
    G.inverse.resize(n);
    G.labels.resize(n);
    for (int g = 0; g < n; ++g) {
        G.inverse[g] = (n - g) % n;
        G.labels[g] = std::to_string(g);
        for (int h = 0; h < n; ++h) G.table[static_cast<size_t>(g) * n + h] = (g + h) % n;
    }
    return G;
}

FiniteGroup trivial_group() { return cyclic_group(1); }

std::vector<int> centralizer(const FiniteGroup& G, int g) {
    std::vector<int> c;
    for (int h = 0; h < G.order; ++h)
        if (G.mul(h, g) == G.mul(g, h)) c.push_back(h);
    return c;
}

ConjClassData conjugacy_classes(const FiniteGroup& G) {
    ConjClassData cc;
    cc.class_of.assign(G.order, -1);
    for (int g = 0; g < G.order; ++g) {
        if (cc.class_of[g] >= 0) continue;
        int idx = static_cast<int>(cc.reps.size());
        cc.reps.push_back(g);
        int size = 0;
        for (int h = 0; h < G.order; ++h) {
            int x = G.conj(h, g);
            if (cc.class_of[x] < 0) {
                cc.class_of[x] = idx;
                ++size;
            }
        }
        cc.class_sizes.push_back(size);
        cc.centralizers.push_back(centralizer(G, g));
    }
    int total = std::accumulate(cc.class_sizes.begin(), cc.class_sizes.end(), 0);
    AD_INTERNAL_CHECK(total == G.order, "classes do not partition the group");
    for (size_t i = 0; i < cc.reps.size(); ++i)
        AD_INTERNAL_CHECK(static_cast<int>(cc.centralizers[i].size()) * cc.class_sizes[i] ==
                              G.order,
                          "orbit-stabilizer mismatch");
    return cc;
}

bool is_subgroup(const FiniteGroup& G, const std::vector<int>& H) {
    if (H.empty()) return false;
    std::set<int> set(H.begin(), H.end());
    if (!set.count(G.identity)) return false;
    for (int a : set)
        for (int b : set)
            if (!set.count(G.mul(a, b))) return false;
    return true;
}

bool is_normal(const FiniteGroup& G, const std::vector<int>& N) {
    if (!is_subgroup(G, N)) return false;
    std::set<int> set(N.begin(), N.end());
    for (int g = 0; g < G.order; ++g)
        for (int n : set)
            if (!set.count(G.conj(g, n))) return false;
    return true;
}

std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> gens) {
    std::set<int> set(gens.begin(), gens.end());
    set.insert(G.identity);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(set.begin(), set.end());
        for (int a : cur)
            for (int b : cur)
                if (set.insert(G.mul(a, b)).second) grew = true;
    }
    return {set.begin(), set.end()};
}

std::vector<int> subgroup_intersection(const std::vector<int>& H, const std::vector<int>& K) {
    std::set<int> hs(H.begin(), H.end());
    std::vector<int> r;
    for (int k : K)
        if (hs.count(k)) r.push_back(k);
    std::sort(r.begin(), r.end());
    return r;
}

DoubleCosetData double_cosets(const FiniteGroup& G, const std::vector<int>& H,
                              const std::vector<int>& K) {
    if (!is_subgroup(G, H) || !is_subgroup(G, K)) throw Error("not a subgroup");
    DoubleCosetData dc;
    dc.left = H;
    dc.right = K;
    dc.coset_of.assign(G.order, -1);
    for (int g = 0; g < G.order; ++g) {
        if (dc.coset_of[g] >= 0) continue;
        int idx = static_cast<int>(dc.reps.size());
        dc.reps.push_back(g);
        int size = 0;
        for (int h : H)
            for (int k : K) {
                int x = G.mul(G.mul(h, g), k);
                if (dc.coset_of[x] < 0) {
                    dc.coset_of[x] = idx;
                    ++size;
                }
            }
        dc.coset_sizes.push_back(size);
    }
    int total = std::accumulate(dc.coset_sizes.begin(), dc.coset_sizes.end(), 0);
    AD_INTERNAL_CHECK(total == G.order, "double cosets do not partition the group");
    return dc;
}

std::vector<int> product_class_set(const FiniteGroup& G, const ConjClassData& cc, int a, int b) {
    std::set<int> elems;
    for (int g1 = 0; g1 < G.order; ++g1)
        for (int g2 = 0; g2 < G.order; ++g2) elems.insert(G.mul(G.conj(g1, a), G.conj(g2, b)));
    std::set<int> classes;
    for (int x : elems) classes.insert(cc.class_of[x]);
    // the raw product set must be class-closed
    for (int x = 0; x < G.order; ++x)
        if (classes.count(cc.class_of[x]) && !elems.count(x))
            throw Error("product set is not closed under conjugation");
    return {classes.begin(), classes.end()};
}

std::pair<FiniteGroup, GroupHom> quotient(const FiniteGroup& G, const std::vector<int>& N) {
    if (!is_normal(G, N)) throw Error("not normal");
    std::vector<int> coset_of(G.order, -1);
    std::vector<int> reps;
    for (int g = 0; g < G.order; ++g) {
        if (coset_of[g] >= 0) continue;
        int idx = static_cast<int>(reps.size());
        reps.push_back(g);
        for (int n : N) coset_of[G.mul(g, n)] = idx;
    }
    int q = static_cast<int>(reps.size());
    FiniteGroup Q;
    Q.order = q;
    Q.table.resize(static_cast<size_t>(q) * q);
    Q.inverse.assign(q, -1);
    Q.labels.resize(q);
    for (int i = 0; i < q; ++i) {
        Q.labels[i] = (G.labels.empty() ? std::to_string(reps[i]) : G.labels[reps[i]]) + "N";
        for (int j = 0; j < q; ++j) {
            int prod = coset_of[G.mul(reps[i], reps[j])];
            Q.table[static_cast<size_t>(i) * q + j] = prod;
        }
    }
    Q.identity = coset_of[G.identity];
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            if (Q.mul(i, j) == Q.identity) Q.inverse[i] = j;
    Q.verify();
    GroupHom pi{coset_of};
    pi.verify(G, Q);
    return {std::move(Q), std::move(pi)};
}

namespace {

bool extend_iso(const FiniteGroup& A, const FiniteGroup& B, std::vector<int>& map,
                std::vector<bool>& used, int next) {
    if (next == A.order) return true;
    if (map[next] >= 0) return extend_iso(A, B, map, used, next + 1);
    for (int img = 0; img < B.order; ++img) {
        if (used[img]) continue;
        map[next] = img;
        used[img] = true;
        bool ok = true;
        // check all products among already-mapped elements
        for (int g = 0; g <= next && ok; ++g) {
            if (map[g] < 0) continue;
            for (int h = 0; h <= next && ok; ++h) {
                if (map[h] < 0) continue;
                int p = A.mul(g, h);
                if (map[p] >= 0) {
                    if (B.mul(map[g], map[h]) != map[p]) ok = false;
                } else if (p <= next) {
                    ok = false;  // p unmapped but should have been by now
                }
            }
        }
        if (ok && extend_iso(A, B, map, used, next + 1)) return true;
        used[img] = false;
        map[next] = -1;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& A, const FiniteGroup& B) {
    if (A.order != B.order) return std::nullopt;
    std::vector<int> map(A.order, -1);
    std::vector<bool> used(B.order, false);
    map[A.identity] = B.identity;
    used[B.identity] = true;
    if (!extend_iso(A, B, map, used, 0)) return std::nullopt;
    // final full check
    for (int g = 0; g < A.order; ++g)
        for (int h = 0; h < A.order; ++h)
            if (B.mul(map[g], map[h]) != map[A.mul(g, h)]) return std::nullopt;
    return map;
}

}  // namespace ad::grp
