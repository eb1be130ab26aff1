#include "ad/profinite.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ad::pf {

using nf::FieldElement;
using nf::NumberField;
using nf::Subfield;

int FiniteTower::push_down(int i, int j, int x) const {
    if (i == j) return x;
    if (!leq(i, j)) throw Error("levels unrelated");
    return maps.at({i, j})[x];
}

bool FiniteTower::all_surjective() const {
    int L = levels();
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            if (i == j || !leq(i, j)) continue;
            std::set<int> image;
            for (int x = 0; x < sizes[j]; ++x) image.insert(push_down(i, j, x));
            if (static_cast<int>(image.size()) != sizes[i]) return false;
        }
    return true;
}

void FiniteTower::verify() const {
    int L = levels();
    if (leq_flat.size() != static_cast<size_t>(L) * L) throw Error("bad order table");
    if (!labels.empty() && static_cast<int>(labels.size()) != L)
        throw Error("bad label count");

    for (int i = 0; i < L; ++i) {
        if (!leq(i, i)) throw Error("order not reflexive");
        for (int j = 0; j < L; ++j) {
            if (i != j && leq(i, j) && leq(j, i)) throw Error("order not antisymmetric");
            for (int k = 0; k < L; ++k)
                if (leq(i, j) && leq(j, k) && !leq(i, k))
                    throw Error("order not transitive");
        }
    }

    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            if (i == j || !leq(i, j)) continue;
            auto it = maps.find({i, j});
            if (it == maps.end()) throw Error("missing tower map");
            const auto& m = it->second;
            if (static_cast<int>(m.size()) != sizes[j]) throw Error("bad map shape");
            for (int x : m)
                if (x < 0 || x >= sizes[i]) throw Error("bad map shape");
        }
    for (const auto& [key, m] : maps) {
        (void)m;
        if (key.first == key.second || !leq(key.first, key.second))
            throw Error("map without order relation");
    }

    // exhaustive functoriality
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
            for (int k = 0; k < L; ++k) {
                if (!(leq(i, j) && leq(j, k))) continue;
                for (int x = 0; x < sizes[k]; ++x)
                    if (push_down(i, j, push_down(j, k, x)) != push_down(i, k, x))
                        throw Error("tower not functorial");
            }

    if (!groups.empty()) {
        if (static_cast<int>(groups.size()) != L) throw Error("bad group count");
        for (int i = 0; i < L; ++i) {
            if (groups[i].order != sizes[i]) throw Error("bad group count");
            groups[i].verify();
        }
        for (const auto& [key, m] : maps)
            grp::GroupHom{m}.verify(groups[key.second], groups[key.first]);
    }
}

std::vector<int> limit_element(const FiniteTower& t) {
    int L = t.levels();
    if (L == 0) throw Error("empty level");
    for (int i = 0; i < L; ++i)
        if (t.sizes[i] <= 0) throw Error("empty level");

    int top = -1;
    for (int j = 0; j < L && top < 0; ++j) {
        bool greatest = true;
        for (int i = 0; i < L; ++i)
            if (!t.leq(i, j)) greatest = false;
        if (greatest) top = j;
    }
    if (top < 0) throw Error("order not directed");

    std::vector<int> family(L);
    for (int i = 0; i < L; ++i) family[i] = t.push_down(i, top, 0);
    return family;
}

FiniteTower zhat_truncation(int n) {
    if (n < 1) throw Error("bad truncation depth");
    std::vector<int> fact(n);
    fact[0] = 1;
    for (int i = 1; i < n; ++i) fact[i] = fact[i - 1] * (i + 1);

    FiniteTower t;
    t.sizes = fact;
    t.leq_flat.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
        t.labels.push_back("Z/" + std::to_string(fact[i]));
        t.groups.push_back(grp::cyclic_group(fact[i]));
        for (int j = i; j < n; ++j) t.leq_flat[static_cast<size_t>(i) * n + j] = 1;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> m(fact[j]);
            for (int x = 0; x < fact[j]; ++x) m[x] = x % fact[i];
            t.maps[{i, j}] = std::move(m);
        }
    t.verify();
    AD_INTERNAL_CHECK(t.all_surjective(), "zhat reductions must be surjective");
    return t;
}

ShiftReport shift_obstruction(int w, int n, long long bound) {
    if (w < 1 || n < 2) throw Error("bad shift window");
    int cells = 1 << w;
    long long total = 1;
    for (int c = 0; c < cells; ++c) {
        if (total > bound / n) throw Error("window too large");
        total *= n;
    }

    // windows are bit masks x_0..x_{w-1}, x_0 the least significant bit;
    // both shift directions are counted and must agree
    long long forward = 0, backward = 0;
    std::vector<int> g(cells, 0);
    for (long long it = 0; it < total; ++it) {
        bool okF = true, okB = true;
        for (int word = 0; word < (2 << w) && (okF || okB); ++word) {
            int lo = word & (cells - 1);         // x_0..x_{w-1}
            int hi = (word >> 1) & (cells - 1);  // x_1..x_w
            if (g[hi] != (g[lo] + 1) % n) okF = false;
            if (g[lo] != (g[hi] + 1) % n) okB = false;
        }
        forward += okF;
        backward += okB;
        for (int c = 0; c < cells && ++g[c] == n; ++c) g[c] = 0;
    }
    AD_INTERNAL_CHECK(forward == backward, "shift count must not depend on direction");

    ShiftReport r;
    r.count = forward;
    r.witness = "the constant sequence forces g(c,...,c) = g(c,...,c) + 1 (mod " +
                std::to_string(n) + "), impossible";
    return r;
}

namespace {

bool subfield_eq(const Subfield& a, const Subfield& b) { return a.basis == b.basis; }

// deterministic ordering: degree first, then entrywise on the RREF basis
bool subfield_less(const Subfield& a, const Subfield& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (size_t k = 0; k < a.basis.a.size(); ++k) {
        int c = cmp(a.basis.a[k], b.basis.a[k]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::vector<int> fixer_subgroup(const nf::AutomorphismGroup& A, const Subfield& E) {
    std::vector<int> H;
    for (int g = 0; g < A.group.order; ++g) {
        bool fixes = true;
        for (int r = 0; r < E.basis.rows && fixes; ++r) {
            Vec row(E.basis.a.begin() + static_cast<size_t>(r) * E.basis.cols,
                    E.basis.a.begin() + static_cast<size_t>(r + 1) * E.basis.cols);
            if (nf::apply(A.auts[g], row) != row) fixes = false;
        }
        if (fixes) H.push_back(g);
    }
    return H;
}

}  // namespace

CompositumTower compositum_tower(const NumberField& L, const nf::AutomorphismGroup& A,
                                 std::vector<Subfield> subfields) {
    if (subfields.empty()) throw Error("no subfields");

    // saturate under pairwise compositum inside L
    std::vector<Subfield> fields;
    auto add = [&](const Subfield& E) {
        for (const auto& F : fields)
            if (subfield_eq(F, E)) return false;
        fields.push_back(E);
        return true;
    };
    for (const auto& E : subfields) add(E);
    for (size_t i = 0; i < fields.size(); ++i)
        for (size_t j = 0; j < i; ++j) add(nf::compositum(L, fields[i], fields[j]));
    std::sort(fields.begin(), fields.end(), subfield_less);

    int nl = static_cast<int>(fields.size());
    const grp::FiniteGroup& G = A.group;

    // carriers: cosets G / Gal(L/E), indexed by first appearance
    std::vector<std::vector<int>> coset_of(nl), coset_rep(nl);
    CompositumTower ct;
    ct.tower.leq_flat.assign(static_cast<size_t>(nl) * nl, 0);
    for (int i = 0; i < nl; ++i) {
        std::vector<int> H = fixer_subgroup(A, fields[i]);
        AD_INTERNAL_CHECK(!H.empty() && G.order % static_cast<int>(H.size()) == 0,
                          "fixer must be a subgroup");
        std::vector<int>& co = coset_of[i];
        co.assign(G.order, -1);
        for (int g = 0; g < G.order; ++g) {
            if (co[g] >= 0) continue;
            int idx = static_cast<int>(coset_rep[i].size());
            coset_rep[i].push_back(g);
            for (int h : H) co[G.mul(g, h)] = idx;
        }
        int deg = static_cast<int>(coset_rep[i].size());
        if (L.base_degree == 1)
            AD_INTERNAL_CHECK(deg == fields[i].degree(),
                              "embedding count must equal the degree");
        ct.tower.sizes.push_back(deg);
        ct.tower.labels.push_back("deg" + std::to_string(fields[i].degree()));
    }

    for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nl; ++j)
            if (subfield_leq(fields[i], fields[j]))
                ct.tower.leq_flat[static_cast<size_t>(i) * nl + j] = 1;

    for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nl; ++j) {
            if (i == j || !ct.tower.leq(i, j)) continue;
            std::vector<int> m(ct.tower.sizes[j]);
            for (int c = 0; c < ct.tower.sizes[j]; ++c)
                m[c] = coset_of[i][coset_rep[j][c]];
            ct.tower.maps[{i, j}] = std::move(m);
        }

    // join minimality: the compositum is listed and sits below every upper bound
    for (int i = 0; i < nl; ++i)
        for (int j = 0; j < i; ++j) {
            Subfield C = nf::compositum(L, fields[i], fields[j]);
            int k = -1;
            for (int m = 0; m < nl; ++m)
                if (subfield_eq(fields[m], C)) k = m;
            AD_INTERNAL_CHECK(k >= 0, "saturation must list every join");
            for (int m = 0; m < nl; ++m)
                if (ct.tower.leq(i, m) && ct.tower.leq(j, m)) {
                    if (!ct.tower.leq(k, m) ||
                        fields[k].degree() > fields[m].degree())
                        throw Error("join not minimal");
                }
        }

    ct.fields = std::move(fields);
    ct.top = -1;
    for (int j = 0; j < nl && ct.top < 0; ++j) {
        bool greatest = true;
        for (int i = 0; i < nl; ++i)
            if (!ct.tower.leq(i, j)) greatest = false;
        if (greatest) ct.top = j;
    }
    AD_INTERNAL_CHECK(ct.top >= 0, "a join-closed poset has a top");
    ct.tower.verify();
    return ct;
}

void EtaleAlgebra::verify() const {
    if (!base) throw Error("missing base field");
    base->verify();
    for (const auto& f : factors) {
        if (!f) throw Error("missing factor");
        f->verify();
        if (f->base_degree != base->degree || f->degree % base->degree != 0)
            throw Error("factor base mismatch");
    }
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    return out;
}

// distinct rational roots of x^d + c_{d-1} x^{d-1} + ... + c_0
std::vector<Rat> rational_roots(const std::vector<Rat>& c) {
    int d = static_cast<int>(c.size());
    std::vector<Rat> full(c);
    full.push_back(Rat(1));

    mpz_class den(1);
    for (const Rat& q : c) den = den / gcd(den, q.get_den()) * q.get_den();
    std::vector<mpz_class> a(d + 1);
    for (int r = 0; r <= d; ++r) {
        Rat scaled = full[r] * Rat(den);
        scaled.canonicalize();
        a[r] = scaled.get_num();
    }

    int low = 0;
    while (low <= d && a[low] == 0) ++low;

    std::set<std::string> seen;
    std::vector<Rat> roots;
    auto try_root = [&](Rat x) {
        x.canonicalize();
        if (!seen.insert(rat_to_string(x)).second) return;
        Rat v(0);
        for (int r = d; r >= 0; --r) v = v * x + full[r];
        if (v == 0) roots.push_back(x);
    };
    if (low > 0) try_root(Rat(0));
    if (low <= d && low < d)
        for (const mpz_class& p : positive_divisors(a[low]))
            for (const mpz_class& q : positive_divisors(a[d])) {
                Rat x(p, q);
                x.canonicalize();
                try_root(x);
                try_root(-x);
            }
    return roots;
}

long count_q_homs_from(const NumberField& F, size_t step, std::vector<Rat>& gens) {
    if (step == F.tower.size()) return 1;
    const nf::TowerStep& ts = F.tower[step];

    std::vector<int> degs;
    for (size_t s = 0; s < step; ++s) degs.push_back(F.tower[s].degree());
    auto partial_value = [&](int idx) {
        Rat v(1);
        for (int s = static_cast<int>(step) - 1; s >= 0; --s) {
            int below = 1;
            for (int r = 0; r < s; ++r) below *= degs[r];
            int e = idx / below;
            idx %= below;
            for (int p = 0; p < e; ++p) v *= gens[s];
        }
        return v;
    };

    std::vector<Rat> coeffs(ts.degree());
    for (int r = 0; r < ts.degree(); ++r)
        for (size_t idx = 0; idx < ts.minpoly[r].size(); ++idx)
            if (ts.minpoly[r][idx] != 0)
                coeffs[r] += ts.minpoly[r][idx] * partial_value(static_cast<int>(idx));

    long total = 0;
    for (const Rat& root : rational_roots(coeffs)) {
        gens.push_back(root);
        total += count_q_homs_from(F, step + 1, gens);
        gens.pop_back();
    }
    return total;
}

}  // namespace

TrivialityReport is_trivial_etale(const EtaleAlgebra& A) {
    A.verify();
    TrivialityReport r;
    r.trivial = true;
    for (const auto& f : A.factors) {
        int rel = f->degree / A.base->degree;
        r.k_dim += rel;
        if (rel == 1) {
            r.hom_count += 1;
            continue;
        }
        r.trivial = false;
        if (A.base->degree != 1) throw Error("base field above Q is not supported");
        if (f->tower.empty()) throw Error("missing tower data");
        std::vector<Rat> gens;
        r.hom_count += static_cast<int>(count_q_homs_from(*f, 0, gens));
    }
    r.sections = r.trivial ? static_cast<int>(A.factors.size()) : 0;
    AD_INTERNAL_CHECK((r.hom_count == r.k_dim) == r.trivial,
                      "section count must match the dimension exactly when trivial");
    return r;
}

}  // namespace ad::pf
