#include "ad/numfield.hpp"

#include <algorithm>
#include <random>

namespace ad::nf {

FieldElement NumberField::one() const {
    FieldElement e(degree);
    e[0] = 1;  // invariant: b_0 = 1 in every constructed field
    return e;
}

FieldElement NumberField::from_rat(const Rat& q) const {
    FieldElement e(degree);
    e[0] = q;
    return e;
}

FieldElement NumberField::mul(const FieldElement& x, const FieldElement& y) const {
    AD_INTERNAL_CHECK(static_cast<int>(x.size()) == degree &&
                          static_cast<int>(y.size()) == degree,
                      "element size mismatch");
    FieldElement r(degree);
    for (int i = 0; i < degree; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < degree; ++j) {
            if (y[j] == 0) continue;
            Rat c = x[i] * y[j];
            for (int k = 0; k < degree; ++k)
                if (sc(i, j, k) != 0) r[k] += c * sc(i, j, k);
        }
    }
    return r;
}

FieldElement NumberField::pow(const FieldElement& x, long n) const {
    AD_INTERNAL_CHECK(n >= 0, "negative power");
    FieldElement r = one(), base = x;
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

Mat NumberField::mul_matrix(const FieldElement& x) const {
    Mat m(degree, degree);
    for (int j = 0; j < degree; ++j) {
        FieldElement col(degree);
        for (int i = 0; i < degree; ++i) {
            if (x[i] == 0) continue;
            for (int k = 0; k < degree; ++k)
                if (sc(i, j, k) != 0) col[k] += x[i] * sc(i, j, k);
        }
        for (int k = 0; k < degree; ++k) m.at(k, j) = col[k];
    }
    return m;
}

FieldElement NumberField::inv(const FieldElement& x) const {
    if (is_zero(x)) throw Error("division by zero");
    Vec y;
    if (!solve(mul_matrix(x), one(), y)) throw Error("element is not invertible");
    return y;
}

bool NumberField::is_one(const FieldElement& x) const { return x == one(); }

FieldElement NumberField::embed_prefix(const Vec& v) const {
    AD_INTERNAL_CHECK(static_cast<int>(v.size()) <= degree, "prefix too long");
    FieldElement e(degree);
    std::copy(v.begin(), v.end(), e.begin());
    return e;
}

namespace {

FieldElement basis_elem(const NumberField& F, int i) {
    FieldElement e(F.degree);
    e[i] = 1;
    return e;
}

// trace of multiplication by b_l, precomputed per basis index
Vec trace_vector(const NumberField& F) {
    Vec t(F.degree);
    for (int l = 0; l < F.degree; ++l)
        for (int k = 0; k < F.degree; ++k) t[l] += F.sc(l, k, k);
    return t;
}

}  // namespace

void NumberField::verify() const {
    if (degree <= 0) throw Error("degree must be positive");
    if (mult.size() != static_cast<size_t>(degree) * degree * degree)
        throw Error("bad structure tensor size");
    if (!tower.empty()) {
        long prod = 1;
        for (const TowerStep& s : tower) prod *= s.degree();
        if (prod != degree) throw Error("tower degrees do not multiply to the field degree");
    }
    // unital with b_0 = 1
    for (int i = 0; i < degree; ++i) {
        FieldElement bi = basis_elem(*this, i);
        if (mul(one(), bi) != bi || mul(bi, one()) != bi) throw Error("b_0 is not a unit");
    }
    // commutative and associative on basis triples
    for (int i = 0; i < degree; ++i)
        for (int j = i; j < degree; ++j) {
            for (int k = 0; k < degree; ++k)
                if (sc(i, j, k) != sc(j, i, k)) throw Error("multiplication not commutative");
        }
    std::vector<FieldElement> basis(degree);
    for (int i = 0; i < degree; ++i) basis[i] = basis_elem(*this, i);
    for (int i = 0; i < degree; ++i)
        for (int j = 0; j < degree; ++j) {
            FieldElement ij = mul(basis[i], basis[j]);
            for (int k = 0; k < degree; ++k)
                if (mul(ij, basis[k]) != mul(basis[i], mul(basis[j], basis[k])))
                    throw Error("multiplication not associative");
        }
    // every nonzero basis element invertible, and the trace form is
    // nondegenerate (rules out nilpotents)
    for (int i = 0; i < degree; ++i)
        if (rank(mul_matrix(basis[i])) != degree)
            throw Error("reducible minimal polynomial");
    // zero-divisor sweep over small basis combinations; catches splits like
    // Q[x]/(x^2-1) whose trace form is still nondegenerate
    for (int i = 0; i < degree; ++i)
        for (int j = i + 1; j < degree; ++j)
            for (int sgn : {1, -1}) {
                FieldElement x = basis[i];
                for (int k = 0; k < degree; ++k) x[k] += Rat(sgn) * basis[j][k];
                if (!is_zero(x) && rank(mul_matrix(x)) != degree)
                    throw Error("reducible minimal polynomial");
            }
    Vec tv = trace_vector(*this);
    Mat gram(degree, degree);
    for (int i = 0; i < degree; ++i)
        for (int j = 0; j < degree; ++j) {
            FieldElement p = mul(basis[i], basis[j]);
            Rat t = 0;
            for (int l = 0; l < degree; ++l) t += p[l] * tv[l];
            gram.at(i, j) = t;
        }
    if (rank(gram) != degree) throw Error("reducible minimal polynomial");
}

void NumberField::verify_inverses(int count, unsigned seed) const {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-100, 100);
    std::uniform_int_distribution<int> den(1, 20);
    for (int t = 0; t < count; ++t) {
        FieldElement x(degree);
        do {
            for (int i = 0; i < degree; ++i) {
                x[i] = Rat(num(rng), den(rng));
                x[i].canonicalize();
            }
        } while (is_zero(x));
        FieldElement y = inv(x);  // throws when not a field
        if (!is_one(mul(x, y))) throw Error("inverse is inexact");
    }
}

NumberField base_rationals() {
    NumberField F;
    F.degree = 1;
    F.base_degree = 1;
    F.basis_labels = {"1"};
    F.mult = {Rat(1)};
    return F;
}

NumberField extend(const NumberField& F, const std::string& label,
                   const std::vector<Vec>& minpoly, int degree_bound) {
    int d = static_cast<int>(minpoly.size()) - 1;
    if (d < 1) throw Error("minimal polynomial must have degree >= 1");
    for (const Vec& c : minpoly)
        if (static_cast<int>(c.size()) != F.degree)
            throw Error("minpoly coefficient has wrong length");
    {
        Vec lead = minpoly.back();
        if (lead != F.one()) throw Error("minimal polynomial must be monic");
    }
    int m = F.degree, n = m * d;
    if (n > degree_bound) throw Error("field degree exceeds bound");

    if (d == 1) {
        // degree-1 step collapses; keep the step for bookkeeping
        NumberField G = F;
        TowerStep step{label, minpoly};
        G.tower.push_back(step);
        // tower product now includes a factor of 1; still consistent
        return G;
    }

    // powers of the generator reduced mod minpoly, as polys of degree < d
    // with coefficients in F
    using Poly = std::vector<FieldElement>;
    std::vector<Poly> gpow(2 * d - 1, Poly(d, F.zero()));
    gpow[0][0] = F.one();
    for (int t = 1; t <= 2 * d - 2; ++t) {
        Poly shifted(d + 1, F.zero());
        for (int k = 0; k < d; ++k) shifted[k + 1] = gpow[t - 1][k];
        if (!F.is_zero(shifted[d])) {
            for (int k = 0; k < d; ++k) {
                FieldElement red = F.mul(shifted[d], minpoly[k]);
                for (int i = 0; i < m; ++i) shifted[k][i] -= red[i];
            }
        }
        shifted.resize(d);
        gpow[t] = shifted;
    }

    NumberField G;
    G.degree = n;
    G.base_degree = F.base_degree;
    G.tower = F.tower;
    G.tower.push_back(TowerStep{label, minpoly});
    G.mult.assign(static_cast<size_t>(n) * n * n, Rat(0));
    G.basis_labels.resize(n);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < m; ++i) {
            std::string base = F.basis_labels[i];
            std::string gen = j == 0 ? "" : (j == 1 ? label : label + "^" + std::to_string(j));
            std::string lab;
            if (j == 0)
                lab = base;
            else if (base == "1")
                lab = gen;
            else
                lab = base + "*" + gen;
            G.basis_labels[j * m + i] = lab;
        }

    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            FieldElement fik(m);
            for (int l = 0; l < m; ++l) fik[l] = F.sc(i, k, l);
            for (int j = 0; j < d; ++j)
                for (int l = 0; l < d; ++l) {
                    const Poly& p = gpow[j + l];
                    int a = j * m + i, b = l * m + k;
                    for (int t = 0; t < d; ++t) {
                        if (F.is_zero(p[t])) continue;
                        FieldElement coeff = F.mul(fik, p[t]);
                        for (int r = 0; r < m; ++r)
                            if (coeff[r] != 0) G.sc(a, b, t * m + r) = coeff[r];
                    }
                }
        }
    G.verify();  // throws "reducible minimal polynomial" on zero divisors
    // The trace form of a split etale algebra is still nondegenerate, so
    // randomized inversion is needed to tell Q x Q apart from a field.
    try {
        G.verify_inverses(8, 0x5eedu + static_cast<unsigned>(n));
    } catch (const Error&) {
        throw Error("reducible minimal polynomial");
    }
    return G;
}

namespace {

FieldElement eval_poly_at(const NumberField& L, const std::vector<Vec>& coeffs,
                          const FieldElement& x) {
    // coefficients live over a partial tower; embed and run Horner
    FieldElement acc = L.zero();
    for (int t = static_cast<int>(coeffs.size()) - 1; t >= 0; --t)
        acc = vec_add(L.mul(acc, x), L.embed_prefix(coeffs[t]));
    return acc;
}

}  // namespace

AutomorphismGroup automorphisms(const NumberField& L, const RootCertificates& certs) {
    size_t steps = L.tower.size();
    if (certs.size() != steps) throw Error("one root list per tower step required");

    std::vector<int> step_deg(steps), stride(steps);
    {
        int acc = 1;
        for (size_t t = 0; t < steps; ++t) {
            step_deg[t] = L.tower[t].degree();
            stride[t] = acc;
            acc *= step_deg[t];
        }
        AD_INTERNAL_CHECK(acc == L.degree, "tower/degree mismatch");
    }
    // the designated base must be a tower prefix
    {
        int acc = 1;
        bool found = acc == L.base_degree;
        for (size_t t = 0; t < steps && !found; ++t) {
            acc *= step_deg[t];
            found = acc == L.base_degree;
        }
        if (!found) throw Error("base degree is not a tower prefix");
    }

    for (size_t t = 0; t < steps; ++t) {
        if (static_cast<int>(certs[t].size()) != step_deg[t])
            throw Error("extension not Galois over base");
        for (const FieldElement& r : certs[t]) {
            if (static_cast<int>(r.size()) != L.degree) throw Error("bad root certificate");
            if (!vec_is_zero(eval_poly_at(L, L.tower[t].minpoly, r)))
                throw Error("bad root certificate");
        }
        for (size_t a = 0; a < certs[t].size(); ++a)
            for (size_t b = a + 1; b < certs[t].size(); ++b)
                if (certs[t][a] == certs[t][b]) throw Error("bad root certificate");
    }

    // root powers per step
    std::vector<std::vector<std::vector<FieldElement>>> rpow(steps);
    for (size_t t = 0; t < steps; ++t) {
        rpow[t].resize(certs[t].size());
        for (size_t r = 0; r < certs[t].size(); ++r) {
            rpow[t][r].resize(step_deg[t]);
            rpow[t][r][0] = L.one();
            for (int e = 1; e < step_deg[t]; ++e)
                rpow[t][r][e] = L.mul(rpow[t][r][e - 1], certs[t][r]);
        }
    }

    int n = L.degree;
    long candidates = 1;
    for (size_t t = 0; t < steps; ++t) candidates *= step_deg[t];

    std::vector<Mat> valid;
    std::vector<FieldElement> b(n);
    for (int i = 0; i < n; ++i) {
        b[i] = FieldElement(n);
        b[i][i] = 1;
    }

    for (long c = 0; c < candidates; ++c) {
        // build candidate columns: basis monomial -> product of root powers
        std::vector<FieldElement> cols(n);
        bool fixes_base = true;
        for (int k = 0; k < n && fixes_base; ++k) {
            FieldElement img = L.one();
            for (size_t t = 0; t < steps; ++t) {
                int e = (k / stride[t]) % step_deg[t];
                if (e == 0) continue;
                int rchoice = static_cast<int>((c / stride[t]) % step_deg[t]);
                img = L.mul(img, rpow[t][rchoice][e]);
            }
            cols[k] = img;
            if (k < L.base_degree && img != b[k]) fixes_base = false;
        }
        if (!fixes_base) continue;
        // multiplicative on basis pairs?
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i; j < n && ok; ++j) {
                FieldElement lhs(n);
                for (int k = 0; k < n; ++k) {
                    const Rat& q = L.sc(i, j, k);
                    if (q == 0) continue;
                    for (int r = 0; r < n; ++r) lhs[r] += q * cols[k][r];
                }
                if (lhs != L.mul(cols[i], cols[j])) ok = false;
            }
        if (!ok) continue;
        Mat M(n, n);
        for (int k = 0; k < n; ++k)
            for (int r = 0; r < n; ++r) M.at(r, k) = cols[k][r];
        if (rank(M) != n) continue;
        valid.push_back(std::move(M));
    }

    int expected = L.degree / L.base_degree;
    if (static_cast<int>(valid.size()) != expected) throw Error("extension not Galois over base");

    // identity first, rest in enumeration order
    Mat id = Mat::identity(n);
    std::stable_partition(valid.begin(), valid.end(), [&](const Mat& m) { return m == id; });
    AD_INTERNAL_CHECK(valid[0] == id, "identity automorphism missing");

    AutomorphismGroup ag;
    int g = static_cast<int>(valid.size());
    ag.group.order = g;
    ag.group.identity = 0;
    ag.group.table.resize(static_cast<size_t>(g) * g);
    ag.group.inverse.assign(g, -1);
    ag.group.labels.resize(g);
    for (int i = 0; i < g; ++i) {
        ag.group.labels[i] = "s" + std::to_string(i);
        for (int j = 0; j < g; ++j) {
            Mat prod = mat_mul(valid[i], valid[j]);
            int idx = -1;
            for (int k = 0; k < g; ++k)
                if (valid[k] == prod) {
                    idx = k;
                    break;
                }
            AD_INTERNAL_CHECK(idx >= 0, "automorphisms not closed under composition");
            ag.group.table[static_cast<size_t>(i) * g + j] = idx;
            if (idx == 0) ag.group.inverse[i] = j;
        }
    }
    ag.group.verify();
    ag.auts.reserve(g);
    for (Mat& m : valid) ag.auts.push_back(FieldAutomorphism{std::move(m)});
    return ag;
}

Subfield fixed_field(const NumberField& L, const std::vector<FieldAutomorphism>& auts) {
    // closure under composition
    for (const FieldAutomorphism& a : auts)
        for (const FieldAutomorphism& b : auts) {
            Mat prod = mat_mul(a.matrix, b.matrix);
            bool found = false;
            for (const FieldAutomorphism& c : auts)
                if (c.matrix == prod) {
                    found = true;
                    break;
                }
            if (!found) throw Error("not a subgroup of automorphisms");
        }
    int n = L.degree;
    Mat stacked(static_cast<int>(auts.size()) * n, n);
    for (size_t s = 0; s < auts.size(); ++s)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                stacked.at(static_cast<int>(s) * n + i, j) =
                    auts[s].matrix.at(i, j) - (i == j ? Rat(1) : Rat(0));
    Mat ker = nullspace(stacked);
    std::vector<Vec> rows;
    for (int i = 0; i < ker.rows; ++i) {
        Vec r(n);
        for (int j = 0; j < n; ++j) r[j] = ker.at(i, j);
        rows.push_back(std::move(r));
    }
    Subfield E{row_span(rows, n)};
    AD_INTERNAL_CHECK(subfield_contains(E, L.one()), "fixed field misses 1");
    return E;
}

bool subfield_contains(const Subfield& E, const FieldElement& x) {
    return coords_in_rowspan(E.basis, x).has_value();
}

bool subfield_leq(const Subfield& E1, const Subfield& E2) {
    for (int i = 0; i < E1.basis.rows; ++i) {
        Vec r(E1.basis.cols);
        for (int j = 0; j < E1.basis.cols; ++j) r[j] = E1.basis.at(i, j);
        if (!coords_in_rowspan(E2.basis, r)) return false;
    }
    return true;
}

Vec subfield_coords(const Subfield& E, const FieldElement& x) {
    auto c = coords_in_rowspan(E.basis, x);
    if (!c) throw Error("element outside subfield");
    return *c;
}

namespace {

Subfield saturate(const NumberField& L, std::vector<Vec> rows) {
    rows.push_back(L.one());
    Mat span = row_span(rows, L.degree);
    for (;;) {
        std::vector<Vec> all;
        for (int i = 0; i < span.rows; ++i) {
            Vec r(L.degree);
            for (int j = 0; j < L.degree; ++j) r[j] = span.at(i, j);
            all.push_back(std::move(r));
        }
        std::vector<Vec> next = all;
        for (size_t i = 0; i < all.size(); ++i)
            for (size_t j = i; j < all.size(); ++j) next.push_back(L.mul(all[i], all[j]));
        Mat bigger = row_span(next, L.degree);
        if (bigger.rows == span.rows) return Subfield{std::move(bigger)};
        span = std::move(bigger);
    }
}

}  // namespace

Subfield subfield_span(const NumberField& L, const std::vector<FieldElement>& gens) {
    return saturate(L, gens);
}

Subfield compositum(const NumberField& L, const Subfield& E1, const Subfield& E2) {
    std::vector<Vec> rows;
    for (int i = 0; i < E1.basis.rows; ++i) {
        Vec r(L.degree);
        for (int j = 0; j < L.degree; ++j) r[j] = E1.basis.at(i, j);
        rows.push_back(std::move(r));
    }
    for (int i = 0; i < E2.basis.rows; ++i) {
        Vec r(L.degree);
        for (int j = 0; j < L.degree; ++j) r[j] = E2.basis.at(i, j);
        rows.push_back(std::move(r));
    }
    return saturate(L, rows);
}

FieldElement apply(const FieldAutomorphism& sigma, const FieldElement& x) {
    return mat_vec(sigma.matrix, x);
}

SubfieldAsField subfield_as_field(const NumberField& L, const Subfield& E) {
    // basis with b_0 = 1, then greedy completion from the RREF rows
    std::vector<Vec> chosen{L.one()};
    for (int i = 0; i < E.basis.rows; ++i) {
        Vec r(L.degree);
        for (int j = 0; j < L.degree; ++j) r[j] = E.basis.at(i, j);
        std::vector<Vec> trial = chosen;
        trial.push_back(r);
        if (row_span(trial, L.degree).rows > static_cast<int>(chosen.size()))
            chosen.push_back(std::move(r));
    }
    int m = static_cast<int>(chosen.size());
    if (m != E.degree()) throw Error("subfield basis completion failed");

    Mat emb(m, L.degree);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < L.degree; ++j) emb.at(i, j) = chosen[i][j];
    Mat embT = mat_transpose(emb);

    auto coords = [&](const FieldElement& x) {
        Vec u;
        if (!solve(embT, x, u)) throw Error("element outside subfield");
        return u;
    };

    NumberField F;
    F.degree = m;
    F.base_degree = 1;
    F.basis_labels.resize(m);
    for (int i = 0; i < m; ++i) F.basis_labels[i] = i == 0 ? "1" : "u" + std::to_string(i);
    F.mult.assign(static_cast<size_t>(m) * m * m, Rat(0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Vec u = coords(L.mul(chosen[i], chosen[j]));
            for (int k = 0; k < m; ++k) F.sc(i, j, k) = u[k];
        }
    F.verify();
    return SubfieldAsField{std::move(F), std::move(emb)};
}

}  // namespace ad::nf
