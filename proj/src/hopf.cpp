#include "ad/hopf.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ad::hopf {

namespace {

std::string tuple_detail(std::initializer_list<int> idx) {
    std::ostringstream os;
    os << "basis (";
    bool first = true;
    for (int i : idx) {
        if (!first) os << ",";
        os << i;
        first = false;
    }
    os << ")";
    return os.str();
}

}  // namespace

AlgElt CommAlgebra::zero() const { return AlgElt(dim, base->zero()); }

AlgElt CommAlgebra::basis(int i) const {
    AlgElt e = zero();
    e[i] = base->one();
    return e;
}

AlgElt CommAlgebra::mul(const AlgElt& x, const AlgElt& y) const {
    AlgElt r = zero();
    for (int i = 0; i < dim; ++i) {
        if (base->is_zero(x[i])) continue;
        for (int j = 0; j < dim; ++j) {
            if (base->is_zero(y[j])) continue;
            Scalar c = base->mul(x[i], y[j]);
            for (int k = 0; k < dim; ++k)
                if (!base->is_zero(sc(i, j, k)))
                    r[k] = vec_add(r[k], base->mul(c, sc(i, j, k)));
        }
    }
    return r;
}

void CommAlgebra::verify() const {
    AD_INTERNAL_CHECK(base != nullptr, "algebra without base field");
    if (dim <= 0) throw Error("algebra dimension must be positive");
    if (mult.size() != static_cast<size_t>(dim) * dim * dim)
        throw Error("bad algebra tensor size");
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (sc(i, j, k) != sc(j, i, k)) throw Error("algebra not commutative");
    for (int i = 0; i < dim; ++i) {
        AlgElt bi = basis(i);
        if (mul(unit, bi) != bi) throw Error("unit is not a unit");
    }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            AlgElt ij = mul(basis(i), basis(j));
            for (int k = 0; k < dim; ++k)
                if (mul(ij, basis(k)) != mul(basis(i), mul(basis(j), basis(k))))
                    throw Error("algebra not associative");
        }
}

TensorElt HopfAlgebra::apply_comult(const AlgElt& x) const {
    int d = dim();
    TensorElt r(static_cast<size_t>(d) * d, K().zero());
    for (int k = 0; k < d; ++k) {
        if (K().is_zero(x[k])) continue;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (!K().is_zero(cm(k, i, j)))
                    r[static_cast<size_t>(i) * d + j] =
                        vec_add(r[static_cast<size_t>(i) * d + j], K().mul(x[k], cm(k, i, j)));
    }
    return r;
}

Scalar HopfAlgebra::apply_counit(const AlgElt& x) const {
    Scalar r = K().zero();
    for (int k = 0; k < dim(); ++k)
        if (!K().is_zero(x[k])) r = vec_add(r, K().mul(x[k], counit[k]));
    return r;
}

AlgElt HopfAlgebra::apply_antipode(const AlgElt& x) const {
    AlgElt r = alg.zero();
    for (int k = 0; k < dim(); ++k) {
        if (K().is_zero(x[k])) continue;
        for (int i = 0; i < dim(); ++i)
            if (!K().is_zero(sp(k, i))) r[i] = vec_add(r[i], K().mul(x[k], sp(k, i)));
    }
    return r;
}

TensorElt HopfAlgebra::tensor_mul(const TensorElt& x, const TensorElt& y) const {
    int d = dim();
    TensorElt r(static_cast<size_t>(d) * d, K().zero());
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
            const Scalar& xc = x[static_cast<size_t>(p) * d + q];
            if (K().is_zero(xc)) continue;
            for (int s = 0; s < d; ++s)
                for (int t = 0; t < d; ++t) {
                    const Scalar& yc = y[static_cast<size_t>(s) * d + t];
                    if (K().is_zero(yc)) continue;
                    Scalar c = K().mul(xc, yc);
                    for (int i = 0; i < d; ++i) {
                        if (K().is_zero(alg.sc(p, s, i))) continue;
                        Scalar ci = K().mul(c, alg.sc(p, s, i));
                        for (int j = 0; j < d; ++j)
                            if (!K().is_zero(alg.sc(q, t, j)))
                                r[static_cast<size_t>(i) * d + j] =
                                    vec_add(r[static_cast<size_t>(i) * d + j],
                                            K().mul(ci, alg.sc(q, t, j)));
                    }
                }
        }
    return r;
}

bool HopfReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const AxiomCheck& c) { return c.pass; });
}

std::string HopfReport::summary() const {
    std::ostringstream os;
    for (const AxiomCheck& c : checks) {
        os << (c.pass ? "  [pass] " : "  [FAIL] ") << c.name;
        if (!c.pass && !c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    return os.str();
}

HopfReport verify_hopf(const HopfAlgebra& H) {
    HopfReport rep;
    const nf::NumberField& K = H.K();
    int d = H.dim();

    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, pass ? "" : detail});
    };

    // algebra axioms
    {
        bool pass = true;
        std::string detail;
        try {
            H.alg.verify();
        } catch (const Error& e) {
            pass = false;
            detail = e.what();
        }
        add("algebra (commutative, associative, unital)", pass, detail);
    }

    bool zero_ok = H.comult.size() == static_cast<size_t>(d) * d * d &&
                   H.counit.size() == static_cast<size_t>(d) &&
                   H.antipode.size() == static_cast<size_t>(d) * d;
    add("tensor shapes", zero_ok, "wrong tensor sizes");
    if (!zero_ok) return rep;

    // comultiplication is an algebra hom, and Delta(1) = 1(x)1
    {
        bool pass = true;
        std::string detail;
        TensorElt du = H.apply_comult(H.alg.unit);
        // Delta(1) must be idempotent and equal to 1(x)1
        TensorElt oneone(static_cast<size_t>(d) * d, K.zero());
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                oneone[static_cast<size_t>(i) * d + j] =
                    K.mul(H.alg.unit[i], H.alg.unit[j]);
        if (du != oneone) {
            pass = false;
            detail = "Delta(1) != 1(x)1";
        }
        for (int i = 0; i < d && pass; ++i)
            for (int j = i; j < d && pass; ++j) {
                TensorElt lhs = H.apply_comult(H.alg.mul(H.alg.basis(i), H.alg.basis(j)));
                TensorElt rhs = H.tensor_mul(H.apply_comult(H.alg.basis(i)),
                                             H.apply_comult(H.alg.basis(j)));
                if (lhs != rhs) {
                    pass = false;
                    detail = tuple_detail({i, j});
                }
            }
        add("comultiplication is an algebra homomorphism", pass, detail);
    }

    // counit is an algebra hom with eps(1) = 1
    {
        bool pass = K.is_one(H.apply_counit(H.alg.unit));
        std::string detail = pass ? "" : "eps(1) != 1";
        for (int i = 0; i < d && pass; ++i)
            for (int j = i; j < d && pass; ++j) {
                Scalar lhs = H.apply_counit(H.alg.mul(H.alg.basis(i), H.alg.basis(j)));
                Scalar rhs = K.mul(H.counit[i], H.counit[j]);
                if (lhs != rhs) {
                    pass = false;
                    detail = tuple_detail({i, j});
                }
            }
        add("counit is an algebra homomorphism", pass, detail);
    }

    // coassociativity on basis elements
    {
        bool pass = true;
        std::string detail;
        size_t d3 = static_cast<size_t>(d) * d * d;
        for (int k = 0; k < d && pass; ++k) {
            std::vector<Scalar> lhs(d3, K.zero()), rhs(d3, K.zero());
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    const Scalar& c = H.cm(k, i, j);
                    if (K.is_zero(c)) continue;
                    // (Delta (x) id): expand b_i
                    for (int p = 0; p < d; ++p)
                        for (int q = 0; q < d; ++q)
                            if (!K.is_zero(H.cm(i, p, q)))
                                lhs[(static_cast<size_t>(p) * d + q) * d + j] = vec_add(
                                    lhs[(static_cast<size_t>(p) * d + q) * d + j],
                                    K.mul(c, H.cm(i, p, q)));
                    // (id (x) Delta): expand b_j
                    for (int p = 0; p < d; ++p)
                        for (int q = 0; q < d; ++q)
                            if (!K.is_zero(H.cm(j, p, q)))
                                rhs[(static_cast<size_t>(i) * d + p) * d + q] = vec_add(
                                    rhs[(static_cast<size_t>(i) * d + p) * d + q],
                                    K.mul(c, H.cm(j, p, q)));
                }
            if (lhs != rhs) {
                pass = false;
                detail = tuple_detail({k});
            }
        }
        add("coassociativity", pass, detail);
    }

    // counit axiom
    {
        bool pass = true;
        std::string detail;
        for (int k = 0; k < d && pass; ++k) {
            AlgElt left = H.alg.zero(), right = H.alg.zero();
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    const Scalar& c = H.cm(k, i, j);
                    if (K.is_zero(c)) continue;
                    left[j] = vec_add(left[j], K.mul(c, H.counit[i]));
                    right[i] = vec_add(right[i], K.mul(c, H.counit[j]));
                }
            AlgElt bk = H.alg.basis(k);
            if (left != bk || right != bk) {
                pass = false;
                detail = tuple_detail({k});
            }
        }
        add("counit axiom", pass, detail);
    }

    // antipode axiom: m(S(x)id)Delta = unit . eps = m(id(x)S)Delta
    {
        bool pass = true;
        std::string detail;
        for (int k = 0; k < d && pass; ++k) {
            AlgElt left = H.alg.zero(), right = H.alg.zero();
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    const Scalar& c = H.cm(k, i, j);
                    if (K.is_zero(c)) continue;
                    AlgElt si = H.apply_antipode(H.alg.basis(i));
                    AlgElt sj = H.apply_antipode(H.alg.basis(j));
                    AlgElt l = H.alg.mul(si, H.alg.basis(j));
                    AlgElt r = H.alg.mul(H.alg.basis(i), sj);
                    for (int t = 0; t < d; ++t) {
                        left[t] = vec_add(left[t], K.mul(c, l[t]));
                        right[t] = vec_add(right[t], K.mul(c, r[t]));
                    }
                }
            AlgElt expect = H.alg.zero();
            for (int t = 0; t < d; ++t) expect[t] = K.mul(H.counit[k], H.alg.unit[t]);
            if (left != expect || right != expect) {
                pass = false;
                detail = tuple_detail({k});
            }
        }
        add("antipode axiom", pass, detail);
    }

    return rep;
}

HopfAlgebra trivial_bundle_hopf(const grp::FiniteGroup& G,
                                std::shared_ptr<const nf::NumberField> A) {
    int d = G.order;
    HopfAlgebra H;
    H.alg.base = A;
    H.alg.dim = d;
    H.alg.basis_labels.resize(d);
    for (int g = 0; g < d; ++g)
        H.alg.basis_labels[g] =
            "d[" + (G.labels.empty() ? std::to_string(g) : G.labels[g]) + "]";
    H.alg.mult.assign(static_cast<size_t>(d) * d * d, A->zero());
    for (int g = 0; g < d; ++g) H.alg.sc(g, g, g) = A->one();
    H.alg.unit.assign(d, A->one());
    H.comult.assign(static_cast<size_t>(d) * d * d, A->zero());
    for (int h = 0; h < d; ++h)
        for (int k = 0; k < d; ++k) H.cm(G.mul(h, k), h, k) = A->one();
    H.counit.assign(d, A->zero());
    H.counit[G.identity] = A->one();
    H.antipode.assign(static_cast<size_t>(d) * d, A->zero());
    for (int g = 0; g < d; ++g) H.sp(g, G.inverse[g]) = A->one();
    return H;
}

HopfAlgebra mu_hopf(int n, std::shared_ptr<const nf::NumberField> A) {
    if (n < 1) throw Error("level must be >= 1");
    HopfAlgebra H;
    H.alg.base = A;
    H.alg.dim = n;
    H.alg.basis_labels.resize(n);
    for (int k = 0; k < n; ++k)
        H.alg.basis_labels[k] = k == 0 ? "1" : (k == 1 ? "t" : "t^" + std::to_string(k));
    H.alg.mult.assign(static_cast<size_t>(n) * n * n, A->zero());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) H.alg.sc(i, j, (i + j) % n) = A->one();
    H.alg.unit.assign(n, A->zero());
    H.alg.unit[0] = A->one();
    H.comult.assign(static_cast<size_t>(n) * n * n, A->zero());
    for (int k = 0; k < n; ++k) H.cm(k, k, k) = A->one();
    H.counit.assign(n, A->one());
    H.antipode.assign(static_cast<size_t>(n) * n, A->zero());
    for (int k = 0; k < n; ++k) H.sp(k, (n - k) % n) = A->one();
    return H;
}

AlgElt HopfMorphism::apply(const HopfAlgebra& target, const AlgElt& x) const {
    const nf::NumberField& K = target.K();
    AlgElt r(rows, K.zero());
    for (int j = 0; j < cols; ++j) {
        if (K.is_zero(x[j])) continue;
        for (int i = 0; i < rows; ++i)
            if (!K.is_zero(at(i, j))) r[i] = vec_add(r[i], K.mul(x[j], at(i, j)));
    }
    return r;
}

void HopfMorphism::verify(const HopfAlgebra& source, const HopfAlgebra& target) const {
    const nf::NumberField& K = target.K();
    AD_INTERNAL_CHECK(source.alg.base.get() == target.alg.base.get() ||
                          source.K().degree == target.K().degree,
                      "morphism across different base fields");
    if (rows != target.dim() || cols != source.dim()) throw Error("morphism shape mismatch");
    if (apply(target, source.alg.unit) != target.alg.unit)
        throw Error("morphism does not preserve the unit");
    int ds = source.dim(), dt = target.dim();
    for (int i = 0; i < ds; ++i)
        for (int j = i; j < ds; ++j) {
            AlgElt lhs = apply(target, source.alg.mul(source.alg.basis(i), source.alg.basis(j)));
            AlgElt rhs =
                target.alg.mul(apply(target, source.alg.basis(i)),
                               apply(target, source.alg.basis(j)));
            if (lhs != rhs) throw Error("morphism is not an algebra homomorphism");
        }
    // (M(x)M) Delta_src = Delta_tgt M on basis
    for (int k = 0; k < ds; ++k) {
        TensorElt rhs = target.apply_comult(apply(target, source.alg.basis(k)));
        TensorElt lhs(static_cast<size_t>(dt) * dt, K.zero());
        for (int i = 0; i < ds; ++i)
            for (int j = 0; j < ds; ++j) {
                const Scalar& c = source.cm(k, i, j);
                if (K.is_zero(c)) continue;
                for (int p = 0; p < dt; ++p) {
                    if (K.is_zero(at(p, i))) continue;
                    Scalar cp = K.mul(c, at(p, i));
                    for (int q = 0; q < dt; ++q)
                        if (!K.is_zero(at(q, j)))
                            lhs[static_cast<size_t>(p) * dt + q] =
                                vec_add(lhs[static_cast<size_t>(p) * dt + q],
                                        K.mul(cp, at(q, j)));
                }
            }
        if (lhs != rhs) throw Error("morphism does not intertwine comultiplication");
    }
    for (int k = 0; k < ds; ++k) {
        if (target.apply_counit(apply(target, source.alg.basis(k))) != source.counit[k])
            throw Error("morphism does not intertwine counit");
        AlgElt lhs = apply(target, source.apply_antipode(source.alg.basis(k)));
        AlgElt rhs = target.apply_antipode(apply(target, source.alg.basis(k)));
        if (lhs != rhs) throw Error("morphism does not intertwine antipode");
    }
}

CartierIso cartier_iso(int n, std::shared_ptr<const nf::NumberField> A,
                       const nf::FieldElement& zeta) {
    if (n < 1) throw Error("level must be >= 1");
    // primitivity: zeta^n = 1, zeta^k != 1 for 0 < k < n
    nf::FieldElement p = A->one();
    for (int k = 1; k < n; ++k) {
        p = A->mul(p, zeta);
        if (A->is_one(p)) throw Error("not a primitive root");
    }
    p = A->mul(p, zeta);
    if (!A->is_one(p)) throw Error("not a primitive root");

    CartierIso iso;
    iso.mu = mu_hopf(n, A);
    iso.trivial = trivial_bundle_hopf(grp::cyclic_group(n), A);
    iso.forward.rows = n;
    iso.forward.cols = n;
    iso.forward.matrix.assign(static_cast<size_t>(n) * n, A->zero());
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            iso.forward.at(j, k) = A->pow(zeta, static_cast<long>(k) * j % n);
    iso.forward.verify(iso.mu, iso.trivial);

    // invert the character (Vandermonde) matrix by elimination over A
    int d = n;
    std::vector<nf::FieldElement> aug(static_cast<size_t>(d) * 2 * d, A->zero());
    auto at = [&](int i, int j) -> nf::FieldElement& {
        return aug[static_cast<size_t>(i) * 2 * d + j];
    };
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) at(i, j) = iso.forward.at(i, j);
        at(i, d + i) = A->one();
    }
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int r = col; r < d; ++r)
            if (!A->is_zero(at(r, col))) {
                piv = r;
                break;
            }
        if (piv < 0) throw Error("character matrix is singular");
        if (piv != col)
            for (int j = 0; j < 2 * d; ++j) std::swap(at(piv, j), at(col, j));
        nf::FieldElement inv = A->inv(at(col, col));
        for (int j = 0; j < 2 * d; ++j) at(col, j) = A->mul(at(col, j), inv);
        for (int r = 0; r < d; ++r) {
            if (r == col || A->is_zero(at(r, col))) continue;
            nf::FieldElement f = at(r, col);
            for (int j = 0; j < 2 * d; ++j)
                at(r, j) = vec_sub(at(r, j), A->mul(f, at(col, j)));
        }
    }
    iso.backward.rows = n;
    iso.backward.cols = n;
    iso.backward.matrix.assign(static_cast<size_t>(n) * n, A->zero());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) iso.backward.at(i, j) = at(i, d + j);
    iso.backward.verify(iso.trivial, iso.mu);
    return iso;
}

grp::FiniteGroup grouplike_points(const HopfAlgebra& H, const FactorData& factors) {
    const nf::NumberField& K = H.K();
    int d = H.dim();
    size_t nf_count = factors.idempotents.size();
    if (nf_count == 0 || factors.embeddings_per_factor.size() != nf_count)
        throw Error("bad decomposition");

    // orthogonal idempotents summing to 1
    AlgElt sum = H.alg.zero();
    for (const AlgElt& e : factors.idempotents) {
        if (H.alg.mul(e, e) != e) throw Error("bad decomposition");
        for (int t = 0; t < d; ++t) sum[t] = vec_add(sum[t], e[t]);
    }
    if (sum != H.alg.unit) throw Error("bad decomposition");
    for (size_t a = 0; a < nf_count; ++a)
        for (size_t b = a + 1; b < nf_count; ++b)
            if (H.alg.mul(factors.idempotents[a], factors.idempotents[b]) != H.alg.zero())
                throw Error("bad decomposition");

    // collect points: every embedding must be a unital algebra hom that is 1
    // on its own idempotent
    std::vector<std::vector<Scalar>> points;
    for (size_t f = 0; f < nf_count; ++f) {
        const auto& lam = factors.embeddings_per_factor[f];
        if (lam.size() != static_cast<size_t>(d)) throw Error("bad decomposition");
        auto eval = [&](const AlgElt& x) {
            Scalar r = K.zero();
            for (int t = 0; t < d; ++t)
                if (!K.is_zero(x[t])) r = vec_add(r, K.mul(x[t], lam[t]));
            return r;
        };
        if (!K.is_one(eval(H.alg.unit))) throw Error("bad decomposition");
        if (!K.is_one(eval(factors.idempotents[f]))) throw Error("bad decomposition");
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j)
                if (eval(H.alg.mul(H.alg.basis(i), H.alg.basis(j))) !=
                    K.mul(eval(H.alg.basis(i)), eval(H.alg.basis(j))))
                    throw Error("bad decomposition");
        points.push_back(lam);
    }

    int m = static_cast<int>(points.size());
    // convolution: (x*y)(b_k) = sum_{i,j} cm(k,i,j) x(b_i) y(b_j)
    auto convolve = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
        std::vector<Scalar> r(d, K.zero());
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i) {
                if (K.is_zero(x[i])) continue;
                for (int j = 0; j < d; ++j)
                    if (!K.is_zero(H.cm(k, i, j)) && !K.is_zero(y[j]))
                        r[k] = vec_add(r[k], K.mul(H.cm(k, i, j), K.mul(x[i], y[j])));
            }
        return r;
    };
    auto find = [&](const std::vector<Scalar>& x) {
        for (int i = 0; i < m; ++i)
            if (points[i] == x) return i;
        return -1;
    };

    grp::FiniteGroup G;
    G.order = m;
    G.table.resize(static_cast<size_t>(m) * m);
    G.inverse.assign(m, -1);
    G.labels.resize(m);
    for (int i = 0; i < m; ++i) G.labels[i] = "p" + std::to_string(i);
    // identity point = counit
    int e = find(H.counit);
    if (e < 0) throw Error("comultiplication not grouplike-compatible");
    G.identity = e;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int k = find(convolve(points[i], points[j]));
            if (k < 0) throw Error("comultiplication not grouplike-compatible");
            G.table[static_cast<size_t>(i) * m + j] = k;
            if (k == e) G.inverse[i] = j;
        }
    G.verify();
    return G;
}

SchurReport schur_block_check(const CharacterData& cd) {
    int total = 0;
    for (int dim : cd.irreducible_dims) total += dim * dim;
    if (total != cd.group_order) throw Error("bad character data");
    std::vector<bool> used(cd.irreducible_dims.size(), false);
    SchurReport rep;
    for (const auto& orbit : cd.galois_orbits) {
        int block = 0;
        for (int idx : orbit) {
            if (idx < 0 || idx >= static_cast<int>(cd.irreducible_dims.size()) || used[idx])
                throw Error("bad character data");
            used[idx] = true;
            block += cd.irreducible_dims[idx] * cd.irreducible_dims[idx];
        }
        rep.block_dims.push_back(block);
        rep.total += block;
    }
    if (!std::all_of(used.begin(), used.end(), [](bool b) { return b; }))
        throw Error("bad character data");
    if (rep.total != cd.group_order) throw Error("bad character data");
    return rep;
}

HopfAlgebra perturb_structure_constant(const HopfAlgebra& H, unsigned seed) {
    std::mt19937 rng(seed);
    HopfAlgebra M = H;
    const nf::NumberField& K = H.K();
    size_t sizes[4] = {M.alg.mult.size(), M.comult.size(), M.counit.size(),
                       M.antipode.size()};
    size_t total = sizes[0] + sizes[1] + sizes[2] + sizes[3];
    std::uniform_int_distribution<size_t> pick(0, total - 1);
    std::uniform_int_distribution<int> delta_num(1, 7);
    size_t idx = pick(rng);
    Scalar delta = K.from_rat(Rat(delta_num(rng)));
    if (idx < sizes[0]) {
        M.alg.mult[idx] = vec_add(M.alg.mult[idx], delta);
    } else if (idx < sizes[0] + sizes[1]) {
        M.comult[idx - sizes[0]] = vec_add(M.comult[idx - sizes[0]], delta);
    } else if (idx < sizes[0] + sizes[1] + sizes[2]) {
        M.counit[idx - sizes[0] - sizes[1]] =
            vec_add(M.counit[idx - sizes[0] - sizes[1]], delta);
    } else {
        size_t j = idx - sizes[0] - sizes[1] - sizes[2];
        M.antipode[j] = vec_add(M.antipode[j], delta);
    }
    return M;
}

}  // namespace ad::hopf
