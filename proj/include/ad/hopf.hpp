#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ad/grp.hpp"
#include "ad/numfield.hpp"

namespace ad::hopf {

// Scalar of the base field.
using Scalar = nf::FieldElement;
// Element of the algebra: dim coordinates, each a base-field scalar.
using AlgElt = std::vector<Scalar>;

// Finite-dimensional commutative algebra over a number field, by structure
// constants.
struct CommAlgebra {
    std::shared_ptr<const nf::NumberField> base;
    int dim = 0;
    std::vector<std::string> basis_labels;
    std::vector<Scalar> mult;  // (i*dim+j)*dim+k : coeff of b_k in b_i b_j
    AlgElt unit;

    const Scalar& sc(int i, int j, int k) const {
        return mult[(static_cast<size_t>(i) * dim + j) * dim + k];
    }
    Scalar& sc(int i, int j, int k) {
        return mult[(static_cast<size_t>(i) * dim + j) * dim + k];
    }

    AlgElt zero() const;
    AlgElt basis(int i) const;
    AlgElt mul(const AlgElt& x, const AlgElt& y) const;

    // commutative, associative, unital; exhaustive on basis triples
    void verify() const;
};

// Element of A (x) A in the lexicographic basis b_i (x) b_j, row-major
// index i*dim + j.
using TensorElt = std::vector<Scalar>;

struct HopfAlgebra {
    CommAlgebra alg;
    std::vector<Scalar> comult;    // (k*dim+i)*dim+j : coeff of b_i(x)b_j in D(b_k)
    std::vector<Scalar> counit;    // dim
    std::vector<Scalar> antipode;  // k*dim+i : coeff of b_i in S(b_k)

    int dim() const { return alg.dim; }
    const nf::NumberField& K() const { return *alg.base; }

    const Scalar& cm(int k, int i, int j) const {
        return comult[(static_cast<size_t>(k) * alg.dim + i) * alg.dim + j];
    }
    Scalar& cm(int k, int i, int j) {
        return comult[(static_cast<size_t>(k) * alg.dim + i) * alg.dim + j];
    }
    const Scalar& sp(int k, int i) const {
        return antipode[static_cast<size_t>(k) * alg.dim + i];
    }
    Scalar& sp(int k, int i) { return antipode[static_cast<size_t>(k) * alg.dim + i]; }

    TensorElt apply_comult(const AlgElt& x) const;
    Scalar apply_counit(const AlgElt& x) const;
    AlgElt apply_antipode(const AlgElt& x) const;
    TensorElt tensor_mul(const TensorElt& x, const TensorElt& y) const;
};

struct AxiomCheck {
    std::string name;
    bool pass = false;
    std::string detail;  // first failing basis tuple, when any
};

struct HopfReport {
    std::vector<AxiomCheck> checks;
    bool all_pass() const;
    std::string summary() const;
};

// Exact verification of all Hopf axioms on basis elements.
HopfReport verify_hopf(const HopfAlgebra& H);

// Maps(G, A) with delta-function basis; Hopf structure dual to the group law.
HopfAlgebra trivial_bundle_hopf(const grp::FiniteGroup& G,
                                std::shared_ptr<const nf::NumberField> A);

// A[t]/(t^n - 1) with t grouplike.
HopfAlgebra mu_hopf(int n, std::shared_ptr<const nf::NumberField> A);

// Linear map between Hopf algebras, columns = images of source basis vectors.
struct HopfMorphism {
    std::vector<Scalar> matrix;  // (target dim) x (source dim), row-major over target base
    int rows = 0, cols = 0;

    const Scalar& at(int i, int j) const { return matrix[static_cast<size_t>(i) * cols + j]; }
    Scalar& at(int i, int j) { return matrix[static_cast<size_t>(i) * cols + j]; }
    AlgElt apply(const HopfAlgebra& target, const AlgElt& x) const;
    // algebra hom + intertwines comult, counit, antipode; exact
    void verify(const HopfAlgebra& source, const HopfAlgebra& target) const;
};

struct CartierIso {
    HopfAlgebra mu;       // mu_hopf(n, A)
    HopfAlgebra trivial;  // trivial_bundle_hopf(Z/n, A)
    HopfMorphism forward;
    HopfMorphism backward;
};

// t^k -> (j -> zeta^{kj}); throws "not a primitive root" when zeta is not a
// primitive n-th root of unity in A.
CartierIso cartier_iso(int n, std::shared_ptr<const nf::NumberField> A,
                       const nf::FieldElement& zeta);

// Verified decomposition data for grouplike-point extraction: orthogonal
// idempotents summing to 1, plus the algebra maps H -> base carried by each
// factor (covectors over the base field).
struct FactorData {
    std::vector<AlgElt> idempotents;
    std::vector<std::vector<Scalar>> embeddings_per_factor;  // each: dim covector
};

grp::FiniteGroup grouplike_points(const HopfAlgebra& H, const FactorData& factors);

struct CharacterData {
    int group_order = 0;
    std::vector<int> irreducible_dims;
    std::vector<std::vector<int>> galois_orbits;  // partition of irreducible indices
};

struct SchurReport {
    std::vector<int> block_dims;  // per orbit: sum of (dim V)^2
    int total = 0;
};

// Dimension bookkeeping of the block decomposition of Maps(G, k).
SchurReport schur_block_check(const CharacterData& cd);

// Single-constant perturbation for mutation-sensitivity tests; which tensor
// and which entry are drawn from the seeded RNG.
HopfAlgebra perturb_structure_constant(const HopfAlgebra& H, unsigned seed);

}  // namespace ad::hopf
