#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ad/grp.hpp"
#include "ad/hopf.hpp"
#include "ad/numfield.hpp"

namespace ad::adj {

// A finite Galois extension L/K with its Galois group acting by verified
// automorphism matrices. K is the designated base subfield of L (the prefix
// of degree L.base_degree); the fixed field of the full group must equal it.
struct GaloisExtensionData {
    std::shared_ptr<const nf::NumberField> L;
    grp::FiniteGroup G;
    std::vector<nf::FieldAutomorphism> action;  // element index -> matrix
    int K_degree = 1;
    nf::Subfield K;
};

GaloisExtensionData build_extension(std::shared_ptr<const nf::NumberField> L,
                                    const nf::RootCertificates& certs);

// One point of Ad(L/K): a conjugacy class with its residue field L^{C_c}.
struct AdjointPoint {
    int class_rep = 0;
    nf::Subfield residue;
    int degree = 0;  // [L^{C_c} : K]
};

// Ad(L/K) in its product presentation prod_c L^{C_c}, with the twisted
// class-function and diagonal-invariant models carried as exact matrices.
struct AdjointBundle {
    hopf::HopfAlgebra hopf;
    std::vector<AdjointPoint> points;
    grp::ConjClassData classes;
    std::vector<int> offset;  // basis start index of each class factor

    // basis of { f: G -> L, f(hgh^-1) = h f(g) }: tcf_basis[k][g] in L
    std::vector<std::vector<nf::FieldElement>> tcf_basis;
    // the product-model basis functions evaluated on G: eval[k][g] in L
    std::vector<std::vector<nf::FieldElement>> eval;

    Mat m4_to_tcf;    // product-model basis written in tcf_basis coordinates
    Mat diag_basis;   // rows: basis of (L (x) L)^G, n^2 coordinates
    Mat diag_to_tcf;  // a(x)b |-> (g -> a g(b)) on that basis, tcf coordinates
};

// Basis of twisted class functions, solved over Q; dimension |G| when K = Q.
std::vector<std::vector<nf::FieldElement>> twisted_class_functions(
    const GaloisExtensionData& ext);

// Basis of (L (x)_K L)^{G-diag} as rows over the b_i (x) b_j coordinates.
Mat diagonal_invariants(const GaloisExtensionData& ext);

// Assembles the Hopf algebra with the double-coset comultiplication and
// verifies every axiom plus the independence of all conjugator choices.
AdjointBundle build_adjoint(const GaloisExtensionData& ext);

struct ModelReport {
    bool pass = false;
    std::string detail;
};

// Pairwise isomorphy of the three presentations, comultiplication
// correspondence in L (x) L (x) L, coidentity a(x)b -> ab and coinverse
// a(x)b -> b(x)a in the invariant model.
ModelReport check_model_correspondence(const AdjointBundle& ad,
                                       const GaloisExtensionData& ext);

// Evaluation matrix of Ad (x)_K L ~= Maps(G, L): eval[g][k] = f_k(g).
// Verified invertible over L and compatible with the full trivial-bundle
// Hopf structure.
struct Trivialization {
    std::vector<std::vector<nf::FieldElement>> eval;  // [g][k]
};

Trivialization base_change_trivialization(const AdjointBundle& ad,
                                          const GaloisExtensionData& ext);

// Convolution group of the evaluation points; table equals ext.G's.
grp::FiniteGroup fiber_group(const AdjointBundle& ad, const GaloisExtensionData& ext);

// Surjection Ad(L/K) ->> Ad(M/K) at scheme level (injective pullback of
// coordinate rings) together with the kernel Hopf algebra.
struct TowerData {
    nf::Subfield M;
    std::vector<int> N;  // Gal(L/M) as sorted element indices, normal in G
    grp::FiniteGroup Gbar;
    grp::GroupHom pi;  // G -> Gbar
    GaloisExtensionData extM;
    AdjointBundle adM;
    hopf::HopfMorphism pullback;      // adM.hopf -> adL.hopf, injective
    hopf::HopfAlgebra kernel;         // dimension |N|
    std::vector<int> kernel_classes;  // G-class indices contained in N
    std::vector<int> kernel_index;    // adL basis indices surviving in kernel
};

// Throws "tower not Galois" when M is not G-stable or N is not normal.
TowerData tower_maps(const GaloisExtensionData& ext, const AdjointBundle& adL,
                     const nf::Subfield& M);

struct SplitReport {
    bool pass = false;
    std::string detail;
    // per kernel class: (#N-classes inside, [G : C_c N], residue degrees over M)
    std::vector<int> n_class_counts;
    std::vector<int> coset_counts;
};

// kernel (x)_K M against Ad(L/M): class splitting, degree bookkeeping over M,
// and the compositum identity L^{C_G(c)} . M = L^{C_N(c)} per kernel class.
SplitReport pullback_splitting_check(const GaloisExtensionData& ext,
                                     const AdjointBundle& adL, const TowerData& t);

struct KernelActionReport {
    std::vector<std::vector<int>> action;  // [Gbar element][N index] -> N index
    std::vector<int> char_values;          // exponent k per Gbar element
    bool cyclotomic_checked = false;
    bool cyclotomic_pass = false;
};

// Conjugation action of Gbar on abelian N; with zeta a primitive |N|-th root
// of unity in L, checks the action is the cyclotomic character. Throws
// "kernel not abelian" otherwise.
KernelActionReport kernel_action(const GaloisExtensionData& ext, const TowerData& t,
                                 const std::optional<nf::FieldElement>& zeta);

// For abelian G: the Hopf isomorphism Ad(L/K) ~= Maps(G, K), verified.
std::pair<hopf::HopfAlgebra, hopf::HopfMorphism> abelian_collapse(
    const AdjointBundle& ad, const GaloisExtensionData& ext);

}  // namespace ad::adj
