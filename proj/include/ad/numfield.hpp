#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ad/grp.hpp"
#include "ad/linalg.hpp"
#include "ad/rational.hpp"

namespace ad::nf {

// One tower step: a monic minimal polynomial over the partial tower below.
// Coefficients c_0..c_d are coordinate vectors over the partial basis
// (length = product of the step degrees below); c_d must be 1.
struct TowerStep {
    std::string label;
    std::vector<Vec> minpoly;
    int degree() const { return static_cast<int>(minpoly.size()) - 1; }
};

// Element of a number field: coordinates over the ambient basis.
using FieldElement = Vec;

// Automorphism as a matrix acting on coordinates.
struct FieldAutomorphism {
    Mat matrix;
};

// Q-subspace of the ambient field, closed under multiplication, containing 1.
// basis is in reduced row echelon form, so subfield equality is row equality.
struct Subfield {
    Mat basis;
    int degree() const { return basis.rows; }
    bool operator==(const Subfield&) const = default;
};

// Finite extension of Q with exact structure constants. The designated base
// subfield K is the partial tower of degree base_degree (1 means K = Q);
// tower-prefix bases make that subfield the span of the first base_degree
// basis vectors.
struct NumberField {
    int degree = 0;
    int base_degree = 1;
    std::vector<std::string> basis_labels;
    std::vector<TowerStep> tower;
    std::vector<Rat> mult;  // degree^3, coefficient of b_k in b_i b_j

    const Rat& sc(int i, int j, int k) const {
        return mult[(static_cast<size_t>(i) * degree + j) * degree + k];
    }
    Rat& sc(int i, int j, int k) {
        return mult[(static_cast<size_t>(i) * degree + j) * degree + k];
    }

    FieldElement zero() const { return FieldElement(degree); }
    FieldElement one() const;
    FieldElement from_rat(const Rat& q) const;
    FieldElement mul(const FieldElement& x, const FieldElement& y) const;
    FieldElement pow(const FieldElement& x, long n) const;
    FieldElement inv(const FieldElement& x) const;  // throws "division by zero"
    Mat mul_matrix(const FieldElement& x) const;
    bool is_zero(const FieldElement& x) const { return vec_is_zero(x); }
    bool is_one(const FieldElement& x) const;

    // Embed a coordinate vector over a partial tower (prefix basis) into the
    // full field by zero padding.
    FieldElement embed_prefix(const Vec& v) const;

    // Commutativity, associativity, unit, invertibility of nonzero basis
    // elements, tower degree product. Exhaustive on basis triples.
    void verify() const;

    // Seeded random nonzero elements must have exact inverses.
    void verify_inverses(int count, unsigned seed) const;
};

NumberField base_rationals();

// Quotient construction F[x]/(minpoly); new basis = old basis x powers of
// the new generator, index j*[F:Q] + i. Throws "reducible minimal
// polynomial" when the result has a non-invertible nonzero element.
NumberField extend(const NumberField& F, const std::string& label,
                   const std::vector<Vec>& minpoly, int degree_bound = 24);

// Root certificates per tower step: coordinate vectors over the full field.
using RootCertificates = std::vector<std::vector<FieldElement>>;

struct AutomorphismGroup {
    std::vector<FieldAutomorphism> auts;  // indexed by group element
    grp::FiniteGroup group;               // table of composition, identity = 0
};

// All automorphisms over the designated base, by assigning tower generators
// to certified roots and keeping assignments that extend to ring
// homomorphisms. Asserts |group| = [L:K].
AutomorphismGroup automorphisms(const NumberField& L, const RootCertificates& certs);

// Fixed field of a composition-closed set of automorphisms.
Subfield fixed_field(const NumberField& L, const std::vector<FieldAutomorphism>& auts);

Subfield subfield_span(const NumberField& L, const std::vector<FieldElement>& gens);
Subfield compositum(const NumberField& L, const Subfield& E1, const Subfield& E2);
bool subfield_contains(const Subfield& E, const FieldElement& x);
bool subfield_leq(const Subfield& E1, const Subfield& E2);
Vec subfield_coords(const Subfield& E, const FieldElement& x);  // throws when outside

FieldElement apply(const FieldAutomorphism& sigma, const FieldElement& x);

// A multiplication-closed subspace of L, repackaged as a standalone
// NumberField (no tower data) plus the embedding back into L.
struct SubfieldAsField {
    NumberField field;
    Mat embedding;  // rows: image of each basis vector in L coordinates
};
SubfieldAsField subfield_as_field(const NumberField& L, const Subfield& E);

}  // namespace ad::nf
