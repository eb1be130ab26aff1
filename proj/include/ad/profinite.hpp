#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ad/grp.hpp"
#include "ad/numfield.hpp"

namespace ad::pf {

// Finite directed tower: carriers are finite sets indexed 0..size-1 with a
// transition map level_j -> level_i for every related pair i <= j. Group
// towers attach a FiniteGroup per level, and the transition maps must then
// be group homomorphisms. Surjectivity is reported, not forced.
struct FiniteTower {
    std::vector<int> sizes;
    std::vector<std::string> labels;
    std::vector<char> leq_flat;                            // row-major i*levels+j
    std::map<std::pair<int, int>, std::vector<int>> maps;  // (i, j) with i < j in order
    std::vector<grp::FiniteGroup> groups;                  // empty for set towers

    int levels() const { return static_cast<int>(sizes.size()); }
    bool leq(int i, int j) const {
        return leq_flat[static_cast<size_t>(i) * sizes.size() + j] != 0;
    }
    // Image of element x of level j at level i; requires i <= j.
    int push_down(int i, int j, int x) const;
    bool all_surjective() const;

    // Partial-order axioms, map shapes, exhaustive functoriality
    // (map_ik = map_ij o map_jk), and group-hom checks when groups are
    // attached. Throws "tower not functorial" on composition mismatch.
    void verify() const;
};

// One compatible family through a nonempty directed tower: the element of
// smallest index at the top level, propagated down. Throws "empty level"
// when some carrier is empty, "order not directed" without a greatest level.
std::vector<int> limit_element(const FiniteTower& t);

// Linear group tower Z/1!, Z/2!, ..., Z/n! with mod-k! reductions.
FiniteTower zhat_truncation(int n);

struct ShiftReport {
    long long count = 0;  // number of windowed maps compatible with the shift
    std::string witness;  // the constant-sequence contradiction
};

// Counts maps g: F_2^w -> Z/n with g(x_1..x_w) = g(x_0..x_{w-1}) + 1 for all
// (x_0..x_w); exhaustive over all n^(2^w) maps, also run with the opposite
// shift convention as a cross-check. Throws "window too large" past bound.
ShiftReport shift_obstruction(int w, int n, long long bound = 1 << 24);

// Directed poset of subfields of L closed under compositum; carriers are the
// embedding sets Hom_K(E, L), realized as cosets G / Gal(L/E), with
// restriction as transition maps.
struct CompositumTower {
    FiniteTower tower;
    std::vector<nf::Subfield> fields;  // level index -> subfield
    int top = 0;                       // index of the greatest level
};

CompositumTower compositum_tower(const nf::NumberField& L,
                                 const nf::AutomorphismGroup& A,
                                 std::vector<nf::Subfield> subfields);

// Finite product of field extensions of a common base K.
struct EtaleAlgebra {
    std::shared_ptr<const nf::NumberField> base;
    std::vector<std::shared_ptr<const nf::NumberField>> factors;

    // each factor is a verified field whose designated base is K
    void verify() const;
};

struct TrivialityReport {
    bool trivial = false;
    int sections = 0;   // number of factors, when trivial
    int hom_count = 0;  // K-algebra maps A -> K, counted by root finding
    int k_dim = 0;      // total K-dimension of A
};

// True iff every factor is K itself; cross-checked against the count of
// K-algebra maps A -> K, which equals k_dim exactly in the trivial case.
TrivialityReport is_trivial_etale(const EtaleAlgebra& A);

}  // namespace ad::pf
