#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ad/rational.hpp"

namespace ad::grp {

// Finite group as an element-indexed multiplication table. The product
// convention is composition: mul(g, h) means "h first, then g".
struct FiniteGroup {
    int order = 0;
    std::vector<int> table;  // row-major, table[g*order + h] = g*h
    int identity = 0;
    std::vector<int> inverse;
    std::vector<std::string> labels;

    int mul(int g, int h) const { return table[static_cast<size_t>(g) * order + h]; }
    int conj(int h, int g) const { return mul(mul(h, g), inverse[h]); }  // h g h^-1
    bool is_abelian() const;

    // Latin square, associativity, identity and inverse checks. Exhaustive;
    // the associativity pass is skipped above assoc_limit elements.
    void verify(int assoc_limit = 512) const;
};

struct GroupHom {
    std::vector<int> map;  // source element -> target element

    void verify(const FiniteGroup& source, const FiniteGroup& target) const;
    bool is_surjective(const FiniteGroup& target) const;
};

struct ConjClassData {
    std::vector<int> reps;        // smallest element of each class
    std::vector<int> class_of;    // element -> class index
    std::vector<int> class_sizes;
    std::vector<std::vector<int>> centralizers;  // per representative, sorted
};

struct DoubleCosetData {
    std::vector<int> left, right;
    std::vector<int> reps;
    std::vector<int> coset_of;
    std::vector<int> coset_sizes;
};

// Permutation on n points, images 0-based.
using Perm = std::vector<int>;

// Closure of the generators under composition; breadth-first from the
// identity with generators in input order. Throws "group too large" past
// order_bound.
FiniteGroup group_from_generators(int n_points, const std::vector<Perm>& generators,
                                  int order_bound = 5040);

FiniteGroup cyclic_group(int n);
FiniteGroup trivial_group();

ConjClassData conjugacy_classes(const FiniteGroup& G);

bool is_subgroup(const FiniteGroup& G, const std::vector<int>& H);
bool is_normal(const FiniteGroup& G, const std::vector<int>& N);
std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> gens);
std::vector<int> subgroup_intersection(const std::vector<int>& H, const std::vector<int>& K);
std::vector<int> centralizer(const FiniteGroup& G, int g);

DoubleCosetData double_cosets(const FiniteGroup& G, const std::vector<int>& H,
                              const std::vector<int>& K);

// R_{a,b} = { g1 a g1^-1 g2 b g2^-1 } as a sorted set of class indices.
std::vector<int> product_class_set(const FiniteGroup& G, const ConjClassData& cc, int a, int b);

std::pair<FiniteGroup, GroupHom> quotient(const FiniteGroup& G, const std::vector<int>& N);

// Isomorphism search for small groups; returns the element map source->target
// if one exists.
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& A, const FiniteGroup& B);

}  // namespace ad::grp
