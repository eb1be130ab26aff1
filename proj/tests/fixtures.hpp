#pragma once

// Shared corpus constructions for the test suites.

#include <memory>

#include "ad/grp.hpp"
#include "ad/numfield.hpp"

namespace fx {

using namespace ad;

inline Vec qv(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline nf::FieldElement unit_vec(int n, int i) {
    nf::FieldElement e(n);
    e[i] = 1;
    return e;
}

// S3 permutation group on 3 points from (1 2), (1 2 3).
inline grp::FiniteGroup s3_group() {
    return grp::group_from_generators(3, {{1, 0, 2}, {1, 2, 0}});
}

struct FieldWithCerts {
    std::shared_ptr<nf::NumberField> L;
    nf::RootCertificates certs;
};

// Q(i), roots {i, -i}
inline FieldWithCerts qi_field() {
    nf::NumberField q = nf::base_rationals();
    auto L = std::make_shared<nf::NumberField>(
        nf::extend(q, "i", {qv({1}), qv({0}), qv({1})}));
    nf::RootCertificates certs{{unit_vec(2, 1), qv({0, -1})}};
    return {L, certs};
}

// Q(w, c) with w^2+w+1 = 0 and c^3 = 2; Galois group S3.
// Basis: 1, w, c, w c, c^2, w c^2.
inline FieldWithCerts s3_field() {
    nf::NumberField q = nf::base_rationals();
    nf::NumberField qw = nf::extend(q, "w", {qv({1}), qv({1}), qv({1})});
    auto L = std::make_shared<nf::NumberField>(nf::extend(
        qw, "c", {{qv({-2, 0})}, {qv({0, 0})}, {qv({0, 0})}, {qv({1, 0})}}));
    nf::RootCertificates certs{
        {unit_vec(6, 1), qv({-1, -1, 0, 0, 0, 0})},
        {unit_vec(6, 2), unit_vec(6, 3), qv({0, 0, -1, -1, 0, 0})}};
    return {L, certs};
}

// Q(zeta_5), cyclic of order 4.
inline FieldWithCerts zeta5_field() {
    nf::NumberField q = nf::base_rationals();
    auto L = std::make_shared<nf::NumberField>(
        nf::extend(q, "z", {qv({1}), qv({1}), qv({1}), qv({1}), qv({1})}));
    nf::RootCertificates certs{{unit_vec(5 - 1, 1), unit_vec(4, 2), unit_vec(4, 3),
                                qv({-1, -1, -1, -1})}};
    return {L, certs};
}

// Q(zeta_7), cyclic of order 6.
inline FieldWithCerts zeta7_field() {
    nf::NumberField q = nf::base_rationals();
    auto L = std::make_shared<nf::NumberField>(nf::extend(
        q, "z", {qv({1}), qv({1}), qv({1}), qv({1}), qv({1}), qv({1}), qv({1})}));
    nf::RootCertificates certs;
    std::vector<nf::FieldElement> roots;
    for (int k = 1; k <= 5; ++k) roots.push_back(unit_vec(6, k));
    roots.push_back(qv({-1, -1, -1, -1, -1, -1}));
    certs.push_back(roots);
    return {L, certs};
}

// Q(i, r) with r^4 = 2; Galois group of order 8 (dihedral).
// Basis: 1, i, r, i r, r^2, i r^2, r^3, i r^3.
inline FieldWithCerts kummer4_field() {
    nf::NumberField q = nf::base_rationals();
    nf::NumberField qi = nf::extend(q, "i", {qv({1}), qv({0}), qv({1})});
    auto L = std::make_shared<nf::NumberField>(nf::extend(
        qi, "r",
        {{qv({-2, 0})}, {qv({0, 0})}, {qv({0, 0})}, {qv({0, 0})}, {qv({1, 0})}}));
    nf::FieldElement r = unit_vec(8, 2), ir = unit_vec(8, 3);
    nf::FieldElement mr = qv({0, 0, -1, 0, 0, 0, 0, 0});
    nf::FieldElement mir = qv({0, 0, 0, -1, 0, 0, 0, 0});
    nf::RootCertificates certs{{unit_vec(8, 1), qv({0, -1, 0, 0, 0, 0, 0, 0})},
                               {r, ir, mr, mir}};
    return {L, certs};
}

}  // namespace fx
