#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ad/numfield.hpp"
#include "fixtures.hpp"

using namespace ad;
using namespace ad::nf;
using fx::qv;
using fx::unit_vec;

TEST_CASE("base rationals") {
    NumberField q = base_rationals();
    q.verify();
    CHECK(q.degree == 1);
    CHECK(q.mul(qv({3}), qv({5})) == qv({15}));
    CHECK(q.inv(qv({4})) == Vec{Rat(1, 4)});
}

TEST_CASE("extend by x^2+1") {
    auto [L, certs] = fx::qi_field();
    L->verify();
    CHECK(L->degree == 2);
    FieldElement i = unit_vec(2, 1);
    CHECK(L->mul(i, i) == qv({-1, 0}));
    CHECK(L->is_one(L->mul(i, L->inv(i))));
    // (1+i)^-1 = (1-i)/2
    FieldElement x = qv({1, 1});
    FieldElement xi = L->inv(x);
    CHECK(xi == Vec{Rat(1, 2), Rat(-1, 2)});
    CHECK(L->pow(x, 4) == qv({-4, 0}));
    L->verify_inverses(10, 42);
    CHECK_THROWS_WITH_AS(L->inv(L->zero()), "division by zero", Error);
}

TEST_CASE("extend rejects reducible polynomials") {
    NumberField q = base_rationals();
    // x^2 - 1 splits
    CHECK_THROWS_WITH_AS(extend(q, "t", {qv({-1}), qv({0}), qv({1})}),
                         "reducible minimal polynomial", Error);
    // x^2 - 2x + 1 has a nilpotent
    CHECK_THROWS_AS(extend(q, "t", {qv({1}), qv({-2}), qv({1})}), Error);
}

TEST_CASE("tower field Q(w, cbrt2)") {
    auto [L, certs] = fx::s3_field();
    L->verify();
    CHECK(L->degree == 6);
    CHECK(L->tower.size() == 2);
    FieldElement w = unit_vec(6, 1), c = unit_vec(6, 2);
    CHECK(L->mul(c, L->mul(c, c)) == qv({2, 0, 0, 0, 0, 0}));
    CHECK(L->mul(w, w) == qv({-1, -1, 0, 0, 0, 0}));
    L->verify_inverses(10, 7);

    // prefix embedding of Q(w) coordinates
    CHECK(L->embed_prefix(qv({3, -2})) == qv({3, -2, 0, 0, 0, 0}));
}

TEST_CASE("automorphisms of Q(i)") {
    auto [L, certs] = fx::qi_field();
    AutomorphismGroup A = automorphisms(*L, certs);
    CHECK(A.group.order == 2);
    FieldElement i = unit_vec(2, 1);
    CHECK(nf::apply(A.auts[0], i) == i);          // identity first
    CHECK(nf::apply(A.auts[1], i) == qv({0, -1}));
}

TEST_CASE("automorphism group of Q(w, cbrt2) is S3") {
    auto [L, certs] = fx::s3_field();
    AutomorphismGroup A = automorphisms(*L, certs);
    A.group.verify();
    CHECK(A.group.order == 6);
    CHECK(!A.group.is_abelian());
    auto cc = grp::conjugacy_classes(A.group);
    std::vector<int> sizes = cc.class_sizes;
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{1, 2, 3});

    // every automorphism is multiplicative on a random-ish product
    FieldElement x = qv({1, 2, 0, 1, 0, 3}), y = qv({0, 1, 1, 0, 2, 0});
    for (const auto& s : A.auts)
        CHECK(nf::apply(s, L->mul(x, y)) == L->mul(nf::apply(s, x), nf::apply(s, y)));

    // fixed field of everything is Q; of nothing-but-identity is L
    Subfield fixall = fixed_field(*L, A.auts);
    CHECK(fixall.degree() == 1);
    Subfield fixid = fixed_field(*L, {A.auts[0]});
    CHECK(fixid.degree() == 6);
}

TEST_CASE("non-Galois certificates rejected") {
    NumberField q = base_rationals();
    NumberField L = extend(q, "c", {qv({-2}), qv({0}), qv({0}), qv({1})});
    RootCertificates certs{{unit_vec(3, 1)}};  // only one real root available
    CHECK_THROWS_WITH_AS(automorphisms(L, certs), "extension not Galois over base", Error);
}

TEST_CASE("cyclotomic automorphism groups are cyclic") {
    auto [L5, c5] = fx::zeta5_field();
    AutomorphismGroup A5 = automorphisms(*L5, c5);
    CHECK(A5.group.order == 4);
    CHECK(grp::find_isomorphism(A5.group, grp::cyclic_group(4)).has_value());

    auto [L7, c7] = fx::zeta7_field();
    AutomorphismGroup A7 = automorphisms(*L7, c7);
    CHECK(A7.group.order == 6);
    CHECK(grp::find_isomorphism(A7.group, grp::cyclic_group(6)).has_value());
}

TEST_CASE("kummer4 automorphism group is dihedral of order 8") {
    auto [L, certs] = fx::kummer4_field();
    L->verify();
    AutomorphismGroup A = automorphisms(*L, certs);
    A.group.verify();
    CHECK(A.group.order == 8);
    CHECK(!A.group.is_abelian());
    auto cc = grp::conjugacy_classes(A.group);
    CHECK(cc.reps.size() == 5);
    // Q8 also has 5 classes but only one involution; D4 has five.
    int order2 = 0;
    for (int g = 0; g < 8; ++g)
        if (g != 0 && A.group.mul(g, g) == 0) ++order2;
    CHECK(order2 == 5);
}

TEST_CASE("subfield lattice in Q(w, cbrt2)") {
    auto [L, certs] = fx::s3_field();
    FieldElement w = unit_vec(6, 1), c = unit_vec(6, 2);
    Subfield Qw = subfield_span(*L, {w});
    Subfield Qc = subfield_span(*L, {c});
    CHECK(Qw.degree() == 2);
    CHECK(Qc.degree() == 3);
    CHECK(subfield_contains(Qw, L->one()));
    CHECK(subfield_contains(Qw, L->mul(w, w)));
    CHECK(!subfield_contains(Qw, c));
    CHECK(subfield_leq(Qw, Qw));
    CHECK(!subfield_leq(Qc, Qw));

    Subfield top = compositum(*L, Qw, Qc);
    CHECK(top.degree() == 6);

    Vec wc = subfield_coords(Qw, qv({2, -3, 0, 0, 0, 0}));
    CHECK(wc.size() == 2);
    CHECK_THROWS_AS(subfield_coords(Qw, c), Error);
}

TEST_CASE("subfield_as_field repackages Q(w)") {
    auto [L, certs] = fx::s3_field();
    Subfield Qw = subfield_span(*L, {unit_vec(6, 1)});
    SubfieldAsField sf = subfield_as_field(*L, Qw);
    sf.field.verify();
    CHECK(sf.field.degree == 2);
    CHECK(sf.embedding.rows == 2);
    CHECK(sf.embedding.cols == 6);

    // embedding respects multiplication
    auto emb = [&](const FieldElement& x) {
        return mat_vec(mat_transpose(sf.embedding), x);
    };
    FieldElement a = qv({1, 2}), b = qv({3, -1});
    CHECK(emb(sf.field.mul(a, b)) == L->mul(emb(a), emb(b)));
    CHECK(emb(sf.field.one()) == L->one());
}

TEST_CASE("fixed fields match subfields in the S3 tower") {
    auto [L, certs] = fx::s3_field();
    AutomorphismGroup A = automorphisms(*L, certs);
    // Elements fixing w form the unique subgroup of order 3.
    FieldElement w = unit_vec(6, 1);
    std::vector<FieldAutomorphism> fixw;
    for (const auto& s : A.auts)
        if (nf::apply(s, w) == w) fixw.push_back(s);
    REQUIRE(fixw.size() == 3);
    Subfield F = fixed_field(*L, fixw);
    CHECK(F == subfield_span(*L, {w}));
}
