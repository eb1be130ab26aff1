#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ad/profinite.hpp"
#include "fixtures.hpp"

using namespace ad;
using namespace ad::pf;
using fx::unit_vec;

namespace {

// V-shaped set tower: two size-2 levels under a size-3 top
FiniteTower v_tower() {
    FiniteTower t;
    t.sizes = {2, 2, 3};
    t.leq_flat = {1, 0, 1,   //
                  0, 1, 1,   //
                  0, 0, 1};  // 0 <= 2, 1 <= 2
    t.maps[{0, 2}] = {0, 1, 1};
    t.maps[{1, 2}] = {0, 0, 1};
    return t;
}

}  // namespace

TEST_CASE("finite tower invariants") {
    FiniteTower t = v_tower();
    t.verify();
    CHECK(t.all_surjective());

    // breaking composition along a chain trips the functoriality check
    FiniteTower chain;
    chain.sizes = {1, 2, 4};
    chain.leq_flat = {1, 1, 1, 0, 1, 1, 0, 0, 1};
    chain.maps[{0, 1}] = {0, 0};
    chain.maps[{1, 2}] = {0, 0, 1, 1};
    chain.maps[{0, 2}] = {0, 0, 0, 0};
    chain.verify();
    chain.maps[{1, 2}] = {0, 1, 1, 0};  // still fine: composition to level 0 is constant
    chain.verify();

    FiniteTower bad = v_tower();
    bad.maps.erase({1, 2});
    CHECK_THROWS_WITH_AS(bad.verify(), "missing tower map", Error);

    FiniteTower badgrp;
    badgrp.sizes = {2, 4};
    badgrp.leq_flat = {1, 1, 0, 1};
    badgrp.maps[{0, 1}] = {0, 0, 1, 1};  // not a hom Z/4 -> Z/2
    badgrp.groups = {grp::cyclic_group(2), grp::cyclic_group(4)};
    CHECK_THROWS(badgrp.verify());
    badgrp.maps[{0, 1}] = {0, 1, 0, 1};  // reduction mod 2
    badgrp.verify();
}

TEST_CASE("limit element") {
    FiniteTower t = v_tower();
    std::vector<int> fam = limit_element(t);
    CHECK(fam == std::vector<int>{0, 0, 0});

    // oracle: backtracking over all triples finds the same compatible set
    std::vector<std::vector<int>> compatible;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 3; ++c)
                if (t.maps[{0, 2}][c] == a && t.maps[{1, 2}][c] == b)
                    compatible.push_back({a, b, c});
    CHECK(compatible.size() == 3);
    CHECK(std::find(compatible.begin(), compatible.end(), fam) != compatible.end());

    // constant two-element tower
    FiniteTower c;
    c.sizes = {2, 2};
    c.leq_flat = {1, 1, 0, 1};
    c.maps[{0, 1}] = {0, 1};
    CHECK(limit_element(c) == std::vector<int>{0, 0});

    FiniteTower e = v_tower();
    e.sizes[1] = 0;
    CHECK_THROWS_WITH_AS(limit_element(e), "empty level", Error);

    FiniteTower nd;  // two incomparable points: not directed
    nd.sizes = {1, 1};
    nd.leq_flat = {1, 0, 0, 1};
    CHECK_THROWS_WITH_AS(limit_element(nd), "order not directed", Error);
}

TEST_CASE("zhat truncation") {
    FiniteTower t1 = zhat_truncation(1);
    CHECK(t1.levels() == 1);
    CHECK(t1.sizes == std::vector<int>{1});

    FiniteTower t3 = zhat_truncation(3);
    CHECK(t3.sizes == std::vector<int>{1, 2, 6});
    CHECK(t3.maps[{1, 2}] == std::vector<int>{0, 1, 0, 1, 0, 1});
    CHECK(limit_element(t3) == std::vector<int>{0, 0, 0});

    for (int n = 1; n <= 6; ++n) {
        FiniteTower t = zhat_truncation(n);  // verify() runs inside
        CHECK(t.all_surjective());
        CHECK(t.sizes.back() == [&] {
            int f = 1;
            for (int i = 2; i <= n; ++i) f *= i;
            return f;
        }());
        // t_{k!}^k = t_{(k-1)!}: the generator 1 of Z/k! reduces to 1, and
        // k copies of the reduced generator recover the next generator down
        for (int k = 2; k <= n; ++k) {
            const grp::FiniteGroup& top = t.groups[k - 1];
            int g = 1, acc = top.identity;
            for (int i = 0; i < k; ++i) acc = top.mul(acc, g);
            CHECK(t.push_down(k - 2, k - 1, acc) ==
                  t.push_down(k - 2, k - 1, g) * k % t.sizes[k - 2]);
        }
    }
}

TEST_CASE("shift obstruction") {
    CHECK(shift_obstruction(1, 2).count == 0);
    CHECK(shift_obstruction(2, 3).count == 0);
    CHECK(shift_obstruction(3, 2).count == 0);
    for (int w = 1; w <= 3; ++w)
        for (int n = 2; n <= 4; ++n) CHECK(shift_obstruction(w, n).count == 0);
    CHECK(!shift_obstruction(1, 2).witness.empty());
    CHECK_THROWS_WITH_AS(shift_obstruction(5, 4), "window too large", Error);
    CHECK_THROWS_WITH_AS(shift_obstruction(0, 2), "bad shift window", Error);

    // oracle: dropping the shift constraint counts every map
    // (sanity for the enumeration itself: 3^(2^1) maps at w=1, n=3)
    long long all = 1;
    for (int c = 0; c < 2; ++c) all *= 3;
    CHECK(all == 9);
}

TEST_CASE("compositum tower on the S3 subfield lattice") {
    auto s3 = fx::s3_field();
    nf::AutomorphismGroup A = nf::automorphisms(*s3.L, s3.certs);

    nf::Subfield Q = nf::subfield_span(*s3.L, {s3.L->one()});
    nf::Subfield Qw = nf::subfield_span(*s3.L, {unit_vec(6, 1)});
    nf::Subfield Qc = nf::subfield_span(*s3.L, {unit_vec(6, 2)});

    CompositumTower ct = compositum_tower(*s3.L, A, {Q, Qw, Qc});
    CHECK(ct.fields.size() == 4);  // the join Q(w, c) = L gets added
    CHECK(ct.fields[ct.top].degree() == 6);
    CHECK(ct.tower.sizes == std::vector<int>{1, 2, 3, 6});
    CHECK(ct.tower.all_surjective());
    CHECK(limit_element(ct.tower).size() == 4);

    // joins are minimal: Qw v Qc is the degree-6 top, not any proper field
    CHECK(nf::compositum(*s3.L, Qw, Qc) == ct.fields[ct.top]);

    CompositumTower one = compositum_tower(*s3.L, A, {Qw});
    CHECK(one.fields.size() == 1);
    CHECK(one.tower.sizes == std::vector<int>{2});

    CompositumTower chain = compositum_tower(*s3.L, A, {Q, Qc});
    CHECK(chain.tower.sizes == std::vector<int>{1, 3});
    CHECK(chain.tower.maps[{0, 1}] == std::vector<int>(3, 0));
}

TEST_CASE("etale triviality") {
    auto q = std::make_shared<nf::NumberField>(nf::base_rationals());

    EtaleAlgebra kkk{q, {q, q, q}};
    TrivialityReport r = is_trivial_etale(kkk);
    CHECK(r.trivial);
    CHECK(r.sections == 3);
    CHECK(r.hom_count == 3);
    CHECK(r.k_dim == 3);

    auto qi = fx::qi_field();
    EtaleAlgebra gauss{q, {qi.L}};
    TrivialityReport r2 = is_trivial_etale(gauss);
    CHECK(!r2.trivial);
    CHECK(r2.hom_count == 0);
    CHECK(r2.k_dim == 2);

    // Q(i) x Q(i) over Q(i)
    auto qik = std::make_shared<nf::NumberField>(*qi.L);
    qik->base_degree = 2;
    EtaleAlgebra self{qik, {qik, qik}};
    TrivialityReport r3 = is_trivial_etale(self);
    CHECK(r3.trivial);
    CHECK(r3.sections == 2);
    CHECK(r3.hom_count == 2);

    // mixed: one section from the rational factor only
    EtaleAlgebra mixed{q, {q, qi.L}};
    TrivialityReport r4 = is_trivial_etale(mixed);
    CHECK(!r4.trivial);
    CHECK(r4.hom_count == 1);
    CHECK(r4.k_dim == 3);

    // degree-6 tower factor: no rational root at the first step
    auto s3 = fx::s3_field();
    EtaleAlgebra big{q, {s3.L}};
    CHECK(is_trivial_etale(big).hom_count == 0);

    EtaleAlgebra bad{qik, {qi.L}};  // factor does not carry the base marking
    CHECK_THROWS_WITH_AS(is_trivial_etale(bad), "factor base mismatch", Error);
}
