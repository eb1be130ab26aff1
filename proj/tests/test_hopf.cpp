#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "ad/hopf.hpp"
#include "fixtures.hpp"

using namespace ad;
using namespace ad::hopf;
using fx::qv;

static std::shared_ptr<const nf::NumberField> rationals() {
    return std::make_shared<const nf::NumberField>(nf::base_rationals());
}

TEST_CASE("trivial bundle over Z/2") {
    auto Q = rationals();
    HopfAlgebra H = trivial_bundle_hopf(grp::cyclic_group(2), Q);
    CHECK(H.dim() == 2);
    HopfReport rep = verify_hopf(H);
    CHECK(rep.all_pass());

    Scalar one = Q->one(), zero = Q->zero();
    // delta_0 delta_0 = delta_0, delta_0 delta_1 = 0
    CHECK(H.alg.mul(H.alg.basis(0), H.alg.basis(0)) == H.alg.basis(0));
    CHECK(H.alg.mul(H.alg.basis(0), H.alg.basis(1)) == H.alg.zero());
    // D(delta_0) = d0 x d0 + d1 x d1 (products landing at the identity)
    TensorElt d = H.apply_comult(H.alg.basis(0));
    CHECK(d[0] == one);
    CHECK(d[1] == zero);
    CHECK(d[2] == zero);
    CHECK(d[3] == one);
    // counit = evaluation at e
    CHECK(H.apply_counit(H.alg.basis(0)) == one);
    CHECK(H.apply_counit(H.alg.basis(1)) == zero);
    // antipode = pullback along inversion (trivial for Z/2)
    CHECK(H.apply_antipode(H.alg.basis(1)) == H.alg.basis(1));
}

TEST_CASE("trivial bundle over S3 passes all axioms") {
    auto Q = rationals();
    HopfAlgebra H = trivial_bundle_hopf(fx::s3_group(), Q);
    CHECK(H.dim() == 6);
    CHECK(verify_hopf(H).all_pass());
    // antipode on a non-involution moves the basis vector
    grp::FiniteGroup G = fx::s3_group();
    int g3 = -1;
    for (int g = 1; g < 6; ++g)
        if (G.mul(g, g) != 0) g3 = g;
    REQUIRE(g3 > 0);
    CHECK(H.apply_antipode(H.alg.basis(g3)) == H.alg.basis(G.inverse[g3]));
}

TEST_CASE("mu_n Hopf algebra") {
    auto Q = rationals();
    HopfAlgebra M = mu_hopf(3, Q);
    CHECK(M.dim() == 3);
    CHECK(verify_hopf(M).all_pass());
    // t is grouplike: D(t) = t x t
    TensorElt d = M.apply_comult(M.alg.basis(1));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(d[i * 3 + j] == ((i == 1 && j == 1) ? Q->one() : Q->zero()));
    // t^2 * t^2 = t
    CHECK(M.alg.mul(M.alg.basis(2), M.alg.basis(2)) == M.alg.basis(1));
    // S(t) = t^2
    CHECK(M.apply_antipode(M.alg.basis(1)) == M.alg.basis(2));
}

TEST_CASE("cartier duality over Q for n = 2") {
    auto Q = rationals();
    CartierIso C = cartier_iso(2, Q, qv({-1}));
    C.forward.verify(C.mu, C.trivial);
    C.backward.verify(C.trivial, C.mu);
    // t -> d0 - d1
    AlgElt im = C.forward.apply(C.trivial, C.mu.alg.basis(1));
    CHECK(im[0] == Q->one());
    CHECK(im[1] == qv({-1}));
    // d0 -> (1 + t)/2
    AlgElt back = C.backward.apply(C.mu, C.trivial.alg.basis(0));
    CHECK(back[0] == Vec{Rat(1, 2)});
    CHECK(back[1] == Vec{Rat(1, 2)});
    // round trip is the identity
    for (int k = 0; k < 2; ++k)
        CHECK(C.backward.apply(C.mu, C.forward.apply(C.trivial, C.mu.alg.basis(k))) ==
              C.mu.alg.basis(k));
}

TEST_CASE("cartier duality with adjoined roots of unity") {
    auto qi = fx::qi_field().L;
    CartierIso C4 = cartier_iso(4, qi, fx::unit_vec(2, 1));
    C4.forward.verify(C4.mu, C4.trivial);
    for (int k = 0; k < 4; ++k)
        CHECK(C4.backward.apply(C4.mu, C4.forward.apply(C4.trivial, C4.mu.alg.basis(k))) ==
              C4.mu.alg.basis(k));

    auto s3f = fx::s3_field().L;
    CartierIso C3 = cartier_iso(3, s3f, fx::unit_vec(6, 1));
    C3.backward.verify(C3.trivial, C3.mu);

    CHECK_THROWS_WITH_AS(cartier_iso(4, rationals(), qv({-1})), "not a primitive root",
                         Error);
}

TEST_CASE("grouplike points of a trivial bundle recover the group") {
    auto Q = rationals();
    grp::FiniteGroup G = fx::s3_group();
    HopfAlgebra H = trivial_bundle_hopf(G, Q);
    FactorData fd;
    for (int i = 0; i < 6; ++i) {
        fd.idempotents.push_back(H.alg.basis(i));
        std::vector<Scalar> cov(6, Q->zero());
        cov[i] = Q->one();
        fd.embeddings_per_factor.push_back(cov);
    }
    grp::FiniteGroup P = grouplike_points(H, fd);
    P.verify();
    CHECK(P.order == 6);
    CHECK(P.table == G.table);

    FactorData bad = fd;
    bad.idempotents[0] = H.alg.zero();
    CHECK_THROWS_WITH_AS(grouplike_points(H, bad), "bad decomposition", Error);
}

TEST_CASE("schur block bookkeeping") {
    CharacterData s3{6, {1, 1, 2}, {{0}, {1}, {2}}};
    SchurReport r = schur_block_check(s3);
    CHECK(r.block_dims == std::vector<int>{1, 1, 4});
    CHECK(r.total == 6);

    CharacterData z3{3, {1, 1, 1}, {{0}, {1, 2}}};
    SchurReport r3 = schur_block_check(z3);
    CHECK(r3.block_dims == std::vector<int>{1, 2});
    CHECK(r3.total == 3);

    CharacterData broken{6, {1, 2}, {{0}, {1}}};
    CHECK_THROWS_WITH_AS(schur_block_check(broken), "bad character data", Error);
}

TEST_CASE("mutations break the axioms") {
    auto Q = rationals();
    HopfAlgebra H = trivial_bundle_hopf(fx::s3_group(), Q);
    for (unsigned seed = 1; seed <= 8; ++seed) {
        HopfAlgebra bad = perturb_structure_constant(H, seed);
        CHECK(!verify_hopf(bad).all_pass());
    }
}

TEST_CASE("morphism verification rejects non-homomorphisms") {
    auto Q = rationals();
    HopfAlgebra H = trivial_bundle_hopf(grp::cyclic_group(2), Q);
    HopfMorphism swapped;
    swapped.rows = swapped.cols = 2;
    swapped.matrix = {Q->zero(), Q->one(), Q->one(), Q->zero()};
    // swapping delta_0 and delta_1 breaks the counit
    CHECK_THROWS_AS(swapped.verify(H, H), Error);

    HopfMorphism id;
    id.rows = id.cols = 2;
    id.matrix = {Q->one(), Q->zero(), Q->zero(), Q->one()};
    id.verify(H, H);
}
