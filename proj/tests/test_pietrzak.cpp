#include <doctest.h>

#include <bit>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vdflab/pietrzak.hpp"

using namespace vdflab;
using namespace vdflab::pietrzak;
namespace fx = fixtures;

namespace {

Bytes input_bytes(Rng& rng) { return to_bytes_be(rng.random_bits(128), 16); }

}  // namespace

TEST_CASE("hand-checked instance: N=35, g=2, T=4") {
    const GroupModulus& m = fx::m35();
    const Params pp{m, 16};
    const GroupElement g = make_element(m, 2);
    const GroupElement y = make_element(m, 16);  // 2^(2^4) = 2^16 mod 35

    const ProveResult pr = prove_core(pp, g, 4, y);
    REQUIRE(pr.transcript.mu.size() == 2);       // log2(4) halving levels
    CHECK(pr.transcript.mu[0].value() == 16);    // first midpoint g^(2^2)
    CHECK(pr.transcript.t == 4);
    CHECK(pr.transcript.y == y);

    const VerifyOutcome vr = verify_core(pp, g, pr.transcript);
    CHECK(vr.accepted());
}

TEST_CASE("the smallest instance T=2 publishes a single midpoint") {
    const GroupModulus& m = fx::m35();
    const Params pp{m, 16};
    const GroupElement g = make_element(m, 2);
    const GroupElement y = make_element(m, 16);  // g^4

    const ProveResult pr = prove_core(pp, g, 2, y);
    REQUIRE(pr.transcript.mu.size() == 1);
    CHECK(pr.transcript.mu[0].value() == 4);  // g^(2^1)
    CHECK(verify_core(pp, g, pr.transcript).accepted());

    // The prover checks its own claim at the bottom of the recursion.
    CHECK_THROWS_AS(prove_core(pp, g, 2, make_element(m, 32)), Error);
}

TEST_CASE("evaluation insists on power-of-two delays") {
    const Params pp{fx::m35(), 16};
    Rng rng(10);
    const Bytes x = input_bytes(rng);
    CHECK_THROWS_AS(eval(pp, x, 3), Error);
    CHECK_THROWS_AS(eval(pp, x, 1), Error);
    CHECK_THROWS_AS(eval(pp, x, 0), Error);
    CHECK_THROWS_AS(prove(pp, x, 12, make_element(fx::m35(), 2)), Error);

    const EvalResult ev = eval(pp, x, 8);
    CHECK(ev.ops.squarings == 8);
    CHECK(ev.ops.multiplications == 0);
    const GroupElement g = hash_to_group(x, fx::m35());
    CHECK(ev.y == trapdoor_pow(fx::m35(), g, 8, 0));
}

TEST_CASE("proofs carry exactly log2(T) elements and verify") {
    Rng setup_rng(11);
    const Params pp{setup_modulus(8, setup_rng), 16};
    Rng rng(12);
    for (std::uint64_t t = 2; t <= 4096; t *= 2) {
        const Bytes x = input_bytes(rng);
        const EvalResult ev = eval(pp, x, t);
        const ProveResult pr = prove(pp, x, t, ev.y);
        CAPTURE(t);
        REQUIRE(pr.transcript.mu.size() ==
                static_cast<std::size_t>(std::countr_zero(t)));
        const VerifyOutcome vr = verify(pp, pr.transcript);
        REQUIRE(vr.accepted());
        // Verification folds log2(T) levels; each level costs two short
        // exponentiations of the challenge plus two multiplications.
        const std::uint64_t per_level = 4ull * (pp.lambda_bits + 1) + 2;
        REQUIRE(vr.ops.total() <= per_level * pr.transcript.mu.size() + 1);
    }
}

TEST_CASE("any perturbed midpoint breaks verification") {
    Rng setup_rng(13);
    const Params pp{setup_modulus(8, setup_rng), 16};
    Rng rng(14);
    const Bytes x = input_bytes(rng);
    const EvalResult ev = eval(pp, x, 64);
    const ProveResult pr = prove(pp, x, 64, ev.y);
    const GroupElement g = hash_to_group(x, pp.modulus);
    REQUIRE(verify(pp, pr.transcript).accepted());

    for (int i = 0; i < 100; ++i) {
        Transcript tampered = pr.transcript;
        const std::size_t level = rng.next_u64() % tampered.mu.size();
        // Multiply the midpoint by a random nontrivial power of the base.
        const Bigint k = 1 + rng.random_below(pp.modulus.n() - 1);
        const GroupElement factor = pow(g, k);
        if (factor.value() == 1) continue;
        tampered.mu[level] = mul(tampered.mu[level], factor);
        const VerifyOutcome vr = verify(pp, tampered);
        CAPTURE(level);
        REQUIRE_FALSE(vr.accepted());
    }

    Transcript wrong_y = pr.transcript;
    wrong_y.y = mul(wrong_y.y, g);
    CHECK_FALSE(verify(pp, wrong_y).accepted());
}

TEST_CASE("structural defects are malformed, not rejected") {
    const GroupModulus& m = fx::m35();
    const Params pp{m, 16};
    const GroupElement g = make_element(m, 2);
    const ProveResult pr = prove_core(pp, g, 4, make_element(m, 16));

    Transcript bad = pr.transcript;
    bad.t = 3;
    CHECK(verify_core(pp, g, bad).status == VerifyOutcome::Status::malformed);

    bad = pr.transcript;
    bad.mu.pop_back();
    CHECK(verify_core(pp, g, bad).status == VerifyOutcome::Status::malformed);

    bad = pr.transcript;
    bad.lambda_bits = 8;
    CHECK(verify_core(pp, g, bad).status == VerifyOutcome::Status::malformed);

    bad = pr.transcript;
    bad.y = unchecked_element(0, m.n());
    CHECK(verify_core(pp, g, bad).status == VerifyOutcome::Status::malformed);

    bad = pr.transcript;
    bad.mu[0] = unchecked_element(5, m.n());  // gcd(5, 35) > 1
    CHECK(verify_core(pp, g, bad).status == VerifyOutcome::Status::malformed);
}

TEST_CASE("challenges are deterministic and sized to lambda") {
    const GroupModulus& m = fx::m37909();
    const GroupElement g = make_element(m, 2);
    const GroupElement y = make_element(m, 3);
    const GroupElement mu = make_element(m, 5);
    for (unsigned lambda : {1u, 8u, 16u}) {
        const Params pp{m, lambda};
        for (std::uint64_t t : {2, 8, 64}) {
            const Bigint r = derive_challenge(pp, g, y, mu, t);
            CAPTURE(lambda);
            REQUIRE(r >= 1);
            REQUIRE(r <= Bigint(1) << lambda);
            CHECK(r == derive_challenge(pp, g, y, mu, t));
        }
    }
    const Params pp{m, 16};
    CHECK(derive_challenge(pp, g, y, mu, 2) != derive_challenge(pp, g, y, mu, 4));
}
