#include <doctest.h>

#include <bit>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vdflab/wesolowski.hpp"

using namespace vdflab;
using namespace vdflab::wesolowski;
namespace fx = fixtures;

namespace {

Bytes input_bytes(Rng& rng) { return to_bytes_be(rng.random_bits(128), 16); }

}  // namespace

TEST_CASE("hand-checked instance: N=35, g=2, T=3, ell=5") {
    const GroupModulus& m = fx::m35();
    const GroupElement g = make_element(m, 2);

    const EvalResult res = eval_core(g, 3, 5);
    CHECK(res.transcript.y.value() == 11);  // 2^8 mod 35
    CHECK(res.transcript.pi.value() == 2);  // floor(8/5) = 1, so pi = g
    CHECK(res.ops.squarings == 6);          // 3 for y, 3 for the division
    CHECK(res.ops.multiplications == 1);    // one quotient bit is set

    const VerifyOutcome vr =
        verify_core(m, g, res.transcript.y, res.transcript.pi, 5, 3);
    CHECK(vr.accepted());
    CHECK(vr.ops.total() <= 2 * bit_length(Bigint(5)) + 4);

    // Perturbing either component must flip the verdict.
    CHECK_FALSE(verify_core(m, g, mul(res.transcript.y, g), res.transcript.pi, 5, 3)
                    .accepted());
    CHECK_FALSE(verify_core(m, g, res.transcript.y, mul(res.transcript.pi, g), 5, 3)
                    .accepted());
}

TEST_CASE("a challenge larger than 2^T makes the proof trivial") {
    const GroupElement g = make_element(fx::m35(), 2);
    CHECK(proof_longdiv(g, 3, 11).value() == 1);  // floor(8/11) = 0

    const EvalResult res = eval_core(g, 1, 5);
    CHECK(res.transcript.pi.value() == 1);  // floor(2/5) = 0
    CHECK(res.transcript.y.value() == 4);   // g^2
}

TEST_CASE("streaming long division matches the materialized quotient") {
    const GroupModulus& m = fx::m37909();
    Rng rng(808);
    for (int i = 0; i < 300; ++i) {
        const GroupElement g = fx::random_unit(m, rng);
        const std::uint64_t t = 1 + rng.next_u64() % 20;
        const unsigned bits = 5 + static_cast<unsigned>(rng.next_u64() % 8);
        const Bigint ell = hash_to_prime(input_bytes(rng), bits);

        OpCounter ops;
        const GroupElement pi = proof_longdiv(g, t, ell, &ops);
        const std::uint64_t quotient = ((1ull << t) / ell).convert_to<std::uint64_t>();
        CHECK(pi == pow(g, quotient));
        CHECK(ops.squarings == t);
        CHECK(ops.multiplications == std::popcount(quotient));
    }
    CHECK_THROWS_AS(proof_longdiv(make_element(m, 2), 4, 2), Error);  // ell < 3
}

TEST_CASE("honest transcripts verify within the operation budget") {
    Rng setup_rng(1);
    const Params pp{setup_modulus(8, setup_rng), 16, false};
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const Bytes x = input_bytes(rng);
        const std::uint64_t t = 1 + rng.next_u64() % 4096;
        const EvalResult res = eval(pp, x, t);
        const VerifyOutcome vr = verify(pp, res.transcript);
        CAPTURE(t);
        REQUIRE(vr.accepted());
        // One squaring per challenge bit plus at most one multiplication,
        // with slack for the setup multiplication.
        REQUIRE(vr.ops.total() <= 2 * bit_length(res.transcript.ell) + 4);
        REQUIRE(vr.ops.squarings == bit_length(res.transcript.ell));
    }
}

TEST_CASE("the T-in-hash flag round-trips and is enforced") {
    Rng setup_rng(3);
    const GroupModulus m = setup_modulus(8, setup_rng);
    const Params with{m, 16, true};
    const Params without{m, 16, false};
    Rng rng(4);
    const Bytes x = input_bytes(rng);

    const EvalResult res = eval(with, x, 100);
    CHECK(res.transcript.include_t_in_hash);
    CHECK(verify(with, res.transcript).accepted());

    const VerifyOutcome crossed = verify(without, res.transcript);
    CHECK(crossed.status == VerifyOutcome::Status::malformed);
    CHECK(crossed.reason.find("T-in-hash") != std::string::npos);

    // The same base and output draw different challenges under the two
    // conventions, because T enters the prime derivation.
    const EvalResult plain = eval(without, x, 100);
    CHECK(plain.transcript.ell != res.transcript.ell);
}

TEST_CASE("a transcript with a substituted challenge is rejected") {
    Rng setup_rng(5);
    const Params pp{setup_modulus(8, setup_rng), 16, false};
    Rng rng(6);
    EvalResult res = eval(pp, input_bytes(rng), 64);

    res.transcript.ell = 65537;  // prime, but not the derived challenge
    const VerifyOutcome vr = verify(pp, res.transcript);
    CHECK(vr.status == VerifyOutcome::Status::rejected);
    CHECK(vr.reason.find("challenge") != std::string::npos);
}

TEST_CASE("malformed transcripts are reported, not rejected") {
    const GroupModulus& m = fx::m35();
    const GroupElement g = make_element(m, 2);
    const GroupElement y = make_element(m, 11);
    const GroupElement pi = make_element(m, 2);

    CHECK(verify_core(m, g, unchecked_element(0, m.n()), pi, 5, 3).status ==
          VerifyOutcome::Status::malformed);
    CHECK(verify_core(m, g, y, unchecked_element(5, m.n()), 5, 3).status ==
          VerifyOutcome::Status::malformed);  // gcd(5, 35) > 1
    CHECK(verify_core(m, g, y, pi, 9, 3).status ==
          VerifyOutcome::Status::malformed);  // composite challenge
    CHECK(verify_core(m, g, y, pi, 2, 3).status ==
          VerifyOutcome::Status::malformed);  // challenge below 3

    Transcript tr;
    tr.t = 0;
    tr.y = y;
    tr.pi = pi;
    tr.ell = 5;
    const Params pp{m, 16, false};
    CHECK(verify(pp, tr).status == VerifyOutcome::Status::malformed);

    CHECK_THROWS_AS(eval(pp, Bytes{1, 2, 3}, 0), Error);
}

TEST_CASE("exactly one proof passes for the honest output") {
    // N=35, g=2, T=3, ell=5: scanning every unit as a candidate proof, only
    // pi=2 verifies against y=g^(2^3). gcd(5, phi)=1 makes pi -> pi^5 a
    // bijection, so this exhaustive scan is the uniqueness claim itself.
    const GroupModulus& m = fx::m35();
    const GroupElement g = make_element(m, 2);
    const GroupElement y = make_element(m, 11);
    int accepted = 0;
    for (std::uint64_t v = 1; v < 35; ++v) {
        if (oracle::gcd_u64(v, 35) != 1) continue;
        const VerifyOutcome vr = verify_core(m, g, y, make_element(m, v), 5, 3);
        if (vr.accepted()) {
            ++accepted;
            CHECK(v == 2);
        }
    }
    CHECK(accepted == 1);
}
