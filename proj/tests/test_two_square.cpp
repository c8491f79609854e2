#include <doctest.h>

#include <map>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vdflab/two_square.hpp"

using namespace vdflab;
using namespace vdflab::two_square;
namespace fx = fixtures;

namespace {

Bytes input_bytes(Rng& rng) { return to_bytes_be(rng.random_bits(128), 16); }

}  // namespace

TEST_CASE("variant names round-trip") {
    CHECK(variant_from_string("A") == VerifyVariant::a_compare_to_one);
    CHECK(variant_from_string("b") == VerifyVariant::b_compare_mod_m);
    CHECK(variant_from_string("compare-to-residue") ==
          VerifyVariant::c_compare_to_residue);
    for (auto v : {VerifyVariant::a_compare_to_one, VerifyVariant::b_compare_mod_m,
                   VerifyVariant::c_compare_to_residue}) {
        CHECK(variant_from_string(to_string(v)) == v);
    }
    CHECK_THROWS_AS(variant_from_string("D"), Error);
}

TEST_CASE("evaluation is exactly T squarings plus one multiplication") {
    const Params pp{fx::m77(), 2, 5};
    const GroupElement g = make_element(fx::m77(), 76);

    const EvalResult res = eval_with_base(pp, g, 5);
    CHECK(res.output.y.value() == 76);  // (-1)^(2^5 + 1) = -1
    CHECK(res.ops == OpCounter{5, 1, 0});
    CHECK(res.output.t == 5);

    const EvalResult res2 = eval_with_base(pp, make_element(fx::m77(), 2), 3);
    CHECK(res2.output.y.value() == 50);  // 2^9 mod 77
    CHECK(res2.ops == OpCounter{3, 1, 0});

    CHECK_THROWS_AS(eval_with_base(pp, g, 0), Error);
    CHECK_THROWS_AS(eval_with_base(pp, make_element(fx::m35(), 2), 3),
                    MismatchedModuli);
}

TEST_CASE("full evaluation wires the maximal-order hash in front") {
    const Params pp{fx::m77(), 2, 3};
    Rng rng(31);
    const Bytes x = input_bytes(rng);
    const EvalResult res = eval(pp, x, 3);
    CHECK(res.output.x == x);
    CHECK(res.ops == OpCounter{3, 1, 0});
    const MaximalOrderHash h = hash_to_maximal_order(x, 3, 2, fx::m77());
    CHECK(res.hash.element == h.element);
    CHECK(res.output.y == trapdoor_pow(fx::m77(), h.element, 3, 1));
}

TEST_CASE("hand-checked verification on N=77") {
    const Params pp{fx::m77(), 2, 5};

    SUBCASE("an order-2 base passes variant A") {
        const GroupElement g = make_element(fx::m77(), 76);
        const GroupElement y = make_element(fx::m77(), 76);
        const VerifyReport rep =
            verify_with_base(pp, g, 5, y, VerifyVariant::a_compare_to_one);
        CHECK(rep.outcome.accepted());
        CHECK(rep.residual == 1);
        CHECK(rep.m == 50);  // 2^(5+2+2) mod 77
        CHECK(rep.outcome.ops == OpCounter{2, 1, 1});  // delta squarings
    }

    SUBCASE("a full-order base fails every variant on its honest output") {
        const GroupElement g = make_element(fx::m77(), 2);
        const GroupElement y = make_element(fx::m77(), 50);  // g^(2^3+1)
        const Params pp3{fx::m77(), 2, 3};

        const VerifyReport a =
            verify_with_base(pp3, g, 3, y, VerifyVariant::a_compare_to_one);
        CHECK_FALSE(a.outcome.accepted());
        CHECK(a.outcome.status == VerifyOutcome::Status::rejected);
        CHECK(a.residual == 4);  // 2^32 mod 77
        CHECK(a.m == 51);        // 2^7 mod 77

        CHECK_FALSE(verify_with_base(pp3, g, 3, y, VerifyVariant::b_compare_mod_m)
                        .outcome.accepted());
        CHECK_FALSE(
            verify_with_base(pp3, g, 3, y, VerifyVariant::c_compare_to_residue)
                .outcome.accepted());
    }
}

TEST_CASE("m = 1 splits the three readings of the acceptance equation") {
    // N=35, T=8: 2^(T+delta+2) = 2^12 ≡ 1 (mod 35). The honest output of
    // g=2 is g^(2^8+1) = 32; the residual comes out 16.
    const Params pp{fx::m35(), 2, 8};
    const GroupElement g = make_element(fx::m35(), 2);
    const GroupElement y = trapdoor_pow(fx::m35(), g, 8, 1);
    CHECK(y.value() == 32);

    const VerifyReport a = verify_with_base(pp, g, 8, y, VerifyVariant::a_compare_to_one);
    CHECK(a.m == 1);
    CHECK(a.outcome.status == VerifyOutcome::Status::rejected);
    CHECK(a.outcome.reason.find("m = 1") != std::string::npos);

    const VerifyReport b = verify_with_base(pp, g, 8, y, VerifyVariant::b_compare_mod_m);
    CHECK(b.outcome.accepted());  // everything is 0 mod 1

    const VerifyReport c = verify_with_base(pp, g, 8, y, VerifyVariant::c_compare_to_residue);
    CHECK(c.outcome.status == VerifyOutcome::Status::rejected);
    CHECK(c.residual == 16);  // a unit can never equal 1 mod 1 = 0
}

TEST_CASE("verification rejects malformed inputs as malformed") {
    const Params pp{fx::m77(), 2, 5};
    const GroupElement g = make_element(fx::m77(), 76);
    const GroupElement y = make_element(fx::m77(), 76);

    CHECK(verify_with_base(pp, g, 0, y, VerifyVariant::a_compare_to_one)
              .outcome.status == VerifyOutcome::Status::malformed);
    CHECK(verify_with_base(pp, unchecked_element(7, Bigint(77)), 5, y,
                           VerifyVariant::a_compare_to_one)
              .outcome.status == VerifyOutcome::Status::malformed);
    CHECK(verify_with_base(pp, g, 5, unchecked_element(0, Bigint(77)),
                           VerifyVariant::a_compare_to_one)
              .outcome.status == VerifyOutcome::Status::malformed);
}

TEST_CASE("verify agrees with its with-base seam through the hash") {
    const Params pp{fx::m77(), 2, 4};
    Rng rng(32);
    for (int i = 0; i < 20; ++i) {
        const Bytes x = input_bytes(rng);
        const MaximalOrderHash h = hash_to_maximal_order(x, 4, 2, fx::m77());
        const GroupElement y = trapdoor_pow(fx::m77(), h.element, 4, 1);
        for (auto v : {VerifyVariant::a_compare_to_one, VerifyVariant::b_compare_mod_m,
                       VerifyVariant::c_compare_to_residue}) {
            CHECK(verify(pp, x, 4, y, v).outcome.status ==
                  verify_with_base(pp, h.element, 4, y, v).outcome.status);
        }
    }
}

TEST_CASE("the shortcut collapses low-order bases") {
    const Params pp{fx::m77(), 2, 5};

    const ShortcutReport minus_one =
        shortcut_probe_with_base(pp, make_element(fx::m77(), 76), 5);
    CHECK(minus_one.applicable);
    CHECK(minus_one.order == 2);
    CHECK(minus_one.probe_ops == 0);   // exponent collapses to 1
    CHECK(minus_one.ops_ratio == 0.0);
    CHECK(minus_one.accepted);
    CHECK(minus_one.matches_honest);

    const ShortcutReport identity_probe =
        shortcut_probe_with_base(pp, make_element(fx::m77(), 1), 5);
    CHECK(identity_probe.applicable);  // order 1 divides everything
    CHECK(identity_probe.accepted);
    CHECK(identity_probe.matches_honest);

    const ShortcutReport full_order =
        shortcut_probe_with_base(pp, make_element(fx::m77(), 2), 5);
    CHECK_FALSE(full_order.applicable);  // order 30 has an odd part
    CHECK(full_order.order == 30);
}

TEST_CASE("exhaustive characterization of N=77, T=3 matches a recount") {
    const Params pp{fx::m77(), 2, 3};
    const CharacterizeReport rep = characterize_exhaustive(pp, 3);

    // Independent recount straight from the definitions.
    std::uint64_t a = 0, b = 0, c = 0, divides = 0, other = 0;
    std::map<unsigned, std::uint64_t> two_power;
    const std::uint64_t m_side = oracle::powmod_u64(2, 3 + 2 + 2, 77);
    REQUIRE(m_side == 51);
    for (std::uint64_t v = 1; v < 77; ++v) {
        if (oracle::gcd_u64(v, 77) != 1) continue;
        const std::uint64_t residual = oracle::powmod_u64(v, 32, 77);  // 2^(T+delta)
        if (residual == 1) ++a;
        if (residual % m_side == 1 % m_side) ++b;
        if (residual == 1 % m_side) ++c;
        std::uint64_t order = oracle::element_order_u64(v, 77);
        unsigned two_adic = 0;
        while (order % 2 == 0) {
            order /= 2;
            ++two_adic;
        }
        if (order == 1) {
            two_power[two_adic] += 1;
            if (two_adic <= 3 + 2) ++divides;
        } else {
            ++other;
        }
    }

    CHECK(rep.instances == 60);
    CHECK(rep.a_accepted == 4);  // exactly the four square roots of 1
    CHECK(rep.a_accepted == a);
    CHECK(rep.b_accepted == b);
    CHECK(rep.c_accepted == c);
    CHECK(rep.order_divides == divides);
    CHECK(rep.equivalence_exceptions == 0);
    CHECK_FALSE(rep.m_is_one);
    CHECK(rep.two_power_orders == two_power);
    CHECK(rep.other_orders == other);
    CHECK(rep.two_power_orders == std::map<unsigned, std::uint64_t>{{0, 1}, {1, 3}});

    // All four low-order bases admit the shortcut, which reproduces the
    // honest output without doing the sequential work.
    CHECK(rep.shortcut_applicable == 4);
    CHECK(rep.shortcut_accepted == 4);
    CHECK(rep.shortcut_matches_honest == 4);
    CHECK(rep.shortcut_max_ops == 0);
}

TEST_CASE("exhaustive characterization of N=35, T=8 hits the m = 1 regime") {
    const Params pp{fx::m35(), 2, 8};
    const CharacterizeReport rep = characterize_exhaustive(pp, 8);
    CHECK(rep.m_is_one);
    CHECK(rep.instances == 24);
    CHECK(rep.a_accepted == 0);   // variant A rejects everything when m = 1
    CHECK(rep.b_accepted == 24);  // variant B accepts everything
    CHECK(rep.c_accepted == 0);   // a unit never equals 0
    CHECK(rep.equivalence_exceptions == 0);  // the proof assumes m > 1
    CHECK(rep.order_divides == 8);
    CHECK(rep.two_power_orders ==
          std::map<unsigned, std::uint64_t>{{0, 1}, {1, 3}, {2, 4}});
    CHECK(rep.other_orders == 16);
    CHECK(rep.shortcut_applicable == 8);
    CHECK(rep.shortcut_accepted == 0);  // acceptance is variant A's verdict
    CHECK(rep.shortcut_matches_honest == 8);
}

TEST_CASE("sampled characterization keeps the equivalence exception-free") {
    const Params pp{fx::m37909(), 2, 16};
    const CharacterizeReport rep = characterize_sampled(pp, 16, 150, 2026);
    CHECK(rep.instances == 150);
    CHECK_FALSE(rep.exhaustive);
    CHECK_FALSE(rep.m_is_one);
    CHECK(rep.equivalence_exceptions == 0);
    CHECK(rep.a_accepted == rep.order_divides);
}

TEST_CASE("characterization guards its preconditions") {
    const Params pub{GroupModulus::public_only(fx::m77().n()), 2, 3};
    CHECK_THROWS_AS(characterize_exhaustive(pub, 3), MissingTrapdoor);
    CHECK_THROWS_AS(characterize_sampled(pub, 3, 10, 1), MissingTrapdoor);

    Rng rng(33);
    const Params big{setup_modulus(8, rng), 2, 3};
    CHECK_THROWS_AS(characterize_exhaustive(big, 3), Error);  // N > 10^4
    CHECK_THROWS_AS(characterize_exhaustive(Params{fx::m77(), 2, 1}, 0), Error);
}

TEST_CASE("setup validates and is seed-reproducible") {
    Rng a(7), b(7);
    const Params pa = setup(8, 5, a);
    const Params pb = setup(8, 5, b);
    CHECK(pa.modulus.n() == pb.modulus.n());
    CHECK(pa.delta == 2);
    CHECK(pa.t == 5);
    Rng c(8);
    CHECK_THROWS_AS(setup(8, 0, c), Error);
    CHECK_THROWS_AS(setup(8, 5, c, 0), Error);
}
