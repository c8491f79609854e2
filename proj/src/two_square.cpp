#include "vdflab/two_square.hpp"

#include <algorithm>

#include <boost/integer/common_factor_rt.hpp>

namespace vdflab::two_square {

namespace mp = boost::multiprecision;

VerifyVariant variant_from_string(const std::string& s) {
    if (s == "A" || s == "a" || s == "compare-to-one") {
        return VerifyVariant::a_compare_to_one;
    }
    if (s == "B" || s == "b" || s == "compare-mod-m") {
        return VerifyVariant::b_compare_mod_m;
    }
    if (s == "C" || s == "c" || s == "compare-to-residue") {
        return VerifyVariant::c_compare_to_residue;
    }
    throw Error("unknown verification variant '" + s + "' (expected A|B|C)");
}

std::string to_string(VerifyVariant v) {
    switch (v) {
        case VerifyVariant::a_compare_to_one: return "A";
        case VerifyVariant::b_compare_mod_m: return "B";
        case VerifyVariant::c_compare_to_residue: return "C";
    }
    return "A";
}

Params setup(unsigned lambda_param, std::uint64_t t, Rng& rng, unsigned delta) {
    if (t < 1) throw Error("setup: the delay must be at least 1");
    if (delta < 1) throw Error("setup: delta must be at least 1");
    return {setup_modulus(lambda_param, rng), delta, t};
}

EvalResult eval_with_base(const Params& pp, const GroupElement& g, std::uint64_t t,
                          const CancelFlag* cancel) {
    if (t < 1) throw Error("eval: the delay must be at least 1");
    if (g.modulus() != pp.modulus.n()) {
        throw MismatchedModuli("eval: base does not belong to the parameter modulus");
    }
    auto [squared, ops] = sequential_square(g, t, cancel);
    EvalResult res;
    res.output.t = t;
    res.output.y = mul(squared, g, &ops);
    res.ops = ops;
    res.hash.element = g;
    return res;
}

EvalResult eval(const Params& pp, ByteView x, std::uint64_t t,
                const CancelFlag* cancel) {
    if (t < 1) throw Error("eval: the delay must be at least 1");
    MaximalOrderHash h = hash_to_maximal_order(x, t, pp.delta, pp.modulus);
    EvalResult res = eval_with_base(pp, h.element, t, cancel);
    res.output.x.assign(x.begin(), x.end());
    res.hash = std::move(h);
    return res;
}

VerifyReport verify_with_base(const Params& pp, const GroupElement& g,
                              std::uint64_t t, const GroupElement& y,
                              VerifyVariant variant) {
    using Status = VerifyOutcome::Status;
    VerifyReport rep;
    rep.variant = variant;
    if (t < 1) {
        rep.outcome = {Status::malformed, "the delay must be at least 1", {}};
        return rep;
    }
    const Bigint& n = pp.modulus.n();
    auto is_unit = [&n](const GroupElement& e) {
        return e.modulus() == n && e.value() > 0 && e.value() < n &&
               boost::integer::gcd(e.value(), n) == 1;
    };
    if (!is_unit(g)) {
        rep.outcome = {Status::malformed, "base is not a unit of the modulus", {}};
        return rep;
    }
    if (!is_unit(y)) {
        rep.outcome = {Status::malformed, "y is not a unit of the modulus", {}};
        return rep;
    }

    OpCounter ops;
    GroupElement acc = mul(y, inverse(g, &ops), &ops);
    for (unsigned i = 0; i < pp.delta; ++i) acc = square(acc, &ops);
    rep.residual = acc.value();
    // Side value of the acceptance equation: an integer exponentiation of
    // the public constant 2 with a word-sized exponent, O(log t) work that
    // is deliberately outside the group-operation tally.
    rep.m = mp::powm(Bigint(2), Bigint(t) + pp.delta + 2, n);

    bool ok = false;
    std::string reason;
    switch (variant) {
        case VerifyVariant::a_compare_to_one:
            if (rep.m == 1) {
                reason = "m = 1 turns the target residue into 0, unreachable for a unit";
            } else {
                ok = rep.residual == 1;
                if (!ok) reason = "residual is not 1";
            }
            break;
        case VerifyVariant::b_compare_mod_m:
            ok = rep.residual % rep.m == Bigint(1) % rep.m;
            if (!ok) reason = "residual is not 1 modulo m";
            break;
        case VerifyVariant::c_compare_to_residue:
            ok = rep.residual == Bigint(1) % rep.m;
            if (!ok) reason = "residual differs from the reduced target";
            break;
    }
    rep.outcome = {ok ? Status::accepted : Status::rejected, reason, ops};
    return rep;
}

VerifyReport verify(const Params& pp, ByteView x, std::uint64_t t,
                    const GroupElement& y, VerifyVariant variant) {
    if (t < 1) {
        VerifyReport rep;
        rep.variant = variant;
        rep.outcome = {VerifyOutcome::Status::malformed, "the delay must be at least 1", {}};
        return rep;
    }
    MaximalOrderHash h = hash_to_maximal_order(x, t, pp.delta, pp.modulus);
    return verify_with_base(pp, h.element, t, y, variant);
}

ShortcutReport shortcut_probe_with_base(const Params& pp, const GroupElement& g,
                                        std::uint64_t t) {
    ShortcutReport rep;
    rep.t = t;
    rep.order = element_order(pp.modulus, g);

    Bigint odd = rep.order;
    unsigned two_adic = 0;
    while (odd % 2 == 0) {
        odd >>= 1;
        ++two_adic;
    }
    rep.applicable = odd == 1 && Bigint(two_adic) <= Bigint(t) + pp.delta;
    if (!rep.applicable) return rep;

    OpCounter ops;
    const Bigint two_t = mp::powm(Bigint(2), Bigint(t), rep.order);
    const Bigint e = (two_t + 1) % rep.order;
    GroupElement probe = pow(g, e, &ops);
    rep.probe_ops = ops.total();
    rep.ops_ratio = static_cast<double>(rep.probe_ops) / static_cast<double>(t);
    rep.accepted = verify_with_base(pp, g, t, probe, VerifyVariant::a_compare_to_one)
                       .outcome.accepted();
    rep.matches_honest = probe == trapdoor_pow(pp.modulus, g, t, 1);
    return rep;
}

ShortcutReport shortcut_probe(const Params& pp, ByteView x, std::uint64_t t) {
    MaximalOrderHash h = hash_to_maximal_order(x, t, pp.delta, pp.modulus);
    return shortcut_probe_with_base(pp, h.element, t);
}

namespace {

struct InstanceRecord {
    bool is_unit = false;
    unsigned two_adic = 0;
    bool order_two_power = false;
    bool order_divides = false;
    bool a_ok = false;
    bool b_ok = false;
    bool c_ok = false;
    bool exception = false;
    bool probe_run = false;
    bool probe_accepted = false;
    bool probe_matches = false;
    std::uint64_t probe_ops = 0;
};

InstanceRecord measure_instance(const Params& pp, const GroupElement& g,
                                std::uint64_t t, bool m_is_one) {
    InstanceRecord rec;
    rec.is_unit = true;

    const Bigint order = element_order(pp.modulus, g);
    Bigint odd = order;
    while (odd % 2 == 0) {
        odd >>= 1;
        ++rec.two_adic;
    }
    rec.order_two_power = odd == 1;
    rec.order_divides =
        rec.order_two_power && Bigint(rec.two_adic) <= Bigint(t) + pp.delta;

    const GroupElement honest = trapdoor_pow(pp.modulus, g, t, 1);
    rec.a_ok = verify_with_base(pp, g, t, honest, VerifyVariant::a_compare_to_one)
                   .outcome.accepted();
    rec.b_ok = verify_with_base(pp, g, t, honest, VerifyVariant::b_compare_mod_m)
                   .outcome.accepted();
    rec.c_ok = verify_with_base(pp, g, t, honest, VerifyVariant::c_compare_to_residue)
                   .outcome.accepted();
    if (!m_is_one) rec.exception = rec.a_ok != rec.order_divides;

    if (rec.order_divides) {
        ShortcutReport probe = shortcut_probe_with_base(pp, g, t);
        rec.probe_run = true;
        rec.probe_accepted = probe.accepted;
        rec.probe_matches = probe.matches_honest;
        rec.probe_ops = probe.probe_ops;
    }
    return rec;
}

CharacterizeReport aggregate(const Params& pp, std::uint64_t t, bool m_is_one,
                             bool exhaustive,
                             const std::vector<InstanceRecord>& records) {
    CharacterizeReport rep;
    rep.t = t;
    rep.delta = pp.delta;
    rep.exhaustive = exhaustive;
    rep.m_is_one = m_is_one;
    for (const InstanceRecord& rec : records) {
        if (!rec.is_unit) continue;
        rep.instances += 1;
        if (rec.a_ok) rep.a_accepted += 1;
        if (rec.b_ok) rep.b_accepted += 1;
        if (rec.c_ok) rep.c_accepted += 1;
        if (rec.order_divides) rep.order_divides += 1;
        if (rec.exception) rep.equivalence_exceptions += 1;
        if (rec.order_two_power) {
            rep.two_power_orders[rec.two_adic] += 1;
        } else {
            rep.other_orders += 1;
        }
        if (rec.probe_run) {
            rep.shortcut_applicable += 1;
            if (rec.probe_accepted) rep.shortcut_accepted += 1;
            if (rec.probe_matches) rep.shortcut_matches_honest += 1;
            rep.shortcut_max_ops = std::max(rep.shortcut_max_ops, rec.probe_ops);
        }
    }
    return rep;
}

bool side_value_is_one(const Params& pp, std::uint64_t t) {
    return mp::powm(Bigint(2), Bigint(t) + pp.delta + 2, pp.modulus.n()) == 1;
}

}  // namespace

CharacterizeReport characterize_exhaustive(const Params& pp, std::uint64_t t,
                                           ExecMode mode) {
    if (!pp.modulus.has_trapdoor()) {
        throw MissingTrapdoor("characterization needs the factorization of N");
    }
    if (t < 1) throw Error("characterize: the delay must be at least 1");
    if (pp.modulus.n() > 10000) {
        throw Error("exhaustive characterization is limited to N <= 10^4");
    }
    const std::uint64_t n = pp.modulus.n().convert_to<std::uint64_t>();
    const bool m_is_one = side_value_is_one(pp, t);

    auto records = run_indexed<InstanceRecord>(
        static_cast<std::size_t>(n - 1), mode, [&](std::size_t index) {
            const Bigint candidate = index + 1;
            if (boost::integer::gcd(candidate, pp.modulus.n()) != 1) {
                return InstanceRecord{};
            }
            return measure_instance(pp, make_element(pp.modulus, candidate), t,
                                    m_is_one);
        });
    return aggregate(pp, t, m_is_one, true, records);
}

CharacterizeReport characterize_sampled(const Params& pp, std::uint64_t t,
                                        std::uint64_t samples, std::uint64_t seed,
                                        ExecMode mode) {
    if (!pp.modulus.has_trapdoor()) {
        throw MissingTrapdoor("characterization needs the factorization of N");
    }
    if (t < 1) throw Error("characterize: the delay must be at least 1");
    const bool m_is_one = side_value_is_one(pp, t);

    auto records = run_indexed<InstanceRecord>(
        static_cast<std::size_t>(samples), mode, [&](std::size_t index) {
            Rng rng(derive_subseed(seed, index));
            const Bytes x = to_bytes_be(rng.random_bits(128), 16);
            MaximalOrderHash h = hash_to_maximal_order(x, t, pp.delta, pp.modulus);
            return measure_instance(pp, h.element, t, m_is_one);
        });
    return aggregate(pp, t, m_is_one, false, records);
}

}  // namespace vdflab::two_square
