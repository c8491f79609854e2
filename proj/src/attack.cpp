#include "vdflab/attack.hpp"

#include <cmath>
#include <limits>

namespace vdflab::attack {

namespace mp = boost::multiprecision;

namespace {

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp != 0) {
        if (exp & 1) result = (result * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return result;
}

// How many extra delay candidates to try per challenge width before giving
// up when the countermeasure re-derives ell from T: each candidate hits
// with probability about 1/ell, so 16 expected waves make failure rare
// while keeping the loop bounded.
constexpr std::uint64_t kCountermeasureWaves = 16;

}  // namespace

std::uint64_t mult_order_2(std::uint64_t ell) {
    if (ell < 3 || ell % 2 == 0) throw Error("mult_order_2 expects an odd prime");
    const std::uint64_t group = ell - 1;
    std::uint64_t order = group;
    std::uint64_t rest = group;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        while (order % p == 0 && powmod_u64(2, order / p, ell) == 1) order /= p;
    }
    if (rest > 1) {
        while (order % rest == 0 && powmod_u64(2, order / rest, ell) == 1) order /= rest;
    }
    return order;
}

AttackTranscript forge_with(const Params& pp, ByteView x, const Bigint& tau) {
    if (pp.ell_bits < 4 || pp.ell_bits > 24) {
        throw Error("forge: ell_bits must lie in [4, 24] for desk-scale loops");
    }
    if (tau < 1) throw Error("forge: tau must be positive");

    const wesolowski::Params wpp{pp.modulus, pp.ell_bits, pp.with_t_in_hash};
    AttackTranscript out;
    out.x.assign(x.begin(), x.end());
    out.tau = tau;

    GroupElement g = hash_to_group(x, pp.modulus);
    out.y = pow(g, tau);

    // ceil(log2 tau): the smallest T for which 2^T could equal tau.
    std::uint64_t t = bit_length(tau - 1);

    if (!pp.with_t_in_hash) {
        const Bigint ell = wesolowski::derive_ell(wpp, g, out.y, 0);
        const Bigint target = tau % ell;
        Bigint residue = mp::powm(Bigint(2), Bigint(t), ell);
        const Bigint start = residue;
        bool found = residue == target;
        while (!found) {
            ++t;
            ++out.loop_iterations;
            residue = (residue * 2) % ell;
            if (residue == target) {
                found = true;
            } else if (residue == start) {
                break;  // full cycle of 2 mod ell traversed; target unreachable
            }
        }
        out.ell = ell;
        out.succeeded = found;
    } else {
        // Countermeasure in force: the challenge depends on T, so every
        // candidate delay draws a fresh prime and a fresh residue equation.
        const std::uint64_t max_extra = kCountermeasureWaves << pp.ell_bits;
        Bigint ell = wesolowski::derive_ell(wpp, g, out.y, t);
        bool found = mp::powm(Bigint(2), Bigint(t), ell) == tau % ell;
        while (!found && out.loop_iterations < max_extra) {
            ++t;
            ++out.loop_iterations;
            ell = wesolowski::derive_ell(wpp, g, out.y, t);
            found = mp::powm(Bigint(2), Bigint(t), ell) == tau % ell;
        }
        out.ell = ell;
        out.succeeded = found;
    }

    out.t = t;
    out.pi = pow(g, tau / out.ell);
    return out;
}

AttackTranscript forge(const Params& pp, ByteView x, Rng& rng) {
    const Bigint tau = rng.random_with_msb(2 * pp.lambda_param + 1);
    return forge_with(pp, x, tau);
}

AttackReport success_experiment(const Params& pp, std::uint64_t trials,
                                std::uint64_t seed, ExecMode mode) {
    struct TrialRecord {
        std::uint64_t ell = 0;
        double reference_rate = 0.0;
        bool terminated = false;
        bool accepted = false;
        bool degenerate = false;
        bool violation = false;
    };

    const wesolowski::Params wpp{pp.modulus, pp.ell_bits, pp.with_t_in_hash};
    const bool check_honest = pp.modulus.has_trapdoor();

    auto records = run_indexed<TrialRecord>(
        static_cast<std::size_t>(trials), mode, [&](std::size_t index) {
            Rng rng(derive_subseed(seed, index));
            const Bytes x = to_bytes_be(rng.random_bits(128), 16);
            const AttackTranscript f = forge(pp, x, rng);

            TrialRecord rec;
            rec.ell = f.ell.convert_to<std::uint64_t>();
            rec.reference_rate = static_cast<double>(mult_order_2(rec.ell)) /
                                 static_cast<double>(rec.ell);
            rec.terminated = f.succeeded;
            if (f.succeeded) {
                wesolowski::Transcript tr;
                tr.x = f.x;
                tr.t = f.t;
                tr.y = f.y;
                tr.pi = f.pi;
                tr.ell = f.ell;
                tr.include_t_in_hash = pp.with_t_in_hash;
                rec.accepted = wesolowski::verify(wpp, tr).accepted();
                rec.degenerate = f.tau == Bigint(1) << f.t;
                if (check_honest) {
                    const GroupElement g = hash_to_group(f.x, pp.modulus);
                    const GroupElement honest = trapdoor_pow(pp.modulus, g, f.t, 0);
                    rec.violation = rec.degenerate ? f.y != honest : f.y == honest;
                }
            }
            return rec;
        });

    AttackReport report;
    report.ell_bits = pp.ell_bits;
    report.trials = trials;
    report.with_t_in_hash = pp.with_t_in_hash;
    report.low_confidence = trials < 1000;
    report.honest_checked = check_honest;

    double reference_sum = 0.0;
    for (const TrialRecord& rec : records) {
        EllStats& stats = report.per_ell[rec.ell];
        stats.trials += 1;
        stats.reference_rate = rec.reference_rate;
        reference_sum += rec.reference_rate;
        if (rec.terminated) {
            stats.terminated += 1;
            report.terminated += 1;
            if (rec.accepted) report.accepted += 1;
            if (rec.degenerate) report.degenerate_honest += 1;
            if (rec.violation) report.soundness_violations += 1;
        }
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.accept_rate = report.terminated == 0
                             ? nan
                             : static_cast<double>(report.accepted) /
                                   static_cast<double>(report.terminated);
    report.termination_rate = trials == 0
                                  ? nan
                                  : static_cast<double>(report.terminated) /
                                        static_cast<double>(trials);
    report.mean_reference_rate =
        trials == 0 ? nan : reference_sum / static_cast<double>(trials);
    return report;
}

}  // namespace vdflab::attack
