#ifndef VDFLAB_ATTACK_HPP
#define VDFLAB_ATTACK_HPP

#include <cstdint>
#include <map>

#include "vdflab/parallel.hpp"
#include "vdflab/wesolowski.hpp"

namespace vdflab::attack {

struct Params {
    GroupModulus modulus;
    unsigned lambda_param = 16;  // tau is sampled with 2*lambda_param+1 bits
    unsigned ell_bits = 8;       // challenge prime width, capped at 24
    bool with_t_in_hash = false; // countermeasure: fold T into the challenge
};

// One forging attempt. y = g^tau and pi = g^floor(tau/ell) always hold;
// `succeeded` records whether the delay search hit 2^T ≡ tau (mod ell)
// before exhausting the cycle of 2's powers.
struct AttackTranscript {
    Bytes x;
    Bigint tau;
    GroupElement y;
    Bigint ell;
    GroupElement pi;
    std::uint64_t t = 0;
    std::uint64_t loop_iterations = 0;
    bool succeeded = false;
};

// Multiplicative order of 2 modulo an odd prime ell < 2^24, by stripping
// prime factors of ell-1.
std::uint64_t mult_order_2(std::uint64_t ell);

// The forging steps with a caller-supplied tau (test seam):
// g = H_G(x); y = g^tau; ell from the challenge hash; pi = g^floor(tau/ell);
// T from ceil(log2 tau) upward until 2^T ≡ tau (mod ell). The search stops
// after one full cycle of 2 mod ell (detected by the residue returning to
// its start), so loop_iterations never exceeds mult_order_2(ell).
AttackTranscript forge_with(const Params& pp, ByteView x, const Bigint& tau);

// Samples tau uniformly with exactly 2*lambda_param+1 bits, then forges.
AttackTranscript forge(const Params& pp, ByteView x, Rng& rng);

struct EllStats {
    std::uint64_t trials = 0;
    std::uint64_t terminated = 0;
    double reference_rate = 0.0;  // ord_ell(2) / ell

    double termination_rate() const {
        return trials == 0 ? 0.0 : static_cast<double>(terminated) / static_cast<double>(trials);
    }
};

struct AttackReport {
    unsigned ell_bits = 0;
    std::uint64_t trials = 0;
    bool with_t_in_hash = false;
    bool low_confidence = false;  // trials below 1000
    bool honest_checked = false;  // trapdoor cross-check against g^(2^T) ran

    std::uint64_t terminated = 0;
    std::uint64_t accepted = 0;           // terminated forgeries passing verify
    std::uint64_t degenerate_honest = 0;  // tau == 2^T exactly (not a forgery)
    std::uint64_t soundness_violations = 0;

    // NaN when undefined (no trials / no terminated forgeries).
    double accept_rate = 0.0;
    double termination_rate = 0.0;
    double mean_reference_rate = 0.0;

    std::map<std::uint64_t, EllStats> per_ell;
};

// Runs `trials` independent forgeries on fresh seed-derived inputs, feeds
// every terminating transcript to the verifier, and tallies measured rates
// against the subgroup reference ord_ell(2)/ell. When the modulus carries
// its trapdoor, each forgery is also compared with the honest output:
// y == g^(2^T) with tau != 2^T (or the converse) counts as a violation.
AttackReport success_experiment(const Params& pp, std::uint64_t trials,
                                std::uint64_t seed,
                                ExecMode mode = ExecMode::open_mp);

}  // namespace vdflab::attack

#endif
