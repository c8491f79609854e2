#ifndef VDFLAB_PIETRZAK_HPP
#define VDFLAB_PIETRZAK_HPP

#include <cstdint>
#include <vector>

#include "vdflab/hash_suite.hpp"
#include "vdflab/op_counter.hpp"
#include "vdflab/rsa_group.hpp"
#include "vdflab/wesolowski.hpp"  // VerifyOutcome

namespace vdflab::pietrzak {

struct Params {
    GroupModulus modulus;
    unsigned lambda_bits;  // challenge width: r in [1, 2^lambda]
};

// T must be a power of two; the proof is the list of midpoints, one per
// halving level, so it holds exactly log2(T) group elements.
struct Transcript {
    Bytes x;
    std::uint64_t t = 0;
    GroupElement y;
    std::vector<GroupElement> mu;
    unsigned lambda_bits = 0;
};

struct EvalResult {
    GroupElement y;
    OpCounter ops;
};

struct ProveResult {
    Transcript transcript;
    OpCounter ops;
};

bool is_power_of_two(std::uint64_t t);

// Fiat-Shamir challenge for one halving level, bound to the level's claim
// (g, y, midpoint, T): uniform in [1, 2^lambda].
Bigint derive_challenge(const Params& pp, const GroupElement& g,
                        const GroupElement& y, const GroupElement& mu,
                        std::uint64_t t);

// y = g^(2^T) for g = H_G(x); T a power of two, T >= 2.
EvalResult eval(const Params& pp, ByteView x, std::uint64_t t,
                const CancelFlag* cancel = nullptr);

// Recursive halving for a forced base (test seam; prove wires the hash in
// front of it and stores x). Each level publishes the midpoint
// mu = g^(2^(T/2)) and folds the claim (g, y, T) into
// (g^r * mu, mu^r * y, T/2). Stops at T = 1, where the prover checks its
// own claim and fails on an inconsistent y.
ProveResult prove_core(const Params& pp, const GroupElement& g, std::uint64_t t,
                       const GroupElement& y, const CancelFlag* cancel = nullptr);

ProveResult prove(const Params& pp, ByteView x, std::uint64_t t,
                  const GroupElement& y, const CancelFlag* cancel = nullptr);

// Re-derives every challenge, folds the claim using the transmitted
// midpoints, and accepts iff the final one-squaring check holds.
VerifyOutcome verify_core(const Params& pp, const GroupElement& g,
                          const Transcript& transcript);

// Recomputes g = H_G(x) from the transcript and dispatches to verify_core.
VerifyOutcome verify(const Params& pp, const Transcript& transcript);

}  // namespace vdflab::pietrzak

#endif
