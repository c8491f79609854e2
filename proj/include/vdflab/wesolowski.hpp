#ifndef VDFLAB_WESOLOWSKI_HPP
#define VDFLAB_WESOLOWSKI_HPP

#include <cstdint>
#include <string>

#include "vdflab/hash_suite.hpp"
#include "vdflab/op_counter.hpp"
#include "vdflab/rsa_group.hpp"

namespace vdflab {

// Outcome of a transcript verification. Malformed inputs are reported,
// never thrown, so the CLI can map them onto its exit-status contract.
struct VerifyOutcome {
    enum class Status { accepted, rejected, malformed };
    Status status = Status::rejected;
    std::string reason;
    OpCounter ops;

    bool accepted() const { return status == Status::accepted; }
};

namespace wesolowski {

struct Params {
    GroupModulus modulus;
    unsigned ell_bits;             // challenge prime size; 2*lambda by default
    bool include_t_in_hash = false;
};

struct Transcript {
    Bytes x;
    std::uint64_t t = 0;
    GroupElement y;
    GroupElement pi;
    Bigint ell;
    bool include_t_in_hash = false;
};

struct EvalResult {
    Transcript transcript;
    OpCounter ops;
};

// Fiat-Shamir challenge: ell = hash_to_prime(bin(g)|||bin(y)[|||bin(T)]).
Bigint derive_ell(const Params& pp, const GroupElement& g, const GroupElement& y,
                  std::uint64_t t);

// g^floor(2^T / ell) by streaming long division: per step the remainder
// doubles mod ell and the emitted quotient bit feeds square-and-multiply.
// The quotient integer is never materialized.
GroupElement proof_longdiv(const GroupElement& g, std::uint64_t t, const Bigint& ell,
                           OpCounter* ops = nullptr, const CancelFlag* cancel = nullptr);

// y and pi for a forced base and challenge (test seam; eval wires the
// hashes in front of it).
EvalResult eval_core(const GroupElement& g, std::uint64_t t, const Bigint& ell,
                     const CancelFlag* cancel = nullptr);

// Full evaluation: g = H_G(x), y = g^(2^T) by T squarings, ell by
// Fiat-Shamir, pi by long division. Roughly 2T squarings in total.
EvalResult eval(const Params& pp, ByteView x, std::uint64_t t,
                const CancelFlag* cancel = nullptr);

// Checks pi^ell * g^(2^T mod ell) == y with a simultaneous double
// exponentiation; group cost is at most 2*bitlen(ell)+4 operations.
VerifyOutcome verify_core(const GroupModulus& m, const GroupElement& g,
                          const GroupElement& y, const GroupElement& pi,
                          const Bigint& ell, std::uint64_t t);

// Recomputes g and ell from the transcript and dispatches to verify_core.
VerifyOutcome verify(const Params& pp, const Transcript& transcript);

}  // namespace wesolowski
}  // namespace vdflab

#endif
