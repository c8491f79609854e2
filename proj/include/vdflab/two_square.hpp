#ifndef VDFLAB_TWO_SQUARE_HPP
#define VDFLAB_TWO_SQUARE_HPP

#include <cstdint>
#include <map>
#include <string>

#include "vdflab/hash_suite.hpp"
#include "vdflab/parallel.hpp"
#include "vdflab/wesolowski.hpp"

namespace vdflab::two_square {

struct Params {
    GroupModulus modulus;
    unsigned delta = 2;     // number of verification squarings
    std::uint64_t t = 1;    // configured delay
};

// The verification equation compares (y*g^-1)^(2^delta) mod N against
// "1 mod m" for m = 2^(T+delta+2) mod N; that right-hand side admits more
// than one reading, so the verifier implements all of them side by side.
enum class VerifyVariant {
    a_compare_to_one,     // L == 1 as integers; reject outright when m == 1
    b_compare_mod_m,      // L mod m == 1 mod m (vacuous when m == 1)
    c_compare_to_residue, // L == (1 mod m) as integers
};

VerifyVariant variant_from_string(const std::string& s);
std::string to_string(VerifyVariant v);

// Output of evaluation. The scheme ships no proof: verification works from
// y alone.
struct Output {
    Bytes x;
    std::uint64_t t = 0;
    GroupElement y;
};

struct EvalResult {
    Output output;
    OpCounter ops;          // exactly t squarings + 1 multiplication
    MaximalOrderHash hash;  // records the raw pre-reduction residue
};

// Fresh modulus of safe primes; delta defaults to 2 and t must be >= 1.
Params setup(unsigned lambda_param, std::uint64_t t, Rng& rng, unsigned delta = 2);

// y = g^(2^t + 1): t sequential squarings then one multiplication by g.
EvalResult eval_with_base(const Params& pp, const GroupElement& g, std::uint64_t t,
                          const CancelFlag* cancel = nullptr);

// Full evaluation: g from the maximal-order hash of x, then eval_with_base.
EvalResult eval(const Params& pp, ByteView x, std::uint64_t t,
                const CancelFlag* cancel = nullptr);

struct VerifyReport {
    VerifyOutcome outcome;
    VerifyVariant variant = VerifyVariant::a_compare_to_one;
    Bigint residual;  // L = (y * g^-1)^(2^delta) mod N
    Bigint m;         // 2^(T+delta+2) mod N, an integer exponentiation of 2
};

// Verification against a known base (test seam and characterization path).
// Group cost: 1 inversion, 1 multiplication, exactly delta squarings. The
// side value m costs O(log T) integer work and is never counted.
VerifyReport verify_with_base(const Params& pp, const GroupElement& g,
                              std::uint64_t t, const GroupElement& y,
                              VerifyVariant variant);

// Recomputes the base from x and dispatches to verify_with_base.
VerifyReport verify(const Params& pp, ByteView x, std::uint64_t t,
                    const GroupElement& y, VerifyVariant variant);

// Fast-evaluation probe: when ord(g) divides 2^(t+delta) the honest output
// collapses to g^((2^t+1) mod ord), computable in O(log ord) group work.
struct ShortcutReport {
    bool applicable = false;   // ord(g) | 2^(t+delta)
    Bigint order;
    std::uint64_t t = 0;
    std::uint64_t probe_ops = 0;   // group ops spent by the shortcut
    double ops_ratio = 0.0;        // probe_ops / t
    bool accepted = false;         // variant A accepts the probe output
    bool matches_honest = false;   // probe output equals the trapdoor value
};

ShortcutReport shortcut_probe_with_base(const Params& pp, const GroupElement& g,
                                        std::uint64_t t);
ShortcutReport shortcut_probe(const Params& pp, ByteView x, std::uint64_t t);

// Empirical map of when verification accepts the honest output. Every
// instance records the base's order, whether it divides 2^(t+delta), and
// each variant's verdict on the trapdoor-computed honest y; variant A must
// agree with the divisibility predicate whenever m > 1 (the proven
// equivalence), and disagreements are counted as exceptions.
struct CharacterizeReport {
    std::uint64_t t = 0;
    unsigned delta = 2;
    bool exhaustive = false;
    std::uint64_t instances = 0;
    std::uint64_t a_accepted = 0;
    std::uint64_t b_accepted = 0;
    std::uint64_t c_accepted = 0;
    std::uint64_t order_divides = 0;
    std::uint64_t equivalence_exceptions = 0;
    bool m_is_one = false;

    // Order statistics: counts of bases whose order is exactly 2^v, plus
    // the bases whose order has an odd factor.
    std::map<unsigned, std::uint64_t> two_power_orders;
    std::uint64_t other_orders = 0;

    // Shortcut statistics over the applicable instances.
    std::uint64_t shortcut_applicable = 0;
    std::uint64_t shortcut_accepted = 0;
    std::uint64_t shortcut_matches_honest = 0;
    std::uint64_t shortcut_max_ops = 0;
};

// Walks every unit of Z*_N (N <= 10^4). Needs the trapdoor.
CharacterizeReport characterize_exhaustive(const Params& pp, std::uint64_t t,
                                           ExecMode mode = ExecMode::open_mp);

// Samples `samples` hash-derived bases from seed-derived inputs.
CharacterizeReport characterize_sampled(const Params& pp, std::uint64_t t,
                                        std::uint64_t samples, std::uint64_t seed,
                                        ExecMode mode = ExecMode::open_mp);

}  // namespace vdflab::two_square

#endif
