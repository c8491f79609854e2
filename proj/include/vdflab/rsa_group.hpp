#ifndef VDFLAB_RSA_GROUP_HPP
#define VDFLAB_RSA_GROUP_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "vdflab/bigint.hpp"
#include "vdflab/errors.hpp"
#include "vdflab/op_counter.hpp"

namespace vdflab {

// Factorization of N together with the derived exponent reducers.
// p_prime = (p-1)/2 and q_prime = (q-1)/2 are themselves prime.
struct Trapdoor {
    Bigint p;
    Bigint q;
    Bigint p_prime;
    Bigint q_prime;
    Bigint phi;      // (p-1)(q-1)
    Bigint lambda;   // lcm(p-1, q-1)
};

// An RSA modulus N = p*q of two distinct safe primes. The trapdoor is
// optional: public-only instances support every operation except the
// fast-evaluation oracle and order computation.
class GroupModulus {
  public:
    // Validates the safe-prime invariants: p != q, both prime, (p-1)/2 and
    // (q-1)/2 prime, bit lengths differing by at most 1.
    static GroupModulus from_primes(const Bigint& p, const Bigint& q);

    // A modulus loaded from public parameters; no invariant can be checked
    // beyond N being odd and composite-sized.
    static GroupModulus public_only(const Bigint& n);

    const Bigint& n() const { return n_; }
    unsigned bit_length() const { return bits_; }
    std::size_t element_width_bytes() const { return (bits_ + 7) / 8; }

    bool has_trapdoor() const { return trapdoor_.has_value(); }
    const Trapdoor& trapdoor() const;

    friend bool operator==(const GroupModulus& a, const GroupModulus& b) {
        return a.n_ == b.n_;
    }

  private:
    GroupModulus(Bigint n, std::optional<Trapdoor> trapdoor);

    Bigint n_;
    unsigned bits_;
    std::optional<Trapdoor> trapdoor_;
};

// A canonical residue in [1, N-1] coprime to N, bound to its modulus.
class GroupElement {
  public:
    GroupElement() = default;

    const Bigint& value() const { return value_; }
    const Bigint& modulus() const { return modulus_; }

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.value_ == b.value_ && a.modulus_ == b.modulus_;
    }

  private:
    friend GroupElement make_element(const GroupModulus& m, const Bigint& value);
    friend GroupElement identity(const GroupModulus& m);
    friend GroupElement unchecked_element(const Bigint& value, const Bigint& n);

    GroupElement(Bigint value, Bigint modulus)
        : value_(std::move(value)), modulus_(std::move(modulus)) {}

    Bigint value_;
    Bigint modulus_ = 0;
};

// Canonicalizes `value` mod N and enforces the unit invariant.
// Throws CorruptElement if the residue is 0 or shares a factor with N.
GroupElement make_element(const GroupModulus& m, const Bigint& value);

GroupElement identity(const GroupModulus& m);

// Internal escape hatch for results of arithmetic that is already reduced;
// used by the operation layer only.
GroupElement unchecked_element(const Bigint& value, const Bigint& n);

// Group operations. Each records its cost in `ops` when given one.
// All throw MismatchedModuli when operands live under different N.
GroupElement mul(const GroupElement& a, const GroupElement& b, OpCounter* ops = nullptr);
GroupElement square(const GroupElement& a, OpCounter* ops = nullptr);
GroupElement inverse(const GroupElement& a, OpCounter* ops = nullptr);

// Left-to-right square-and-multiply; e >= 0. e == 0 costs nothing.
GroupElement pow(const GroupElement& a, const Bigint& e, OpCounter* ops = nullptr);

// g^(2^t) by exactly t successive squarings. The returned counter reports
// squarings == t and nothing else. Polls `cancel` every 2^16 squarings.
std::pair<GroupElement, OpCounter> sequential_square(const GroupElement& g,
                                                     std::uint64_t t,
                                                     const CancelFlag* cancel = nullptr);

// g^(2^t + addend) via exponent reduction mod phi(N); time depends on
// bitlen(N) and log t only. addend is 0 or 1.
GroupElement trapdoor_pow(const GroupModulus& m, const GroupElement& g,
                          std::uint64_t t, unsigned addend,
                          OpCounter* ops = nullptr);

// Exact multiplicative order of g, computed by stripping prime factors
// {2, p', q'} from lambda(N) while the power stays 1. Needs the trapdoor.
Bigint element_order(const GroupModulus& m, const GroupElement& g);

// Safe prime search: random candidates with the top bit set and
// candidate ≡ 3 (mod 4), Miller-Rabin on the candidate and (candidate-1)/2.
// Throws SearchExhausted after max_attempts candidates.
Bigint generate_safe_prime(unsigned bits, Rng& rng,
                           unsigned mr_rounds = 40,
                           std::uint64_t max_attempts = 0);

// N = p*q from two distinct safe primes of factor*lambda_param bits each.
GroupModulus setup_modulus(unsigned lambda_param, Rng& rng, unsigned factor = 2);

}  // namespace vdflab

#endif
