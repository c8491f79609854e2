#ifndef VDFLAB_HASH_SUITE_HPP
#define VDFLAB_HASH_SUITE_HPP

#include <cstdint>
#include <string_view>

#include "vdflab/bigint.hpp"
#include "vdflab/rsa_group.hpp"

namespace vdflab {

// Domain tags separating the hash streams. Identical payloads hashed under
// different tags are unrelated.
inline constexpr std::string_view kTagGroup = "vdflab.v1.hash-to-group";
inline constexpr std::string_view kTagPrime = "vdflab.v1.hash-to-prime";
inline constexpr std::string_view kTagMaximalOrder = "vdflab.v1.hash-to-maximal-order";
inline constexpr std::string_view kTagChallenge = "vdflab.v1.halving-challenge";

// Identifier of the XOF backing every derivation, recorded in parameter
// files so transcripts stay portable.
inline constexpr std::string_view kXofName = "shake256";

// Fixed byte width used for delay parameters in hash inputs.
inline constexpr std::size_t kTWidthBytes = 8;

// Fixed-width big-endian encoding of a value; concatenating such encodings
// is the transcript byte convention everywhere in the lab.
Bytes bin(const Bigint& v, std::size_t width);
Bytes bin(const GroupElement& e, std::size_t width);
Bytes bin(std::uint64_t v, std::size_t width);

// Appends src to dst (concatenation helper for hash inputs).
void append(Bytes& dst, ByteView src);

// Raw SHAKE256 squeeze of `nbytes` bytes over tag || 0x00 || seed.
Bytes xof_bytes(std::string_view tag, ByteView seed, std::size_t nbytes);

// Deterministic expansion to an integer of exactly `nbits` bits: the top
// bit is forced to 1. nbits >= 1.
Bigint xof_expand(std::string_view tag, ByteView seed, std::size_t nbits);

// Hash onto the units of Z*_N: expand to bitlen(N)+64 bits, reduce mod N,
// and resample with an appended 2-byte counter until the result is a unit.
GroupElement hash_to_group(ByteView x, const GroupModulus& m);

// Deterministic prime derivation: counter-mode rejection sampling with the
// low bit forced to 1 and Miller-Rabin as the filter. bits >= 4.
Bigint hash_to_prime(ByteView seed, unsigned bits);

struct MaximalOrderHash {
    Bigint raw;           // the (T+delta+2)-bit integer, ≡ 3 or 5 (mod 8)
    GroupElement element; // raw reduced mod N, unit-rejection-resampled
    std::uint32_t resamples = 0;
};

// Hash into the maximal-order residues of Z*_{2^(T+delta+2)}: the output's
// low three bits are overwritten to 011 or 101 (selected by one extra hash
// bit), which pins the 2-adic order to 2^(T+delta). The reduction mod N is
// resampled until it lands on a unit.
MaximalOrderHash hash_to_maximal_order(ByteView x, std::uint64_t t,
                                       unsigned delta, const GroupModulus& m);

}  // namespace vdflab

#endif
