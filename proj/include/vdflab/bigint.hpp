#ifndef VDFLAB_BIGINT_HPP
#define VDFLAB_BIGINT_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace vdflab {

using Bigint = boost::multiprecision::cpp_int;
using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Number of significant bits; 0 for the value 0.
unsigned bit_length(const Bigint& v);

// Lowercase big-endian hex, no leading zeros ("0" for zero).
std::string to_hex(const Bigint& v);

// Parses the output of to_hex. Throws CorruptElement on non-hex input.
Bigint from_hex(std::string_view s);

// Fixed-width big-endian byte encoding. Throws Error if v needs more
// than `width` bytes.
Bytes to_bytes_be(const Bigint& v, std::size_t width);

Bigint from_bytes_be(ByteView bytes);

Bytes bytes_of_string(std::string_view s);

// Deterministic random source. All randomness in the lab flows through
// instances of this class so a single 64-bit seed reproduces a run exactly.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 2^nbits).
    Bigint random_bits(unsigned nbits);

    // Uniform in [2^(nbits-1), 2^nbits): exactly nbits bits.
    Bigint random_with_msb(unsigned nbits);

    // Uniform in [0, bound) by rejection.
    Bigint random_below(const Bigint& bound);

  private:
    std::mt19937_64 engine_;
};

// Derives an independent sub-seed for trial `index` of a run seeded with
// `master`. Used by the experiment drivers so that per-trial results do not
// depend on how trials are scheduled across threads.
std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t index);

// Miller-Rabin with `rounds` random witnesses. Deterministic: the witness
// stream is seeded from the candidate itself, so repeated calls agree.
bool is_probable_prime(const Bigint& n, unsigned rounds = 40);

}  // namespace vdflab

#endif
