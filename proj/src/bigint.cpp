#include "vdflab/bigint.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include "vdflab/errors.hpp"

namespace vdflab {

namespace mp = boost::multiprecision;

unsigned bit_length(const Bigint& v) {
    if (v == 0) return 0;
    return static_cast<unsigned>(mp::msb(v)) + 1;
}

std::string to_hex(const Bigint& v) {
    if (v == 0) return "0";
    static const char* digits = "0123456789abcdef";
    std::string out;
    Bigint rest = v;
    while (rest != 0) {
        out.push_back(digits[static_cast<unsigned>(rest & 0xf)]);
        rest >>= 4;
    }
    return {out.rbegin(), out.rend()};
}

Bigint from_hex(std::string_view s) {
    if (s.empty()) throw CorruptElement("empty hex string");
    Bigint out = 0;
    for (char c : s) {
        unsigned digit;
        if (c >= '0' && c <= '9') digit = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') digit = static_cast<unsigned>(c - 'a') + 10;
        else if (c >= 'A' && c <= 'F') digit = static_cast<unsigned>(c - 'A') + 10;
        else throw CorruptElement(std::string("invalid hex character '") + c + "'");
        out = (out << 4) | digit;
    }
    return out;
}

Bytes to_bytes_be(const Bigint& v, std::size_t width) {
    if (v < 0) throw Error("to_bytes_be: negative value");
    if (bit_length(v) > 8 * width) {
        throw Error("to_bytes_be: value does not fit in " + std::to_string(width) +
                    " bytes");
    }
    Bytes out(width, 0);
    Bigint rest = v;
    for (std::size_t i = width; i-- > 0 && rest != 0;) {
        out[i] = static_cast<std::uint8_t>(rest & 0xff);
        rest >>= 8;
    }
    return out;
}

Bigint from_bytes_be(ByteView bytes) {
    Bigint out = 0;
    for (std::uint8_t b : bytes) out = (out << 8) | b;
    return out;
}

Bytes bytes_of_string(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

Bigint Rng::random_bits(unsigned nbits) {
    Bigint out = 0;
    unsigned produced = 0;
    while (produced < nbits) {
        out = (out << 64) | engine_();
        produced += 64;
    }
    out >>= (produced - nbits);
    return out;
}

Bigint Rng::random_with_msb(unsigned nbits) {
    Bigint out = random_bits(nbits);
    mp::bit_set(out, nbits - 1);
    return out;
}

Bigint Rng::random_below(const Bigint& bound) {
    if (bound <= 0) throw Error("random_below: bound must be positive");
    unsigned nbits = bit_length(bound);
    while (true) {
        Bigint candidate = random_bits(nbits);
        if (candidate < bound) return candidate;
    }
}

std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 over master ^ golden-ratio-scrambled index.
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

bool is_probable_prime(const Bigint& n, unsigned rounds) {
    if (n < 2) return false;
    // Witnesses come from an engine seeded by the candidate so the test is a
    // pure function of n.
    std::uint64_t seed =
        static_cast<std::uint64_t>(n & 0xffffffffffffffffULL) ^ 0xd6e8feb86659fd93ULL;
    std::mt19937_64 witness_engine(seed);
    return mp::miller_rabin_test(n, rounds, witness_engine);
}

}  // namespace vdflab
