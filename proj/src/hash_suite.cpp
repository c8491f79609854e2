#include "vdflab/hash_suite.hpp"

#include <openssl/evp.h>

#include <boost/integer/common_factor_rt.hpp>
#include <memory>

namespace vdflab {

namespace mp = boost::multiprecision;

Bytes bin(const Bigint& v, std::size_t width) { return to_bytes_be(v, width); }

Bytes bin(const GroupElement& e, std::size_t width) {
    return to_bytes_be(e.value(), width);
}

Bytes bin(std::uint64_t v, std::size_t width) {
    return to_bytes_be(Bigint(v), width);
}

void append(Bytes& dst, ByteView src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

Bytes xof_bytes(std::string_view tag, ByteView seed, std::size_t nbytes) {
    Bytes out(nbytes, 0);
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1) {
        throw Error("xof: SHAKE256 init failed");
    }
    const std::uint8_t separator = 0;
    if (EVP_DigestUpdate(ctx.get(), tag.data(), tag.size()) != 1 ||
        EVP_DigestUpdate(ctx.get(), &separator, 1) != 1) {
        throw Error("xof: absorb failed");
    }
    if (!seed.empty() &&
        EVP_DigestUpdate(ctx.get(), seed.data(), seed.size()) != 1) {
        throw Error("xof: absorb failed");
    }
    if (nbytes > 0 && EVP_DigestFinalXOF(ctx.get(), out.data(), nbytes) != 1) {
        throw Error("xof: squeeze failed");
    }
    return out;
}

Bigint xof_expand(std::string_view tag, ByteView seed, std::size_t nbits) {
    if (nbits < 1) throw Error("xof_expand: nbits must be positive");
    std::size_t nbytes = (nbits + 7) / 8;
    Bigint v = from_bytes_be(xof_bytes(tag, seed, nbytes));
    v >>= (8 * nbytes - nbits);
    mp::bit_set(v, static_cast<unsigned>(nbits - 1));
    return v;
}

namespace {

// Counter-suffixed seed for rejection resampling.
Bytes with_counter(ByteView seed, std::uint32_t counter, std::size_t counter_width) {
    Bytes out(seed.begin(), seed.end());
    append(out, bin(std::uint64_t{counter}, counter_width));
    return out;
}

}  // namespace

GroupElement hash_to_group(ByteView x, const GroupModulus& m) {
    const std::size_t nbits = m.bit_length() + 64;
    for (std::uint32_t counter = 0; counter < (1u << 16); ++counter) {
        Bigint candidate = xof_expand(kTagGroup, with_counter(x, counter, 2), nbits);
        candidate %= m.n();
        if (candidate == 0) continue;
        if (boost::integer::gcd(candidate, m.n()) != 1) continue;
        return unchecked_element(candidate, m.n());
    }
    throw SearchExhausted("hash_to_group: no unit found in 2^16 resamples");
}

Bigint hash_to_prime(ByteView seed, unsigned bits) {
    if (bits < 4) throw Error("hash_to_prime: need at least 4 bits");
    for (std::uint32_t counter = 0; counter < (1u << 20); ++counter) {
        Bigint candidate =
            xof_expand(kTagPrime, with_counter(seed, counter, 4), bits);
        candidate |= 1;
        if (is_probable_prime(candidate)) return candidate;
    }
    throw SearchExhausted("hash_to_prime: counter space exhausted");
}

MaximalOrderHash hash_to_maximal_order(ByteView x, std::uint64_t t,
                                       unsigned delta, const GroupModulus& m) {
    if (t + delta + 2 < 3) throw Error("hash_to_maximal_order: T+delta+2 < 3");
    const std::size_t k = static_cast<std::size_t>(t) + delta + 2;
    const std::size_t body_bytes = (k + 7) / 8;
    for (std::uint32_t counter = 0; counter < (1u << 16); ++counter) {
        // One squeeze yields the k-bit body plus one selector byte.
        Bytes stream =
            xof_bytes(kTagMaximalOrder, with_counter(x, counter, 2), body_bytes + 1);
        const bool select_five = (stream.back() & 1) != 0;
        stream.pop_back();
        Bigint raw = from_bytes_be(stream);
        raw >>= (8 * body_bytes - k);
        mp::bit_set(raw, static_cast<unsigned>(k - 1));
        // Residues ≡ 3 or 5 (mod 8) have order exactly 2^(k-2) in Z*_{2^k}.
        raw = (raw >> 3 << 3) | (select_five ? 5 : 3);
        Bigint reduced = raw % m.n();
        if (reduced == 0) continue;
        if (boost::integer::gcd(reduced, m.n()) != 1) continue;
        return {std::move(raw), unchecked_element(reduced, m.n()), counter};
    }
    throw SearchExhausted("hash_to_maximal_order: no unit found in 2^16 resamples");
}

}  // namespace vdflab
