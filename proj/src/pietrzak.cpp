#include "vdflab/pietrzak.hpp"

#include <boost/integer/common_factor_rt.hpp>
#include <cmath>

namespace vdflab::pietrzak {

bool is_power_of_two(std::uint64_t t) { return t != 0 && (t & (t - 1)) == 0; }

Bigint derive_challenge(const Params& pp, const GroupElement& g,
                        const GroupElement& y, const GroupElement& mu,
                        std::uint64_t t) {
    const std::size_t w = pp.modulus.element_width_bytes();
    Bytes seed = bin(g, w);
    append(seed, bin(y, w));
    append(seed, bin(mu, w));
    append(seed, bin(t, kTWidthBytes));
    // lambda raw bits, then shifted into [1, 2^lambda].
    const std::size_t nbytes = (pp.lambda_bits + 7) / 8;
    Bigint r = from_bytes_be(xof_bytes(kTagChallenge, seed, nbytes));
    r >>= (8 * nbytes - pp.lambda_bits);
    return r + 1;
}

EvalResult eval(const Params& pp, ByteView x, std::uint64_t t,
                const CancelFlag* cancel) {
    if (!is_power_of_two(t) || t < 2) {
        throw Error("pietrzak eval: T must be a power of two, at least 2");
    }
    GroupElement g = hash_to_group(x, pp.modulus);
    auto [y, ops] = sequential_square(g, t, cancel);
    return {std::move(y), ops};
}

ProveResult prove_core(const Params& pp, const GroupElement& g, std::uint64_t t,
                       const GroupElement& y, const CancelFlag* cancel) {
    if (!is_power_of_two(t) || t < 2) {
        throw Error("pietrzak prove: T must be a power of two, at least 2");
    }
    Transcript transcript;
    transcript.t = t;
    transcript.y = y;
    transcript.lambda_bits = pp.lambda_bits;

    OpCounter ops;
    GroupElement gi = g;
    GroupElement yi = y;
    std::uint64_t ti = t;
    while (ti > 1) {
        const std::uint64_t half = ti / 2;
        GroupElement midpoint = gi;
        for (std::uint64_t s = 1; s <= half; ++s) {
            check_cancel(cancel, s);
            midpoint = square(midpoint, &ops);
        }
        Bigint r = derive_challenge(pp, gi, yi, midpoint, ti);
        gi = mul(pow(gi, r, &ops), midpoint, &ops);
        yi = mul(pow(midpoint, r, &ops), yi, &ops);
        ti = half;
        transcript.mu.push_back(std::move(midpoint));
    }
    if (square(gi, &ops) != yi) {
        throw Error("pietrzak prove: claim y != g^(2^T) (midpoint fold mismatch)");
    }
    return {std::move(transcript), ops};
}

ProveResult prove(const Params& pp, ByteView x, std::uint64_t t,
                  const GroupElement& y, const CancelFlag* cancel) {
    ProveResult result = prove_core(pp, hash_to_group(x, pp.modulus), t, y, cancel);
    result.transcript.x.assign(x.begin(), x.end());
    return result;
}

VerifyOutcome verify_core(const Params& pp, const GroupElement& g,
                          const Transcript& transcript) {
    using Status = VerifyOutcome::Status;
    if (!is_power_of_two(transcript.t) || transcript.t < 2) {
        return {Status::malformed, "T must be a power of two, at least 2", {}};
    }
    const auto levels = static_cast<std::size_t>(std::llround(std::log2(transcript.t)));
    if (transcript.mu.size() != levels) {
        return {Status::malformed, "proof must hold exactly log2(T) elements", {}};
    }
    if (transcript.lambda_bits != pp.lambda_bits) {
        return {Status::malformed, "transcript and parameters disagree on lambda", {}};
    }
    const Bigint& n = pp.modulus.n();
    auto is_unit = [&n](const GroupElement& e) {
        return e.modulus() == n && e.value() > 0 && e.value() < n &&
               boost::integer::gcd(e.value(), n) == 1;
    };
    if (!is_unit(transcript.y)) {
        return {Status::malformed, "y is not a unit of the modulus", {}};
    }
    for (const GroupElement& m : transcript.mu) {
        if (!is_unit(m)) {
            return {Status::malformed, "proof element is not a unit", {}};
        }
    }

    OpCounter ops;
    GroupElement gi = g;
    GroupElement yi = transcript.y;
    std::uint64_t ti = transcript.t;
    for (const GroupElement& midpoint : transcript.mu) {
        Bigint r = derive_challenge(pp, gi, yi, midpoint, ti);
        gi = mul(pow(gi, r, &ops), midpoint, &ops);
        yi = mul(pow(midpoint, r, &ops), yi, &ops);
        ti /= 2;
    }
    if (square(gi, &ops) == yi) return {Status::accepted, "", ops};
    return {Status::rejected, "final squaring check failed", ops};
}

VerifyOutcome verify(const Params& pp, const Transcript& transcript) {
    return verify_core(pp, hash_to_group(transcript.x, pp.modulus), transcript);
}

}  // namespace vdflab::pietrzak
