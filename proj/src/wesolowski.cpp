#include "vdflab/wesolowski.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace vdflab::wesolowski {

namespace mp = boost::multiprecision;

Bigint derive_ell(const Params& pp, const GroupElement& g, const GroupElement& y,
                  std::uint64_t t) {
    const std::size_t w = pp.modulus.element_width_bytes();
    Bytes seed = bin(g, w);
    append(seed, bin(y, w));
    if (pp.include_t_in_hash) append(seed, bin(t, kTWidthBytes));
    return hash_to_prime(seed, pp.ell_bits);
}

GroupElement proof_longdiv(const GroupElement& g, std::uint64_t t, const Bigint& ell,
                           OpCounter* ops, const CancelFlag* cancel) {
    if (ell < 3) throw Error("proof_longdiv: ell must be at least 3");
    GroupElement acc = unchecked_element(Bigint(1), g.modulus());
    Bigint remainder = 1;
    for (std::uint64_t step = 1; step <= t; ++step) {
        check_cancel(cancel, step);
        remainder <<= 1;
        const bool quotient_bit = remainder >= ell;
        if (quotient_bit) remainder -= ell;
        acc = square(acc, ops);
        if (quotient_bit) acc = mul(acc, g, ops);
    }
    return acc;
}

EvalResult eval_core(const GroupElement& g, std::uint64_t t, const Bigint& ell,
                     const CancelFlag* cancel) {
    auto [y, ops] = sequential_square(g, t, cancel);
    OpCounter proof_ops;
    GroupElement pi = proof_longdiv(g, t, ell, &proof_ops, cancel);
    ops += proof_ops;
    Transcript transcript;
    transcript.t = t;
    transcript.y = y;
    transcript.pi = pi;
    transcript.ell = ell;
    return {std::move(transcript), ops};
}

EvalResult eval(const Params& pp, ByteView x, std::uint64_t t,
                const CancelFlag* cancel) {
    if (t < 1) throw Error("wesolowski eval: T must be at least 1");
    GroupElement g = hash_to_group(x, pp.modulus);
    auto [y, ops] = sequential_square(g, t, cancel);
    Bigint ell = derive_ell(pp, g, y, t);
    OpCounter proof_ops;
    GroupElement pi = proof_longdiv(g, t, ell, &proof_ops, cancel);
    ops += proof_ops;
    Transcript transcript;
    transcript.x.assign(x.begin(), x.end());
    transcript.t = t;
    transcript.y = std::move(y);
    transcript.pi = std::move(pi);
    transcript.ell = std::move(ell);
    transcript.include_t_in_hash = pp.include_t_in_hash;
    return {std::move(transcript), ops};
}

namespace {

bool is_unit(const GroupModulus& m, const GroupElement& e) {
    return e.modulus() == m.n() && e.value() > 0 && e.value() < m.n() &&
           boost::integer::gcd(e.value(), m.n()) == 1;
}

VerifyOutcome malformed(const std::string& reason) {
    return {VerifyOutcome::Status::malformed, reason, {}};
}

VerifyOutcome rejected(const std::string& reason, OpCounter ops) {
    return {VerifyOutcome::Status::rejected, reason, ops};
}

}  // namespace

VerifyOutcome verify_core(const GroupModulus& m, const GroupElement& g,
                          const GroupElement& y, const GroupElement& pi,
                          const Bigint& ell, std::uint64_t t) {
    if (!is_unit(m, y)) return malformed("y is not a unit of the modulus");
    if (!is_unit(m, pi)) return malformed("pi is not a unit of the modulus");
    if (ell < 3 || !is_probable_prime(ell)) return malformed("ell is not prime");

    OpCounter ops;
    // r = 2^T mod ell over the small integers; not a group operation.
    const Bigint r = mp::powm(Bigint(2), Bigint(t), ell);

    // Simultaneous double exponentiation pi^ell * g^r (Shamir's trick):
    // one squaring per challenge bit plus at most one multiplication.
    GroupElement pig = mul(pi, g, &ops);
    GroupElement acc = unchecked_element(Bigint(1), m.n());
    for (int i = static_cast<int>(mp::msb(ell)); i >= 0; --i) {
        acc = square(acc, &ops);
        const bool eb = mp::bit_test(ell, static_cast<unsigned>(i));
        const bool rb = mp::bit_test(r, static_cast<unsigned>(i));
        if (eb && rb) acc = mul(acc, pig, &ops);
        else if (eb) acc = mul(acc, pi, &ops);
        else if (rb) acc = mul(acc, g, &ops);
    }
    if (acc == y) return {VerifyOutcome::Status::accepted, "", ops};
    return rejected("pi^ell * g^(2^T mod ell) != y", ops);
}

VerifyOutcome verify(const Params& pp, const Transcript& transcript) {
    if (transcript.t < 1) return malformed("T must be at least 1");
    if (transcript.include_t_in_hash != pp.include_t_in_hash) {
        return malformed("transcript and parameters disagree on the T-in-hash flag");
    }
    if (!is_unit(pp.modulus, transcript.y)) {
        return malformed("y is not a unit of the modulus");
    }
    GroupElement g = hash_to_group(transcript.x, pp.modulus);
    Bigint ell = derive_ell(pp, g, transcript.y, transcript.t);
    if (ell != transcript.ell) {
        return rejected("transcript challenge does not match the derivation", {});
    }
    return verify_core(pp.modulus, g, transcript.y, transcript.pi, ell,
                       transcript.t);
}

}  // namespace vdflab::wesolowski
