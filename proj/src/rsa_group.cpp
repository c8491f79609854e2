#include "vdflab/rsa_group.hpp"

#include <boost/integer/common_factor_rt.hpp>
#include <boost/integer/mod_inverse.hpp>

namespace vdflab {

namespace mp = boost::multiprecision;

GroupModulus::GroupModulus(Bigint n, std::optional<Trapdoor> trapdoor)
    : n_(std::move(n)), bits_(vdflab::bit_length(n_)), trapdoor_(std::move(trapdoor)) {}

GroupModulus GroupModulus::from_primes(const Bigint& p, const Bigint& q) {
    if (p == q) throw Error("from_primes: p and q must be distinct");
    if (p < 5 || q < 5) throw Error("from_primes: primes too small");
    if (!is_probable_prime(p) || !is_probable_prime(q)) {
        throw Error("from_primes: factor fails primality test");
    }
    if (!is_probable_prime((p - 1) / 2) || !is_probable_prime((q - 1) / 2)) {
        throw Error("from_primes: factor is not a safe prime");
    }
    int diff = static_cast<int>(vdflab::bit_length(p)) -
               static_cast<int>(vdflab::bit_length(q));
    if (diff < -1 || diff > 1) {
        throw Error("from_primes: factor bit lengths differ by more than 1");
    }
    Trapdoor td;
    td.p = p;
    td.q = q;
    td.p_prime = (p - 1) / 2;
    td.q_prime = (q - 1) / 2;
    td.phi = (p - 1) * (q - 1);
    td.lambda = boost::integer::lcm(Bigint(p - 1), Bigint(q - 1));
    return GroupModulus(p * q, std::move(td));
}

GroupModulus GroupModulus::public_only(const Bigint& n) {
    if (n < 15 || n % 2 == 0) {
        throw Error("public_only: modulus must be an odd composite >= 15");
    }
    return GroupModulus(n, std::nullopt);
}

const Trapdoor& GroupModulus::trapdoor() const {
    if (!trapdoor_) throw MissingTrapdoor("modulus carries no trapdoor");
    return *trapdoor_;
}

GroupElement make_element(const GroupModulus& m, const Bigint& value) {
    Bigint v = value % m.n();
    if (v < 0) v += m.n();
    if (v == 0) throw CorruptElement("residue 0 is not a unit");
    if (boost::integer::gcd(v, m.n()) != 1) {
        throw CorruptElement("residue shares a factor with the modulus");
    }
    return GroupElement(std::move(v), m.n());
}

GroupElement identity(const GroupModulus& m) {
    return GroupElement(Bigint(1), m.n());
}

GroupElement unchecked_element(const Bigint& value, const Bigint& n) {
    return GroupElement(value, n);
}

namespace {

void require_same_modulus(const GroupElement& a, const GroupElement& b) {
    if (a.modulus() != b.modulus()) {
        throw MismatchedModuli("operands bound to different moduli");
    }
}

}  // namespace

GroupElement mul(const GroupElement& a, const GroupElement& b, OpCounter* ops) {
    require_same_modulus(a, b);
    if (ops) ops->multiplications++;
    return unchecked_element(a.value() * b.value() % a.modulus(), a.modulus());
}

GroupElement square(const GroupElement& a, OpCounter* ops) {
    if (ops) ops->squarings++;
    return unchecked_element(a.value() * a.value() % a.modulus(), a.modulus());
}

GroupElement inverse(const GroupElement& a, OpCounter* ops) {
    if (ops) ops->inversions++;
    Bigint inv = boost::integer::mod_inverse(a.value(), a.modulus());
    if (inv == 0) throw CorruptElement("inverse of non-unit");
    return unchecked_element(std::move(inv), a.modulus());
}

GroupElement pow(const GroupElement& a, const Bigint& e, OpCounter* ops) {
    if (e < 0) throw Error("pow: negative exponent");
    if (e == 0) return unchecked_element(Bigint(1), a.modulus());
    GroupElement acc = a;
    for (int i = static_cast<int>(mp::msb(e)) - 1; i >= 0; --i) {
        acc = square(acc, ops);
        if (mp::bit_test(e, static_cast<unsigned>(i))) acc = mul(acc, a, ops);
    }
    return acc;
}

std::pair<GroupElement, OpCounter> sequential_square(const GroupElement& g,
                                                     std::uint64_t t,
                                                     const CancelFlag* cancel) {
    OpCounter ops;
    GroupElement acc = g;
    for (std::uint64_t i = 1; i <= t; ++i) {
        check_cancel(cancel, i);
        acc = square(acc, &ops);
    }
    return {std::move(acc), ops};
}

GroupElement trapdoor_pow(const GroupModulus& m, const GroupElement& g,
                          std::uint64_t t, unsigned addend, OpCounter* ops) {
    const Trapdoor& td = m.trapdoor();
    Bigint e = mp::powm(Bigint(2), Bigint(t), td.phi);
    e = (e + addend) % td.phi;
    return pow(g, e, ops);
}

Bigint element_order(const GroupModulus& m, const GroupElement& g) {
    const Trapdoor& td = m.trapdoor();
    // lambda(N) factors over {2, p', q'} for safe-prime moduli.
    Bigint primes[3] = {2, td.p_prime, td.q_prime};
    Bigint order = td.lambda;
    for (const Bigint& r : primes) {
        while (order % r == 0 &&
               mp::powm(g.value(), order / r, m.n()) == 1) {
            order /= r;
        }
    }
    return order;
}

Bigint generate_safe_prime(unsigned bits, Rng& rng, unsigned mr_rounds,
                           std::uint64_t max_attempts) {
    if (bits < 3) throw Error("generate_safe_prime: need at least 3 bits");
    if (max_attempts == 0) {
        // Safe primes of b bits have density ~ c/b^2; this bound makes a
        // miss astronomically unlikely while still terminating.
        max_attempts = 2048ull * bits * bits;
    }
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        Bigint candidate = rng.random_with_msb(bits);
        // candidate ≡ 3 (mod 4) keeps (candidate-1)/2 odd.
        candidate |= 3;
        if (!is_probable_prime((candidate - 1) / 2, mr_rounds)) continue;
        if (!is_probable_prime(candidate, mr_rounds)) continue;
        return candidate;
    }
    throw SearchExhausted("generate_safe_prime: no safe prime of " +
                          std::to_string(bits) + " bits found in " +
                          std::to_string(max_attempts) + " attempts");
}

GroupModulus setup_modulus(unsigned lambda_param, Rng& rng, unsigned factor) {
    if (lambda_param < 8) {
        throw Error("setup_modulus: lambda_param must be at least 8");
    }
    if (factor < 1) throw Error("setup_modulus: factor must be positive");
    unsigned bits = factor * lambda_param;
    Bigint p = generate_safe_prime(bits, rng);
    Bigint q = generate_safe_prime(bits, rng);
    while (q == p) q = generate_safe_prime(bits, rng);
    return GroupModulus::from_primes(p, q);
}

}  // namespace vdflab
