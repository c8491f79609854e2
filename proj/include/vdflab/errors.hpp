#ifndef VDFLAB_ERRORS_HPP
#define VDFLAB_ERRORS_HPP

#include <atomic>
#include <stdexcept>
#include <string>

namespace vdflab {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A randomized search (prime generation, rejection sampling) ran out of
// attempts before finding a valid candidate.
struct SearchExhausted : Error {
    explicit SearchExhausted(const std::string& what) : Error(what) {}
};

// Two group elements from different moduli were combined.
struct MismatchedModuli : Error {
    explicit MismatchedModuli(const std::string& what) : Error(what) {}
};

// An element value violates the unit invariant (gcd != 1 or out of range).
struct CorruptElement : Error {
    explicit CorruptElement(const std::string& what) : Error(what) {}
};

// An operation needing the factorization was called on a public-only modulus.
struct MissingTrapdoor : Error {
    explicit MissingTrapdoor(const std::string& what) : Error(what) {}
};

// A long-running evaluation observed its cancellation flag.
struct Cancelled : Error {
    Cancelled() : Error("evaluation cancelled") {}
};

// Cooperative cancellation for long squaring chains. The flag is owned by
// the caller; evaluators poll it every kCancelCheckInterval squarings.
using CancelFlag = std::atomic<bool>;

inline constexpr std::uint64_t kCancelCheckInterval = 1u << 16;

inline void check_cancel(const CancelFlag* flag, std::uint64_t step) {
    if (flag != nullptr && step % kCancelCheckInterval == 0 &&
        flag->load(std::memory_order_relaxed)) {
        throw Cancelled();
    }
}

}  // namespace vdflab

#endif
