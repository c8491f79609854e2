#ifndef VDFLAB_OP_COUNTER_HPP
#define VDFLAB_OP_COUNTER_HPP

#include <cstdint>

namespace vdflab {

// Tally of group operations performed by one call. Squarings are counted
// separately from general multiplications because the sequential-effort
// claims of the schemes are stated in squarings.
struct OpCounter {
    std::uint64_t squarings = 0;
    std::uint64_t multiplications = 0;
    std::uint64_t inversions = 0;

    std::uint64_t total() const { return squarings + multiplications + inversions; }

    OpCounter& operator+=(const OpCounter& other) {
        squarings += other.squarings;
        multiplications += other.multiplications;
        inversions += other.inversions;
        return *this;
    }

    friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

}  // namespace vdflab

#endif
