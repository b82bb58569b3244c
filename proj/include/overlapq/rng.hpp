#pragma once

#include <cstdint>

namespace overlapq {

namespace detail {

// SplitMix64 finalizer.  Invertible 64-bit mixer; chaining it over the key
// components gives a counter-based generator, so a draw depends only on
// (seed, stream, counter) and never on scheduling order.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double to_unit(std::uint64_t bits) {
    // 53 mantissa bits, offset so the result is strictly inside (0,1).
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace detail

// Seedable, splittable uniform stream.  Streams with distinct (seed, stream)
// keys are independent; a single stream instance is not safe to share across
// concurrent callers, but constructing one per worker is free.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(detail::mix64(seed ^ detail::mix64(stream * 0x9E3779B97F4A7C15ULL + 1))),
          counter_(0) {}

    // Uniform in (0,1), advancing the stream.
    double next() { return detail::to_unit(detail::mix64(key_ ^ counter_++)); }

    // Uniform at an absolute position (counter index, dimension) without
    // touching the stream state.  The simulator keys draws by customer
    // index through this.
    double at(std::uint64_t index, std::uint64_t dim) const {
        return detail::to_unit(detail::mix64(key_ ^ detail::mix64(index * 4 + dim)));
    }

    void jump_to(std::uint64_t counter) { counter_ = counter; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace overlapq
