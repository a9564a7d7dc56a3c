#pragma once

#include <cmath>
#include <cstdint>

namespace zetabound {

// Counter-based generator: value depends only on (seed, stream, index), so
// randomized suites reproduce exactly regardless of evaluation order or
// thread count.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : base_(mix(seed ^ mix(stream * 0x9e3779b97f4a7c15ULL))) {}

    std::uint64_t bits(std::uint64_t index) const {
        return mix(base_ + (index + 1) * 0x9e3779b97f4a7c15ULL);
    }

    // Uniform in [0, 1).
    double uniform(std::uint64_t index) const {
        return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
    }

    double uniform(std::uint64_t index, double lo, double hi) const {
        return lo + (hi - lo) * uniform(index);
    }

    // Log-uniform over [lo, hi], lo > 0.
    double log_uniform(std::uint64_t index, double lo, double hi) const {
        return std::exp(uniform(index, std::log(lo), std::log(hi)));
    }

    // Integer in [lo, hi] inclusive.
    long integer(std::uint64_t index, long lo, long hi) const {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(bits(index) % span);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t base_;
};

} // namespace zetabound
