#pragma once

#include <cstdint>
#include <random>

namespace treelift {

// Deterministic random source. mt19937_64 output is pinned by the standard,
// but the std::*_distribution adapters are not, so the mappings to doubles
// and bounded ints are done by hand here. Identical seeds give identical
// streams on every platform; reports rely on that.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [-1, 1].
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

    // Uniform in {0, ..., n-1}, rejection-sampled to avoid modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace treelift
