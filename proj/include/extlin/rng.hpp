#pragma once

#include <cstdint>
#include <random>

namespace extlin {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic across standard libraries: only raw engine output and modulo draws.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(splitmix64(seed) ^ stream)) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform-ish in [0, n); n > 0.
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    /// In [lo, hi].
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::size_t>(hi - lo + 1))); }
    bool coin() { return (engine_() >> 17) & 1; }

private:
    std::mt19937_64 engine_;
};

} // namespace extlin
