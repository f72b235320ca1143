#ifndef LOCALGS_RNG_HPP
#define LOCALGS_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace localgs {

/// Deterministic uniform sampling on top of std::mt19937_64, whose output
/// sequence is pinned by the standard. std::uniform_int_distribution is
/// avoided on purpose: its mapping differs between standard libraries, and
/// generated instances must be identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound); bound >= 1. Unbiased via rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        std::uint64_t x;
        do {
            x = engine_();
        } while (x < threshold);
        return x % bound;
    }

    /// Uniform integer in [lo, hi], inclusive.
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    /// True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    /// Decorrelated child seed for per-index substreams (splitmix64 step).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace localgs

#endif
