#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace citeproj {

// splitmix64 finalizer. Used for seed mixing so that derived seeds are
// well spread even when the inputs differ in a single bit.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Child seed as a pure function of (master seed, job key, job index).
// Parallel and serial schedules that use the same keys draw the same streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view key,
                                 std::uint64_t index = 0) {
    std::uint64_t s = splitmix64(master ^ fnv1a64(key));
    return splitmix64(s ^ index);
}

// Deterministic generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the sampling helpers below avoid
// std::uniform_*_distribution, whose algorithms are implementation-defined.
// Together they make every seeded draw byte-portable across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t r = engine_();
        while (r > limit) r = engine_();
        return r % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace citeproj
