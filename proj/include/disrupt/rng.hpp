#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>

namespace disrupt {

// splitmix64 (Steele/Lea/Vigna). The sequence is fixed by the algorithm, not by
// a library implementation, so seeded corpora and matches reproduce bit-for-bit
// on any platform. Generator manifests record this as rng = splitmix64/v1.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1), 53 random bits
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0,n), n >= 1 (Lemire's multiply-shift with rejection)
    uint64_t next_below(uint64_t n) {
        assert(n > 0);
        uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<uint64_t>(m);
        if (lo < n) {
            uint64_t t = (0 - n) % n;
            while (lo < t) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    // standard normal via Box-Muller; the spare deviate is cached
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // Poisson via Knuth's product of uniforms; fine for the small means used here
    uint64_t next_poisson(double mean) {
        assert(mean >= 0.0 && mean < 700.0);
        if (mean == 0.0) return 0;
        const double limit = std::exp(-mean);
        uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_double();
        } while (p > limit);
        return k - 1;
    }

private:
    uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Derives an independent child seed for stream `stream` of a base seed.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
    g.next_u64();
    return g.next_u64();
}

}  // namespace disrupt
