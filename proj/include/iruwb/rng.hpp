#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace iruwb {

// Small fixed-algorithm PRNG so that streams are identical across platforms
// and standard-library versions. xoshiro256++ seeded through splitmix64,
// the usual pairing.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // Independent stream for one unit of work (trial, worker, sample).
    // Keyed by index, not by worker identity, so results do not depend on
    // how work is distributed over threads.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t sm = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
        return Rng(splitmix64(sm));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in (0, 1]; never returns 0 so log() is always safe
    double uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in {1, ..., n}
    int uniform_index(int n) {
        return 1 + static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
    }

    bool coin() { return (next_u64() & 1u) != 0; }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    double normal(double mean = 0.0, double stddev = 1.0) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u, v, s;
        do {
            u = uniform(-1.0, 1.0);
            v = uniform(-1.0, 1.0);
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return mean + stddev * u * f;
    }

    double lognormal(double log_mean, double log_std) {
        return std::exp(normal(log_mean, log_std));
    }

    // Marsaglia-Tsang; shapes < 1 boosted through Gamma(shape+1) * U^(1/shape)
    double gamma(double shape, double scale = 1.0) {
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
        }
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4]{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace iruwb
