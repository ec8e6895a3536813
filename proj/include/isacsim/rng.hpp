#ifndef ISACSIM_RNG_HPP
#define ISACSIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace isacsim {

// Deterministic RNG used everywhere in the library. Distribution transforms
// are implemented by hand so that a (config, seed) pair reproduces the same
// stream on any platform with IEEE doubles, independent of the standard
// library's unspecified distribution algorithms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // Standard normal via Box-Muller; fixed two uniforms per draw.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Derive an independent child stream; `salt` distinguishes purposes.
    // Forking is a function of the original seed only, so the order in which
    // the parent is consumed does not affect child streams.
    Rng fork(std::uint64_t salt) const {
        return Rng(splitmix(seed_ ^ (salt * 0x9e3779b97f4a7c15ULL)));
    }

    std::uint64_t seed() const { return seed_; }

    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

namespace stats {

// Standard normal CDF.
inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.70710678118654752440084436210485);
}

// Inverse standard normal CDF (Wichura's AS 241, double precision).
double norm_ppf(double p);

// Mean of a normal(mean, sd) truncated to [lo, hi].
double truncated_normal_mean(double mean, double sd, double lo, double hi);

// One truncated-normal draw via inverse-CDF sampling; exactly one uniform
// variate is consumed per sample.
double sample_truncated_normal(Rng& rng, double mean, double sd, double lo, double hi);

} // namespace stats

} // namespace isacsim

#endif
