#ifndef SCPS_RNG_HPP
#define SCPS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace scps {

// Deterministic, platform-independent generator (splitmix64). All sampling
// routines below are written against it directly so that instances and
// simulations reproduce bit-identically across compilers, unlike the
// implementation-defined std:: distributions.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  private:
    std::uint64_t state_;
};

// Derives an independent per-run stream from a master seed.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 mixer(master ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return mixer.next_u64();
}

inline double sample_normal(SplitMix64& rng) {
    // Marsaglia polar method; rejection loop is deterministic given the stream.
    while (true) {
        double u = 2.0 * rng.next_double() - 1.0;
        double v = 2.0 * rng.next_double() - 1.0;
        double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

inline double sample_gamma(SplitMix64& rng, double shape) {
    if (shape <= 0.0) throw std::invalid_argument("gamma shape must be > 0");
    if (shape < 1.0) {
        // Boost to shape+1 and scale back (Marsaglia & Tsang).
        double u = rng.next_double();
        while (u <= 0.0) u = rng.next_double();
        return sample_gamma(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x = sample_normal(rng);
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = rng.next_double();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

inline double sample_beta(SplitMix64& rng, double a, double b) {
    double x = sample_gamma(rng, a);
    double y = sample_gamma(rng, b);
    return x / (x + y);
}

} // namespace scps

#endif // SCPS_RNG_HPP
