#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tbw {

// Deterministic random source. The mt19937_64 engine output is pinned by the
// standard; the double conversions below are spelled out by hand because the
// std:: distributions are implementation-defined and would break bit-exact
// reproducibility of Q-tables and logs across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform on [0, 1)
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // uniform on [-1, 1)
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // uniform integer in [0, n)
    int uniform_int(int n) {
        // rejection sampling keeps the draw unbiased
        const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % static_cast<std::uint64_t>(n));
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= bound);
        return static_cast<int>(x % static_cast<std::uint64_t>(n));
    }

    // standard normal via Box-Muller (pair cached)
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// splitmix64: derives well-separated substream seeds from one master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + stream * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Fixed substream ids, so every run derives the same independent streams.
enum class Stream : std::uint64_t {
    Reset = 1,
    Explore = 2,
    Gust = 3,
    Noise = 4,
};

inline std::uint64_t derive_seed(std::uint64_t master, Stream s) {
    return derive_seed(master, static_cast<std::uint64_t>(s));
}

} // namespace tbw
