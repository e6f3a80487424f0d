#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "micbench/operators.hpp"

namespace micbench {

// splitmix64 step; used to derive well-separated child seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Order-independent child seed for sample `index` of a run keyed by
// `master`; lets parallel sample evaluation stay deterministic.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    return splitmix64(s);
}

// Deterministic generator with uniform/gaussian draws built from raw engine
// bits, so streams are identical across standard libraries and platforms
// (std::normal_distribution makes no such guarantee).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * uniform();
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> complex_gaussian() { return {gaussian(), gaussian()}; }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Haar-random unit vector (normalized complex Gaussian).
inline ComplexVector random_unit_vector(Eigen::Index d, Rng& rng) {
    ComplexVector v(d);
    for (Eigen::Index k = 0; k < d; ++k) v(k) = rng.complex_gaussian();
    v.normalize();
    return v;
}

}  // namespace micbench
