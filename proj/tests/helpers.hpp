#pragma once

#include <cmath>
#include <map>

#include "micbench/sampling.hpp"
#include "micbench/sic.hpp"

namespace micbench::testing {

// SIC systems are rebuilt constantly across tests; cache per dimension.
inline const SicSystem& cached_sic(Eigen::Index d) {
    static std::map<Eigen::Index, SicSystem> cache;
    auto it = cache.find(d);
    if (it == cache.end())
        it = cache.emplace(d, sic_from_fiducial(known_fiducial(d), 1e-10)).first;
    return it->second;
}

// Qubit state (I + b . sigma)/2 from a Bloch vector; independent route for
// d = 2 oracles.
inline HermitianOperator qubit_from_bloch(double bx, double by, double bz) {
    ComplexMatrix m(2, 2);
    const std::complex<double> i(0.0, 1.0);
    m(0, 0) = 0.5 * (1.0 + bz);
    m(0, 1) = 0.5 * (bx - i * by);
    m(1, 0) = 0.5 * (bx + i * by);
    m(1, 1) = 0.5 * (1.0 - bz);
    return HermitianOperator(std::move(m));
}

inline Eigen::Vector3d bloch_of(const HermitianOperator& op) {
    const ComplexMatrix& m = op.matrix();
    return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace micbench::testing
