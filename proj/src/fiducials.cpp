#include <cmath>
#include <numbers>

#include "micbench/sic.hpp"

namespace micbench {

namespace {

// d = 2: the state with Bloch vector (1,1,1)/sqrt(3); its WH orbit is the
// regular tetrahedron inscribed in the Bloch sphere.
ComplexVector qubit_fiducial() {
    const double bz = 1.0 / std::sqrt(3.0);
    ComplexVector v(2);
    v(0) = std::sqrt((1.0 + bz) / 2.0);
    v(1) = std::polar(std::sqrt((1.0 - bz) / 2.0), std::numbers::pi / 4.0);
    return v;
}

// d = 3: (0, 1, -1)/sqrt(2), the qutrit fiducial with exact entries.
ComplexVector qutrit_fiducial() {
    ComplexVector v(3);
    v(0) = 0.0;
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return v;
}

// d = 4 and d = 5: numerical fiducials converged to machine precision by
// the frame-potential search in this library (seeded, reproducible) and
// validated by verify_sic at 1e-10 in the test suite.
ComplexVector dim4_fiducial() {
    const double re[4] = {0.31222033921536829, 0.10882951557580577, -0.11973018928887924,
                          -0.4085159236341665};
    const double im[4] = {-0.68223590106568532, -0.16921283601464332, -0.3825494930073246,
                          -0.26273769248960421};
    ComplexVector v(4);
    for (int k = 0; k < 4; ++k) v(k) = {re[k], im[k]};
    return v;
}

ComplexVector dim5_fiducial() {
    const double re[5] = {0.15692098408471544, -0.18193094447719516, -0.36734504736217799,
                          -0.33401994522861117, -0.2939150755299697};
    const double im[5] = {0.068928061733892293, -0.43775571706548111, -0.13406612293667639,
                          -0.62318171514042409, -0.081662941516638499};
    ComplexVector v(5);
    for (int k = 0; k < 5; ++k) v(k) = {re[k], im[k]};
    return v;
}

}  // namespace

Fiducial known_fiducial(Eigen::Index d) {
    switch (d) {
        case 1: {
            ComplexVector v(1);
            v(0) = 1.0;
            return Fiducial(v);  // trivial SIC
        }
        case 2:
            return Fiducial(qubit_fiducial());
        case 3:
            return Fiducial(qutrit_fiducial());
        case 4:
            return Fiducial(dim4_fiducial());
        case 5:
            return Fiducial(dim5_fiducial());
        default:
            throw UnknownDimension("no registered fiducial for d = " + std::to_string(d));
    }
}

std::vector<Eigen::Index> known_fiducial_dims() { return {1, 2, 3, 4, 5}; }

}  // namespace micbench
