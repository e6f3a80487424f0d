#pragma once

#include "micbench/operators.hpp"
#include "micbench/process.hpp"

namespace micbench {

// Euclidean volumes in hyperarea units of the (d^2-1)-dimensional
// normalized hyperplane; vol_hs_qd in Hilbert-Schmidt units.
struct VolumeReport {
    int d;
    double vol_p_sic;
    double vol_simplex;
    double ratio;       // vol_p_sic / vol_simplex
    double vol_hs_qd;
};

// det Phi_p - (d+1)^{d^2-1}; nonnegative up to numerics, zero iff the MIC
// is a SIC. Determinants go through LU in log space.
double lemma1_margin(const Mic& mic);

// (d-1) - sum of reciprocal non-unit eigenvalues of Phi_p, evaluated as
// d - tr Phi_p^-1; nonnegative, and exactly zero for rank-1 MICs.
double lemma1_reciprocal_margin(const Mic& mic);

// det G_SIC - det G for the MIC-effect Gram; nonnegative, zero iff SIC.
// det G_SIC is evaluated from the closed-form SIC Gram.
double gram_det_margin(const Mic& mic);

// Closed-form SIC Gram: entries (d delta_ij + 1)/(d^2 (d+1)).
GramMatrix closed_form_sic_gram(Eigen::Index d);

// d / Gamma(d^2)
double vol_simplex(Eigen::Index d);

// sqrt((2 pi)^{d(d-1)} / (d^{d^2-2} (d+1)^{d^2-1})) Gamma(1)...Gamma(d) / Gamma(d^2),
// evaluated in log space.
double vol_p_sic(Eigen::Index d);

// sqrt(d) (2 pi)^{d(d-1)/2} Gamma(1)...Gamma(d) / Gamma(d^2)
double hs_volume_qd(Eigen::Index d);

// Metric induced on the simplex by the Hilbert-Schmidt metric in the SIC
// basis: the (d^2-1) x (d^2-1) matrix d(d+1)(I+J).
RealMatrix induced_metric_sic(Eigen::Index d);

VolumeReport volume_report(Eigen::Index d);

}  // namespace micbench
