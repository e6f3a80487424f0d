#pragma once

#include <vector>

#include "micbench/operators.hpp"

namespace micbench {

// A MIC measurement followed by preparation of post state sigma_i on
// outcome i. The post states must be linearly independent so the process
// characterizes downstream measurements uniquely.
class ReferenceProcess {
public:
    ReferenceProcess(Mic mic, std::vector<DensityOperator> post_states);

    Eigen::Index dim() const { return mic_.dim(); }
    const Mic& mic() const { return mic_; }
    const std::vector<DensityOperator>& post_states() const { return post_states_; }

private:
    Mic mic_;
    std::vector<DensityOperator> post_states_;
};

enum class PhiProvenance { from_process, closed_form_sic };

// Real d^2 x d^2 matrix with columns summing to 1 (column-quasistochastic);
// relates reference probabilities to downstream predictions.
class PhiMatrix {
public:
    PhiMatrix(RealMatrix m, PhiProvenance provenance, double condition_number);

    Eigen::Index order() const { return m_.rows(); }
    const RealMatrix& matrix() const { return m_; }
    PhiProvenance provenance() const { return provenance_; }
    double condition_number() const { return condition_number_; }

private:
    RealMatrix m_;
    PhiProvenance provenance_;
    double condition_number_;
};

enum class ColumnKind { stochastic, quasistochastic, neither };

// [Phi^-1]_{ij} = tr H_i sigma_j; column-stochastic by construction.
RealMatrix phi_inverse(const ReferenceProcess& proc);

// Matrix inverse of phi_inverse(proc) via pivoted LU. Throws IllConditioned
// when the estimated condition number exceeds cond_max; near-dependent post
// states are surfaced, never regularized.
PhiMatrix phi(const ReferenceProcess& proc, double cond_max = tol::cond_max);

// Closed form (d+1) I - (1/d) J for the SIC reference process.
PhiMatrix phi_sic(Eigen::Index d);

ColumnKind classify_columns(const RealMatrix& m, double tol = tol::phi_col);

// Post states sigma_i = H_i / h_i; valid whenever the MIC is.
ReferenceProcess proportional_process(const Mic& mic);

}  // namespace micbench
