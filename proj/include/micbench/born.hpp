#pragma once

#include "micbench/operators.hpp"
#include "micbench/process.hpp"

namespace micbench {

// Nonnegative entries summing to 1. Sums within tol::prob_sum of 1 are
// clamped to exactly 1 by adjusting the largest entry, so downstream sorted
// partial sums do not drift.
class ProbVector {
public:
    explicit ProbVector(RealVector entries);

    Eigen::Index size() const { return entries_.size(); }
    const RealVector& entries() const { return entries_; }
    double operator[](Eigen::Index i) const { return entries_(i); }

private:
    RealVector entries_;
};

// Sums to 1; entries may be negative or exceed 1.
class QuasiProbVector {
public:
    explicit QuasiProbVector(RealVector entries);

    Eigen::Index size() const { return entries_.size(); }
    const RealVector& entries() const { return entries_; }
    double operator[](Eigen::Index i) const { return entries_(i); }

private:
    RealVector entries_;
};

// n_out x d^2 matrix whose column i is the outcome distribution of the
// downstream POVM given post state sigma_i.
class ConditionalMatrix {
public:
    explicit ConditionalMatrix(RealMatrix m);

    Eigen::Index outcomes() const { return m_.rows(); }
    Eigen::Index reference_outcomes() const { return m_.cols(); }
    const RealMatrix& matrix() const { return m_; }

private:
    RealMatrix m_;
};

// A state reconstructed from reference probabilities. Always Hermitian with
// unit trace; positivity is reported, not enforced, because the linear map
// is defined on the whole simplex and telling its PSD image apart from the
// simplex is the observable of interest.
struct ReconstructedState {
    DensityOperator state;  // PsdPolicy::report
    double min_eigenvalue;
    bool is_positive_semidefinite;
};

// Operator Born rule: entry j = tr(rho D_j).
ProbVector born_probabilities(const DensityOperator& rho, const Povm& povm);

// Entry (j, i) = tr(D_j sigma_i).
ConditionalMatrix conditional_matrix(const Povm& povm, const ReferenceProcess& proc);

// Deformed total-probability rule Q(D) = P(D|H) Phi P(H).
ProbVector q_via_phi(const ProbVector& p_ref, const ConditionalMatrix& cond,
                     const PhiMatrix& phi);

// Classical law of total probability P(D) = P(D|H) P(H).
ProbVector ltp(const ProbVector& p_ref, const ConditionalMatrix& cond);

// rho = sum_i [Phi p_ref]_i sigma_i. The second overload reuses a
// precomputed Phi for ensemble loops.
ReconstructedState reconstruct_state(const ProbVector& p_ref, const ReferenceProcess& proc);
ReconstructedState reconstruct_state(const ProbVector& p_ref, const ReferenceProcess& proc,
                                     const PhiMatrix& phi);

// Phi * p_ref.
QuasiProbVector quasi_image(const ProbVector& p_ref, const PhiMatrix& phi);

// Total negative mass; zero iff the vector is a probability vector.
double negativity(const QuasiProbVector& qp);

}  // namespace micbench
