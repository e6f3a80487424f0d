#include "micbench/born.hpp"

#include <cmath>

namespace micbench {

namespace {

RealVector clamp_sum_to_one(RealVector v, double tol) {
    const double residual = v.sum() - 1.0;
    if (std::abs(residual) > tol)
        throw InvariantViolation("entries sum to 1 " + display_number(residual) +
                                 " away from 1");
    Eigen::Index argmax = 0;
    v.maxCoeff(&argmax);
    v(argmax) -= residual;
    return v;
}

}  // namespace

ProbVector::ProbVector(RealVector entries) : entries_(std::move(entries)) {
    if (entries_.size() == 0) throw ShapeMismatch("empty probability vector");
    if (entries_.minCoeff() < -tol::prob_entry)
        throw InvariantViolation("negative probability entry " +
                                 display_number(entries_.minCoeff()));
    entries_ = clamp_sum_to_one(std::move(entries_), tol::prob_sum);
}

QuasiProbVector::QuasiProbVector(RealVector entries) : entries_(std::move(entries)) {
    if (entries_.size() == 0) throw ShapeMismatch("empty quasiprobability vector");
    entries_ = clamp_sum_to_one(std::move(entries_), tol::prob_sum);
}

ConditionalMatrix::ConditionalMatrix(RealMatrix m) : m_(std::move(m)) {
    for (Eigen::Index i = 0; i < m_.cols(); ++i) ProbVector(m_.col(i));  // validates
}

ProbVector born_probabilities(const DensityOperator& rho, const Povm& povm) {
    if (rho.dim() != povm.dim())
        throw DimensionMismatch("state dimension " + std::to_string(rho.dim()) +
                                " vs POVM dimension " + std::to_string(povm.dim()));
    RealVector p(static_cast<Eigen::Index>(povm.size()));
    for (std::size_t j = 0; j < povm.size(); ++j)
        p(static_cast<Eigen::Index>(j)) = hs_inner(rho.op(), povm.effect(j));
    return ProbVector(std::move(p));
}

ConditionalMatrix conditional_matrix(const Povm& povm, const ReferenceProcess& proc) {
    if (povm.dim() != proc.dim())
        throw DimensionMismatch("POVM dimension " + std::to_string(povm.dim()) +
                                " vs process dimension " + std::to_string(proc.dim()));
    RealMatrix m(static_cast<Eigen::Index>(povm.size()),
                 static_cast<Eigen::Index>(proc.post_states().size()));
    for (std::size_t j = 0; j < povm.size(); ++j)
        for (std::size_t i = 0; i < proc.post_states().size(); ++i)
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
                hs_inner(povm.effect(j), proc.post_states()[i].op());
    return ConditionalMatrix(std::move(m));
}

ProbVector q_via_phi(const ProbVector& p_ref, const ConditionalMatrix& cond,
                     const PhiMatrix& phi) {
    if (phi.order() != p_ref.size() || cond.reference_outcomes() != phi.order())
        throw ShapeMismatch("q_via_phi: incompatible shapes");
    RealVector q = cond.matrix() * (phi.matrix() * p_ref.entries());
    const double residual = q.sum() - 1.0;
    if (std::abs(residual) > 1e-8)
        throw NotNormalizable("output sums to " + display_number(q.sum()));
    // the residual is within this operation's own error contract (1e-8), which
    // is wider than the ProbVector clamp window; absorb it here
    Eigen::Index argmax = 0;
    q.maxCoeff(&argmax);
    q(argmax) -= residual;
    return ProbVector(std::move(q));
}

ProbVector ltp(const ProbVector& p_ref, const ConditionalMatrix& cond) {
    if (cond.reference_outcomes() != p_ref.size())
        throw ShapeMismatch("ltp: incompatible shapes");
    return ProbVector(cond.matrix() * p_ref.entries());
}

ReconstructedState reconstruct_state(const ProbVector& p_ref, const ReferenceProcess& proc) {
    return reconstruct_state(p_ref, proc, phi(proc));
}

ReconstructedState reconstruct_state(const ProbVector& p_ref, const ReferenceProcess& proc,
                                     const PhiMatrix& phi) {
    if (p_ref.size() != static_cast<Eigen::Index>(proc.mic().size()) ||
        phi.order() != p_ref.size())
        throw ShapeMismatch("reference probabilities must have d^2 entries");
    const RealVector coeff = phi.matrix() * p_ref.entries();
    const Eigen::Index d = proc.dim();
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < coeff.size(); ++i)
        rho += coeff(i) * proc.post_states()[static_cast<std::size_t>(i)].matrix();
    DensityOperator state(HermitianOperator(std::move(rho)), DensityOperator::PsdPolicy::report);
    const double lo = state.min_eigenvalue();
    return ReconstructedState{std::move(state), lo, lo >= -tol::psd};
}

QuasiProbVector quasi_image(const ProbVector& p_ref, const PhiMatrix& phi) {
    if (phi.order() != p_ref.size()) throw ShapeMismatch("quasi_image: incompatible shapes");
    RealVector q = phi.matrix() * p_ref.entries();
    // Phi's column-sum accuracy (1e-9) bounds the achievable sum here; absorb
    // that into the dominant entry before the strict type window applies
    const double residual = q.sum() - 1.0;
    if (std::abs(residual) > 1e-9)
        throw NotNormalizable("quasiprobability sums to " + display_number(q.sum()));
    Eigen::Index argmax = 0;
    q.cwiseAbs().maxCoeff(&argmax);
    q(argmax) -= residual;
    return QuasiProbVector(std::move(q));
}

double negativity(const QuasiProbVector& qp) {
    return (-qp.entries().array()).max(0.0).sum();
}

}  // namespace micbench
