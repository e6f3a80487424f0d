#include "micbench/operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace micbench {

namespace {

void require_finite(const ComplexMatrix& m) {
    if (!m.allFinite()) throw InvariantViolation("matrix has non-finite entries");
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols())
        throw DimensionMismatch("operator must be square, got " + std::to_string(mat_.rows()) +
                                "x" + std::to_string(mat_.cols()));
    require_finite(mat_);
    const double residual = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (residual > tol::herm)
        throw NonHermitian("hermiticity residual " + display_number(residual));
    mat_ = ((mat_ + mat_.adjoint()) / 2.0).eval();
}

double HermitianOperator::purity() const {
    // tr A^2 = sum |A_ij|^2 for Hermitian A
    return mat_.squaredNorm();
}

DensityOperator::DensityOperator(HermitianOperator op, PsdPolicy policy) : op_(std::move(op)) {
    if (std::abs(op_.trace() - 1.0) > tol::trace)
        throw InvariantViolation("density operator trace " + display_number(op_.trace()));
    min_eig_ = micbench::min_eigenvalue(op_);
    if (policy == PsdPolicy::require && min_eig_ < -tol::psd)
        throw InvariantViolation("density operator not PSD, min eigenvalue " +
                                 display_number(min_eig_));
}

Povm::Povm(std::vector<HermitianOperator> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) throw InvariantViolation("POVM needs at least one effect");
    const Eigen::Index d = effects_.front().dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < effects_.size(); ++i) {
        if (effects_[i].dim() != d)
            throw DimensionMismatch("effect " + std::to_string(i) + " has dimension " +
                                    std::to_string(effects_[i].dim()) + ", expected " +
                                    std::to_string(d));
        const double lo = min_eigenvalue(effects_[i]);
        if (lo < -tol::psd)
            throw InvariantViolation("effect " + std::to_string(i) +
                                     " not PSD, min eigenvalue " + display_number(lo));
        sum += effects_[i].matrix();
    }
    const double residual = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (residual > tol::resolve)
        throw InvariantViolation("effects do not resolve the identity, residual " +
                                 display_number(residual));
}

Mic::Mic(Povm povm) : povm_(std::move(povm)) {
    const MicVerdict v = check_mic(povm_);
    if (!v.is_mic) throw InvariantViolation("not a MIC: " + v.failure);
    weights_.reserve(povm_.size());
    for (std::size_t i = 0; i < povm_.size(); ++i) weights_.push_back(povm_.effect(i).trace());
}

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("hs_inner: dimensions " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
    // tr(AB) = <A,B>_HS for Hermitian A
    return a.matrix().conjugate().cwiseProduct(b.matrix()).sum().real();
}

GramMatrix gram_matrix(const std::vector<HermitianOperator>& ops) {
    const std::size_t n = ops.size();
    GramMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = hs_inner(ops[i], ops[j]);
            g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    }
    return g;
}

MicVerdict check_mic(const Povm& povm, double tol) {
    MicVerdict v;
    const Eigen::Index d = povm.dim();
    const std::size_t expected = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);

    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    double min_effect_eig = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < povm.size(); ++i) {
        min_effect_eig = std::min(min_effect_eig, min_eigenvalue(povm.effect(i)));
        sum += povm.effect(i).matrix();
    }
    v.resolve_residual = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();

    const GramMatrix g = gram_matrix(povm.effects());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(g, Eigen::EigenvaluesOnly);
    v.min_gram_eigenvalue = es.eigenvalues().minCoeff();

    std::ostringstream why;
    if (povm.size() != expected)
        why << "effect count " << povm.size() << " != d^2 = " << expected << "; ";
    if (min_effect_eig < -tol::psd)
        why << "effect not PSD (min eigenvalue " << min_effect_eig << "); ";
    if (v.resolve_residual > tol::resolve)
        why << "identity resolution residual " << v.resolve_residual << "; ";
    if (povm.size() == expected && v.min_gram_eigenvalue <= tol)
        why << "Gram matrix rank deficient (min eigenvalue " << v.min_gram_eigenvalue << "); ";

    v.failure = why.str();
    v.is_mic = v.failure.empty();
    return v;
}

double min_eigenvalue(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

RealVector hermitian_eigenvalues_desc(const ComplexMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().reverse();
}

RealVector symmetric_eigenvalues_desc(const RealMatrix& symmetric) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(symmetric, Eigen::EigenvaluesOnly);
    return es.eigenvalues().reverse();
}

RealVector eigenvalues_desc(const HermitianOperator& a) {
    return hermitian_eigenvalues_desc(a.matrix());
}

HermitianOperator identity_operator(Eigen::Index d) {
    return HermitianOperator(ComplexMatrix::Identity(d, d));
}

}  // namespace micbench
