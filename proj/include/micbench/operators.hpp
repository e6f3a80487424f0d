#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "micbench/errors.hpp"
#include "micbench/tolerances.hpp"

namespace micbench {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using GramMatrix = Eigen::MatrixXd;  // pairwise Hilbert-Schmidt inner products

// A d x d complex matrix equal to its conjugate transpose. Construction
// symmetrizes (A + A^dag)/2 when the residual is below tol::herm and rejects
// otherwise, so benign rounding is absorbed and real errors surface.
class HermitianOperator {
public:
    explicit HermitianOperator(ComplexMatrix m);

    Eigen::Index dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }
    double trace() const { return mat_.trace().real(); }
    double purity() const;  // tr A^2

private:
    ComplexMatrix mat_;
};

// Unit-trace positive semidefinite Hermitian operator. reconstruct_state
// needs to carry operators that are only reported, not certified, as PSD;
// PsdPolicy::report records the minimum eigenvalue without enforcing it.
class DensityOperator {
public:
    enum class PsdPolicy { require, report };

    explicit DensityOperator(HermitianOperator op, PsdPolicy policy = PsdPolicy::require);

    Eigen::Index dim() const { return op_.dim(); }
    const HermitianOperator& op() const { return op_; }
    const ComplexMatrix& matrix() const { return op_.matrix(); }
    double min_eigenvalue() const { return min_eig_; }
    bool is_positive_semidefinite() const { return min_eig_ >= -tol::psd; }

private:
    HermitianOperator op_;
    double min_eig_;
};

// Ordered set of PSD effects resolving the identity.
class Povm {
public:
    explicit Povm(std::vector<HermitianOperator> effects);

    Eigen::Index dim() const { return effects_.front().dim(); }
    std::size_t size() const { return effects_.size(); }
    const HermitianOperator& effect(std::size_t i) const { return effects_[i]; }
    const std::vector<HermitianOperator>& effects() const { return effects_; }

private:
    std::vector<HermitianOperator> effects_;
};

struct MicVerdict {
    bool is_mic = false;
    double min_gram_eigenvalue = 0.0;
    double resolve_residual = 0.0;
    std::string failure;  // empty when is_mic
};

// Minimal informationally complete POVM: d^2 effects whose Gram matrix has
// full rank d^2, so the effects span the Hermitian operator space.
class Mic {
public:
    explicit Mic(Povm povm);

    Eigen::Index dim() const { return povm_.dim(); }
    std::size_t size() const { return povm_.size(); }
    const Povm& povm() const { return povm_; }
    const HermitianOperator& effect(std::size_t i) const { return povm_.effect(i); }
    double weight(std::size_t i) const { return weights_[i]; }  // h_i = tr H_i
    const std::vector<double>& weights() const { return weights_; }

private:
    Povm povm_;
    std::vector<double> weights_;
};

// tr(AB), real for Hermitian inputs.
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);

// [G]_{ij} = tr(ops_i ops_j), symmetric.
GramMatrix gram_matrix(const std::vector<HermitianOperator>& ops);

// Classifies a POVM as MIC or not; the verdict encodes the failure mode
// instead of throwing. `tol` bounds the smallest Gram eigenvalue counted as
// full rank.
MicVerdict check_mic(const Povm& povm, double tol = tol::rank);

// Smallest eigenvalue, via the dedicated Hermitian solver path.
double min_eigenvalue(const HermitianOperator& a);

// All eigenvalues in nonincreasing order (Hermitian solver, real by construction).
RealVector eigenvalues_desc(const HermitianOperator& a);
RealVector hermitian_eigenvalues_desc(const ComplexMatrix& hermitian);
RealVector symmetric_eigenvalues_desc(const RealMatrix& symmetric);

HermitianOperator identity_operator(Eigen::Index d);

}  // namespace micbench
