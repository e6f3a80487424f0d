#include "micbench/process.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>

namespace micbench {

ReferenceProcess::ReferenceProcess(Mic mic, std::vector<DensityOperator> post_states)
    : mic_(std::move(mic)), post_states_(std::move(post_states)) {
    const Eigen::Index d = mic_.dim();
    if (post_states_.size() != mic_.size())
        throw LengthMismatch("expected " + std::to_string(mic_.size()) + " post states, got " +
                             std::to_string(post_states_.size()));
    std::vector<HermitianOperator> ops;
    ops.reserve(post_states_.size());
    for (const auto& s : post_states_) {
        if (s.dim() != d) throw DimensionMismatch("post state dimension mismatch");
        ops.push_back(s.op());
    }
    const RealVector ev = symmetric_eigenvalues_desc(gram_matrix(ops));
    if (ev(ev.size() - 1) <= tol::rank)
        throw InvariantViolation("post states linearly dependent, min Gram eigenvalue " +
                                 display_number(ev(ev.size() - 1)));
}

PhiMatrix::PhiMatrix(RealMatrix m, PhiProvenance provenance, double condition_number)
    : m_(std::move(m)), provenance_(provenance), condition_number_(condition_number) {
    if (m_.rows() != m_.cols()) throw ShapeMismatch("Phi matrix must be square");
    const double col_residual = (m_.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (col_residual > tol::phi_col)
        throw InvariantViolation("Phi columns must sum to 1, residual " +
                                 display_number(col_residual));
}

RealMatrix phi_inverse(const ReferenceProcess& proc) {
    const std::size_t n = proc.mic().size();
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                hs_inner(proc.mic().effect(i), proc.post_states()[j].op());
    return m;
}

PhiMatrix phi(const ReferenceProcess& proc, double cond_max) {
    const RealMatrix inv = phi_inverse(proc);
    Eigen::PartialPivLU<RealMatrix> lu(inv);
    const double rcond = lu.rcond();
    const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!(cond < cond_max))
        throw IllConditioned(cond, "Phi^-1 condition number " + display_number(cond) +
                                       " exceeds " + display_number(cond_max));
    // Newton (Hotelling-Bodewig) sweeps squash the O(cond * eps) error of the
    // raw LU inverse down to roundoff, keeping column sums and downstream
    // Born-rule gaps accurate near the conditioning ceiling.
    RealMatrix x = lu.inverse();
    const RealMatrix eye2 = 2.0 * RealMatrix::Identity(x.rows(), x.cols());
    for (int sweep = 0; sweep < 2; ++sweep) x = x * (eye2 - inv * x);
    // a Phi whose entries are so large that its column sums cannot be
    // represented to 1e-10 in doubles breaks every downstream probability
    // contract; surface it as a conditioning failure
    const double col_residual = (x.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (col_residual > 1e-10)
        throw IllConditioned(cond, "Phi column sums representable only to " +
                                       display_number(col_residual) +
                                       " (condition number " + display_number(cond) + ")");
    return PhiMatrix(std::move(x), PhiProvenance::from_process, cond);
}

PhiMatrix phi_sic(Eigen::Index d) {
    if (d < 1) throw DimensionMismatch("dimension must be positive");
    const Eigen::Index n = d * d;
    const double dd = static_cast<double>(d);
    RealMatrix m = RealMatrix::Constant(n, n, -1.0 / dd);
    m.diagonal().array() += dd + 1.0;
    // cond_1 of the closed form; ||Phi_SIC^-1||_1 = 1 since (d I + J)/(d(d+1))
    // is column-stochastic
    const double norm_phi = m.cwiseAbs().colwise().sum().maxCoeff();
    return PhiMatrix(std::move(m), PhiProvenance::closed_form_sic, norm_phi);
}

ColumnKind classify_columns(const RealMatrix& m, double tol) {
    if (m.rows() != m.cols()) throw ShapeMismatch("classify_columns expects a square matrix");
    const double col_residual = (m.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (col_residual > tol) return ColumnKind::neither;
    return m.minCoeff() >= -tol ? ColumnKind::stochastic : ColumnKind::quasistochastic;
}

ReferenceProcess proportional_process(const Mic& mic) {
    std::vector<DensityOperator> posts;
    posts.reserve(mic.size());
    for (std::size_t i = 0; i < mic.size(); ++i) {
        const double h = mic.weight(i);
        if (h < 1e-14) throw ZeroEffect("effect " + std::to_string(i) + " has zero trace");
        posts.emplace_back(HermitianOperator(ComplexMatrix(mic.effect(i).matrix() / h)));
    }
    return ReferenceProcess(mic, std::move(posts));
}

}  // namespace micbench
