#include "micbench/sic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "micbench/rng.hpp"

namespace micbench {

namespace {

// Displacements D_pq for (p,q) != (0,0), in orbit order p*d + q.
std::vector<ComplexMatrix> wh_displacements_nonidentity(Eigen::Index d) {
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(d * d - 1));
    for (Eigen::Index p = 0; p < d; ++p)
        for (Eigen::Index q = 0; q < d; ++q)
            if (p != 0 || q != 0) out.push_back(wh_displacement(d, p, q));
    return out;
}

// Overlaps c_pq = <psi|D_pq psi> over the non-identity displacements.
ComplexVector wh_overlaps(const std::vector<ComplexMatrix>& disp, const ComplexVector& psi) {
    ComplexVector c(static_cast<Eigen::Index>(disp.size()));
    for (std::size_t k = 0; k < disp.size(); ++k)
        c(static_cast<Eigen::Index>(k)) = psi.dot(disp[k] * psi);
    return c;
}

// Worst deviation of |c_pq|^2 from 1/(d+1): the equiangularity residual at
// projector scale. The full orbit is a SIC iff this vanishes, because the
// overlap of any projector pair depends only on the index difference.
double overlap_residual(const std::vector<ComplexMatrix>& disp, const ComplexVector& psi) {
    const double target = 1.0 / (static_cast<double>(psi.size()) + 1.0);
    double worst = 0.0;
    for (const auto& m : disp)
        worst = std::max(worst, std::abs(std::norm(psi.dot(m * psi)) - target));
    return worst;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

Fiducial::Fiducial(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) throw DimensionMismatch("fiducial needs at least one amplitude");
    const double norm_residual = std::abs(amplitudes_.squaredNorm() - 1.0);
    if (norm_residual > 1e-12)
        throw NotNormalized("fiducial norm deviates by " + display_number(norm_residual));
}

SicProjectors::SicProjectors(std::vector<HermitianOperator> projectors, double tol)
    : projectors_(std::move(projectors)) {
    if (projectors_.empty()) throw DimensionMismatch("empty projector set");
    const Eigen::Index d = projectors_.front().dim();
    if (projectors_.size() != static_cast<std::size_t>(d * d))
        throw LengthMismatch("expected d^2 = " + std::to_string(d * d) + " projectors, got " +
                             std::to_string(projectors_.size()));
    const double target = 1.0 / (static_cast<double>(d) + 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
        const auto& pi = projectors_[i];
        if (pi.dim() != d) throw DimensionMismatch("projector dimension mismatch");
        worst = std::max(worst, std::abs(pi.trace() - 1.0));
        // idempotence: Pi^2 = Pi
        worst = std::max(worst,
                         (pi.matrix() * pi.matrix() - pi.matrix()).cwiseAbs().maxCoeff());
        for (std::size_t j = i + 1; j < projectors_.size(); ++j)
            worst = std::max(worst, std::abs(hs_inner(pi, projectors_[j]) - target));
    }
    if (worst > tol)
        throw NotAFiducial("projector set fails the SIC condition, residual " +
                           display_number(worst));
}

ComplexMatrix wh_displacement(Eigen::Index d, Eigen::Index p, Eigen::Index q) {
    if (d < 1) throw DimensionMismatch("dimension must be positive");
    if (p < 0 || p >= d || q < 0 || q >= d)
        throw ShapeMismatch("displacement indices must lie in [0, d)");
    const double step = 2.0 * std::numbers::pi / static_cast<double>(d);
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    // (X^p Z^q)_{jk} = delta_{j, k+p mod d} * omega^{qk}
    for (Eigen::Index k = 0; k < d; ++k) {
        const Eigen::Index j = (k + p) % d;
        m(j, k) = std::polar(1.0, step * static_cast<double>(q * k));
    }
    return m;
}

std::vector<HermitianOperator> wh_orbit_projectors(const Fiducial& psi) {
    const Eigen::Index d = psi.dim();
    std::vector<HermitianOperator> out;
    out.reserve(static_cast<std::size_t>(d * d));
    for (Eigen::Index p = 0; p < d; ++p) {
        for (Eigen::Index q = 0; q < d; ++q) {
            const ComplexVector v = wh_displacement(d, p, q) * psi.amplitudes();
            out.emplace_back(ComplexMatrix(v * v.adjoint()));
        }
    }
    return out;
}

SicSystem sic_from_fiducial(const Fiducial& psi, double tol) {
    const Eigen::Index d = psi.dim();
    const auto disp = wh_displacements_nonidentity(d);
    // Residual at MIC scale (H_i = Pi_i/d) so the gate matches verify_sic.
    const double mic_residual =
        d == 1 ? 0.0 : overlap_residual(disp, psi.amplitudes()) / static_cast<double>(d * d);
    if (mic_residual > tol)
        throw NotAFiducial("orbit fails the SIC condition at residual " +
                           display_number(mic_residual));

    auto projectors = wh_orbit_projectors(psi);
    std::vector<HermitianOperator> effects;
    effects.reserve(projectors.size());
    for (const auto& pi : projectors)
        effects.emplace_back(ComplexMatrix(pi.matrix() / static_cast<double>(d)));
    return SicSystem{SicProjectors(std::move(projectors), tol * static_cast<double>(d * d)),
                     Mic(Povm(std::move(effects)))};
}

SicVerdict verify_sic(const Mic& mic, double tol) {
    const Eigen::Index d = mic.dim();
    const double dd = static_cast<double>(d);
    SicVerdict v;
    const GramMatrix g = gram_matrix(mic.povm().effects());
    const double diag = 1.0 / (dd * dd);
    const double off = 1.0 / (dd * dd * (dd + 1.0));
    double worst = 0.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j)
            worst = std::max(worst, std::abs(g(i, j) - (i == j ? diag : off)));
    // rank-1 effects: tr H equals the top eigenvalue exactly for rank-1 PSD
    for (std::size_t i = 0; i < mic.size(); ++i) {
        const RealVector ev = eigenvalues_desc(mic.effect(i));
        worst = std::max(worst, std::abs(mic.effect(i).trace() - ev(0)));
    }
    v.max_residual = worst;
    v.is_sic = worst <= tol;
    return v;
}

double frame_potential(const ComplexVector& psi) {
    const Eigen::Index d = psi.size();
    if (d == 1) return 0.0;
    ComplexVector unit = psi.normalized();
    const auto disp = wh_displacements_nonidentity(d);
    const ComplexVector c = wh_overlaps(disp, unit);
    const double target = 1.0 / (static_cast<double>(d) + 1.0);
    double f = 0.0;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
        const double e = std::norm(c(k)) - target;
        f += e * e;
    }
    return f;
}

namespace {

struct FramePotentialObjective {
    const std::vector<ComplexMatrix>& disp;
    double target;

    double value(const ComplexVector& psi) const {
        double f = 0.0;
        for (const auto& m : disp) {
            const double e = std::norm(psi.dot(m * psi)) - target;
            f += e * e;
        }
        return f;
    }

    // Wirtinger gradient d f / d psi*; returns f.
    double value_and_grad(const ComplexVector& psi, ComplexVector& grad) const {
        grad.setZero(psi.size());
        double f = 0.0;
        for (const auto& m : disp) {
            const ComplexVector mv = m * psi;
            const std::complex<double> c = psi.dot(mv);
            const double e = std::norm(c) - target;
            f += e * e;
            grad += 2.0 * e * (std::conj(c) * mv + c * (m.adjoint() * psi));
        }
        return f;
    }
};

}  // namespace

Fiducial find_fiducial(Eigen::Index d, std::uint64_t seed, const FindFiducialOptions& opts) {
    if (d < 2) throw DimensionMismatch("fiducial search needs d >= 2");
    const auto disp = wh_displacements_nonidentity(d);
    const double dd = static_cast<double>(d);
    const FramePotentialObjective obj{disp, 1.0 / (dd + 1.0)};

    const double accept_f = opts.tol_sic * opts.tol_sic * dd * dd * dd * dd;
    const double cert_residual = 1e-10 * dd * dd;  // projector-scale target

    for (int restart = 0; restart < opts.max_restarts; ++restart) {
        ComplexVector psi;
        if (restart == 0 && opts.initial.has_value()) {
            if (opts.initial->size() != d)
                throw DimensionMismatch("initial guess has wrong dimension");
            psi = *opts.initial;
            // keep an already-unit start bit-identical
            if (std::abs(psi.squaredNorm() - 1.0) > 1e-12) psi.normalize();
        } else {
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
            psi = random_unit_vector(d, rng);
        }

        if (overlap_residual(disp, psi) <= cert_residual) return Fiducial(psi);

        ComplexVector grad(d), prev_psi(d), prev_grad(d);
        double f = obj.value_and_grad(psi, grad);
        double eta = 1.0 / std::max(1.0, grad.norm());
        bool have_prev = false;
        bool accepted = false;
        int polish_left = -1;
        double best_f = f;
        double checkpoint_f = f;

        for (int it = 0; it < opts.max_iters; ++it) {
            ComplexVector tangent = grad - psi.dot(grad) * psi;
            const double tnorm2 = tangent.squaredNorm();
            if (tnorm2 < 1e-32) break;  // critical point

            if (have_prev) {
                const ComplexVector s = psi - prev_psi;
                const ComplexVector y = grad - prev_grad;
                const double sy = s.dot(y).real();
                if (sy > 1e-30 && std::isfinite(sy)) eta = s.squaredNorm() / sy;
            }
            eta = std::clamp(eta, 1e-18, 1e6);

            prev_psi = psi;
            prev_grad = grad;

            // Armijo backtracking on the sphere
            double trial_f = f;
            ComplexVector trial;
            int bt = 0;
            for (; bt < 60; ++bt) {
                trial = (psi - eta * tangent).normalized();
                trial_f = obj.value(trial);
                if (trial_f <= f - 1e-4 * eta * tnorm2) break;
                eta *= 0.5;
            }
            if (bt == 60) break;  // no descent direction left at this scale

            psi = trial;
            f = obj.value_and_grad(psi, grad);
            have_prev = true;

            if (!accepted && f < accept_f) {
                accepted = true;
                polish_left = 50;
            }
            if (accepted) {
                if (polish_left > 0) {
                    --polish_left;
                } else if (overlap_residual(disp, psi) <= cert_residual) {
                    return Fiducial(psi);
                }
            } else {
                // restart when 80 iterations fail to halve the best value seen
                best_f = std::min(best_f, f);
                if (it > 0 && it % 80 == 0) {
                    if (best_f > 0.5 * checkpoint_f) break;
                    checkpoint_f = best_f;
                }
            }
        }

        if (accepted && overlap_residual(disp, psi) <= cert_residual) return Fiducial(psi);
    }
    throw SearchFailed("no fiducial found for d = " + std::to_string(d) + " after " +
                       std::to_string(opts.max_restarts) + " restarts");
}

double two_design_residual(const SicProjectors& sic) {
    const Eigen::Index d = sic.dim();
    const Eigen::Index dsq = d * d;
    ComplexMatrix sum = ComplexMatrix::Zero(dsq, dsq);
    for (const auto& pi : sic.projectors()) sum += kron(pi.matrix(), pi.matrix());

    ComplexMatrix swap = ComplexMatrix::Zero(dsq, dsq);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
    const ComplexMatrix p_sym = (ComplexMatrix::Identity(dsq, dsq) + swap) / 2.0;

    const double scale = 2.0 * static_cast<double>(d) / (static_cast<double>(d) + 1.0);
    return (sum - scale * p_sym).norm();
}

}  // namespace micbench
