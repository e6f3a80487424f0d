#include "micbench/geometry.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>

namespace micbench {

namespace {

struct LogDet {
    double log_abs;
    int sign;
};

LogDet log_abs_det(const RealMatrix& m) {
    Eigen::PartialPivLU<RealMatrix> lu(m);
    const auto& diag = lu.matrixLU().diagonal();
    double log_abs = 0.0;
    int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        const double v = diag(i);
        if (v == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
        log_abs += std::log(std::abs(v));
        if (v < 0.0) sign = -sign;
    }
    return {log_abs, sign};
}

double log_det_phi_sic(Eigen::Index d) {
    return static_cast<double>(d * d - 1) * std::log(static_cast<double>(d) + 1.0);
}

double sum_log_gamma_1_to(Eigen::Index d) {
    double s = 0.0;
    for (Eigen::Index k = 1; k <= d; ++k) s += std::lgamma(static_cast<double>(k));
    return s;
}

}  // namespace

double lemma1_margin(const Mic& mic) {
    const Eigen::Index d = mic.dim();
    const RealMatrix inv = phi_inverse(proportional_process(mic));
    const LogDet ld = log_abs_det(inv);
    if (ld.sign == 0)
        throw IllConditioned(std::numeric_limits<double>::infinity(), "singular Phi^-1");
    const double log_det_sic = log_det_phi_sic(d);
    const double det_sic = std::exp(log_det_sic);
    if (ld.sign < 0) {
        // cannot happen for a proportional process (positive spectrum);
        // surfaces a numerical breakdown rather than hiding it
        return -std::exp(-ld.log_abs) - det_sic;
    }
    // det Phi_p = 1/det Phi_p^-1; margin in log space for accuracy
    return det_sic * std::expm1(-ld.log_abs - log_det_sic);
}

double lemma1_reciprocal_margin(const Mic& mic) {
    const RealMatrix inv = phi_inverse(proportional_process(mic));
    return static_cast<double>(mic.dim()) - inv.trace();
}

GramMatrix closed_form_sic_gram(Eigen::Index d) {
    if (d < 1) throw DimensionMismatch("dimension must be positive");
    const double dd = static_cast<double>(d);
    const Eigen::Index n = d * d;
    GramMatrix g = GramMatrix::Constant(n, n, 1.0 / (dd * dd * (dd + 1.0)));
    g.diagonal().setConstant(1.0 / (dd * dd));
    return g;
}

double gram_det_margin(const Mic& mic) {
    const Eigen::Index d = mic.dim();
    const LogDet ld = log_abs_det(gram_matrix(mic.povm().effects()));
    const LogDet ld_sic = log_abs_det(closed_form_sic_gram(d));
    const double det_sic = std::exp(ld_sic.log_abs);
    if (ld.sign <= 0) return det_sic;  // det G <= 0 only by numerical collapse
    return -det_sic * std::expm1(ld.log_abs - ld_sic.log_abs);
}

double vol_simplex(Eigen::Index d) {
    if (d < 1) throw DimensionMismatch("dimension must be positive");
    const double dd = static_cast<double>(d);
    return std::exp(std::log(dd) - std::lgamma(dd * dd));
}

double vol_p_sic(Eigen::Index d) {
    if (d < 2) throw DimensionMismatch("vol_p_sic needs d >= 2");
    const double dd = static_cast<double>(d);
    const double log_two_pi = std::log(2.0 * std::numbers::pi);
    const double log_v = 0.5 * (dd * (dd - 1.0) * log_two_pi -
                                (dd * dd - 2.0) * std::log(dd) -
                                (dd * dd - 1.0) * std::log(dd + 1.0)) +
                         sum_log_gamma_1_to(d) - std::lgamma(dd * dd);
    return std::exp(log_v);
}

double hs_volume_qd(Eigen::Index d) {
    if (d < 2) throw DimensionMismatch("hs_volume_qd needs d >= 2");
    const double dd = static_cast<double>(d);
    const double log_v = 0.5 * std::log(dd) +
                         0.5 * dd * (dd - 1.0) * std::log(2.0 * std::numbers::pi) +
                         sum_log_gamma_1_to(d) - std::lgamma(dd * dd);
    return std::exp(log_v);
}

RealMatrix induced_metric_sic(Eigen::Index d) {
    if (d < 2) throw DimensionMismatch("induced_metric_sic needs d >= 2");
    const Eigen::Index n = d * d - 1;
    const double scale = static_cast<double>(d) * (static_cast<double>(d) + 1.0);
    RealMatrix g = RealMatrix::Constant(n, n, scale);
    g.diagonal().setConstant(2.0 * scale);
    return g;
}

VolumeReport volume_report(Eigen::Index d) {
    VolumeReport r{};
    r.d = static_cast<int>(d);
    r.vol_p_sic = vol_p_sic(d);
    r.vol_simplex = vol_simplex(d);
    r.ratio = r.vol_p_sic / r.vol_simplex;
    r.vol_hs_qd = hs_volume_qd(d);

    // vol_HS(Q_d) = sqrt((d^2+d)^{d^2-1}) vol_E(P_SIC), checked in log space
    const double dd = static_cast<double>(d);
    const double lhs = std::log(r.vol_hs_qd);
    const double rhs = 0.5 * (dd * dd - 1.0) * std::log(dd * dd + dd) + std::log(r.vol_p_sic);
    if (std::abs(lhs - rhs) > 1e-10)
        throw InvariantViolation("volume consistency identity violated by " +
                                 display_number(lhs - rhs));
    return r;
}

}  // namespace micbench
