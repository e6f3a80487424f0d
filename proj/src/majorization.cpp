#include "micbench/majorization.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace micbench {

namespace {

RealVector sorted_desc(RealVector v) {
    std::sort(v.data(), v.data() + v.size(), std::greater<double>());
    return v;
}

// Shared partial-sum comparison; inputs are the (possibly log-mapped)
// sorted entries. Upgrades weak to strict when the full sums agree.
MajorizationVerdict partial_sum_verdict(const RealVector& x, const RealVector& y, double tol,
                                        MajRelation weak, MajRelation strict) {
    MajorizationVerdict v;
    v.worst_margin = std::numeric_limits<double>::infinity();
    double sx = 0.0, sy = 0.0;
    bool holds = true;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        sx += x(k);
        sy += y(k);
        const double margin = sx - sy;
        if (margin < v.worst_margin) {
            v.worst_margin = margin;
            v.worst_index = k;
        }
        if (margin < -tol) holds = false;
    }
    if (!holds) {
        v.relation = MajRelation::none;
        return v;
    }
    v.relation = std::abs(sx - sy) <= tol ? strict : weak;
    return v;
}

}  // namespace

SortedVector::SortedVector(RealVector entries)
    : entries_(sorted_desc(std::move(entries))), original_length_(entries_.size()) {}

const char* to_string(MajRelation r) {
    switch (r) {
        case MajRelation::majorizes: return "majorizes";
        case MajRelation::weakly_majorizes: return "weakly_majorizes";
        case MajRelation::log_majorizes: return "log_majorizes";
        case MajRelation::weakly_log_majorizes: return "weakly_log_majorizes";
        case MajRelation::none: return "none";
    }
    return "none";
}

MajorizationVerdict weak_majorizes(const RealVector& x, const RealVector& y, double tol) {
    if (x.size() != y.size())
        throw LengthMismatch("majorization needs equal lengths, got " +
                             std::to_string(x.size()) + " and " + std::to_string(y.size()));
    return partial_sum_verdict(sorted_desc(x), sorted_desc(y), tol,
                               MajRelation::weakly_majorizes, MajRelation::majorizes);
}

MajorizationVerdict weak_log_majorizes(const RealVector& x, const RealVector& y, double tol) {
    if (x.size() != y.size())
        throw LengthMismatch("majorization needs equal lengths, got " +
                             std::to_string(x.size()) + " and " + std::to_string(y.size()));
    const RealVector xs = sorted_desc(x);
    const RealVector ys = sorted_desc(y);
    if (xs.size() > 0 && (xs.minCoeff() < -tol::log_entry_floor ||
                          ys.minCoeff() < -tol::log_entry_floor))
        throw NonPositiveEntry("log majorization requires nonnegative entries");

    // strip zeros in parallel when the zero patterns match; they sit at the
    // tail after sorting, and partial products past them are 0 >= 0
    const auto zeros = [](const RealVector& v) {
        Eigen::Index n = 0;
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (v(i) < tol::log_entry_floor) ++n;
        return n;
    };
    const Eigen::Index zx = zeros(xs), zy = zeros(ys);
    if (zx != zy)
        throw NonPositiveEntry("entries below " + display_number(tol::log_entry_floor) +
                               " with mismatched zero counts (" + std::to_string(zx) + " vs " +
                               std::to_string(zy) + ")");
    const Eigen::Index n = xs.size() - zx;
    if (n == 0) {
        // both vectors all-zero: trivially log-majorizes
        return MajorizationVerdict{MajRelation::log_majorizes, 0.0, 0};
    }
    const RealVector lx = xs.head(n).array().log();
    const RealVector ly = ys.head(n).array().log();
    auto v = partial_sum_verdict(lx, ly, tol, MajRelation::weakly_log_majorizes,
                                 MajRelation::log_majorizes);
    // a stripped zero tail means the full products both vanish, so the
    // strict upgrade remains correct
    return v;
}

MeanChain mean_chain(const RealVector& x) {
    if (x.size() == 0) throw LengthMismatch("mean_chain needs at least one entry");
    if (x.minCoeff() <= 0.0)
        throw NonPositiveEntry("means require strictly positive entries, min " +
                               display_number(x.minCoeff()));
    const double n = static_cast<double>(x.size());
    MeanChain m{};
    m.arithmetic = x.sum() / n;
    m.geometric = std::exp(x.array().log().sum() / n);
    m.harmonic = n / x.array().inverse().sum();
    return m;
}

SortedVector singular_values(const RealMatrix& m) {
    Eigen::JacobiSVD<RealMatrix> svd(m);
    return SortedVector(svd.singularValues());
}

SortedVector singular_values(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return SortedVector(svd.singularValues());
}

MajorizationVerdict lemma2_check(const ReferenceProcess& proc) {
    const PhiMatrix p = phi(proc);
    const PhiMatrix ps = phi_sic(proc.dim());
    return weak_log_majorizes(singular_values(p.matrix()).entries(),
                              singular_values(ps.matrix()).entries());
}

RealVector zhu_sic_spectrum(Eigen::Index d) {
    const double dd = static_cast<double>(d);
    RealVector lam = RealVector::Constant(d * d, dd / (dd + 1.0));
    lam(0) = dd;
    return lam;
}

MajorizationVerdict zhu_check(const std::vector<HermitianOperator>& projectors, double tol) {
    if (projectors.empty()) throw LengthMismatch("empty operator list");
    const Eigen::Index d = projectors.front().dim();
    if (projectors.size() != static_cast<std::size_t>(d * d))
        throw LengthMismatch("expected d^2 = " + std::to_string(d * d) + " operators, got " +
                             std::to_string(projectors.size()));
    for (std::size_t j = 0; j < projectors.size(); ++j) {
        const double p2 = projectors[j].purity();
        if (std::abs(p2 - 1.0) > 1e-9)
            throw NotNormalized("operator " + std::to_string(j) + " has tr Pi^2 = " +
                                display_number(p2));
    }
    const RealVector spectrum = symmetric_eigenvalues_desc(gram_matrix(projectors));
    return weak_majorizes(spectrum, zhu_sic_spectrum(d), tol);
}

SortedVector frame_operator_spectrum(const std::vector<HermitianOperator>& projectors) {
    if (projectors.empty()) throw LengthMismatch("empty operator list");
    const Eigen::Index d = projectors.front().dim();
    const Eigen::Index n = d * d;
    ComplexMatrix frame = ComplexMatrix::Zero(n, n);
    for (const auto& pi : projectors) {
        const Eigen::Map<const ComplexVector> v(pi.matrix().data(), n);
        frame += v * v.adjoint();
    }
    return SortedVector(hermitian_eigenvalues_desc(frame));
}

}  // namespace micbench
