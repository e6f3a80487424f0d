#pragma once

#include "micbench/operators.hpp"
#include "micbench/process.hpp"

namespace micbench {

// Entries sorted in nonincreasing order.
class SortedVector {
public:
    explicit SortedVector(RealVector entries);  // sorts

    Eigen::Index size() const { return entries_.size(); }
    Eigen::Index original_length() const { return original_length_; }
    const RealVector& entries() const { return entries_; }
    double operator[](Eigen::Index i) const { return entries_(i); }

private:
    RealVector entries_;
    Eigen::Index original_length_;
};

enum class MajRelation {
    majorizes,
    weakly_majorizes,
    log_majorizes,
    weakly_log_majorizes,
    none,
};

// worst_margin is the most negative partial-sum slack (log-space slack for
// the log variants); worst_index the prefix length attaining it. Positive
// margins mean the relation holds with room to spare, which is what the
// ensemble reports rank near-violations by.
struct MajorizationVerdict {
    MajRelation relation = MajRelation::none;
    double worst_margin = 0.0;
    Eigen::Index worst_index = 0;
};

const char* to_string(MajRelation r);

// Checks sum_{i<=k} x_i^down >= sum_{i<=k} y_i^down - tol for every k;
// upgrades to `majorizes` when the full sums agree within tol.
MajorizationVerdict weak_majorizes(const RealVector& x, const RealVector& y,
                                   double tol = tol::maj);

// Partial-product version, compared in log space. Entries below
// tol::log_entry_floor are errors unless both vectors have identical zero
// counts, in which case the zeros are stripped in parallel.
MajorizationVerdict weak_log_majorizes(const RealVector& x, const RealVector& y,
                                       double tol = tol::maj);

struct MeanChain {
    double arithmetic;
    double geometric;
    double harmonic;
};

// AM >= GM >= HM, equality iff all entries equal.
MeanChain mean_chain(const RealVector& x);

// Singular values in nonincreasing order.
SortedVector singular_values(const RealMatrix& m);
SortedVector singular_values(const ComplexMatrix& m);

// s(Phi) weakly log majorizes s(Phi_SIC); never `none` for a valid process.
MajorizationVerdict lemma2_check(const ReferenceProcess& proc);

// Gram spectrum of d^2 normalized (tr Pi^2 = 1) rank-1 operators majorizes
// (d, d/(d+1), ..., d/(d+1)); equality only for SICs.
MajorizationVerdict zhu_check(const std::vector<HermitianOperator>& projectors,
                              double tol = tol::maj);

// Reference spectrum (d, d/(d+1), ..., d/(d+1)) of length d^2.
RealVector zhu_sic_spectrum(Eigen::Index d);

// Spectrum of the frame superoperator sum_j |Pi_j>><<Pi_j|; equals the Gram
// spectrum by the Schmidt argument.
SortedVector frame_operator_spectrum(const std::vector<HermitianOperator>& projectors);

}  // namespace micbench
