#pragma once

#include <string>
#include <vector>

#include "micbench/majorization.hpp"
#include "micbench/process.hpp"

namespace micbench {

// Unitarily invariant norm selector: Schatten-p (p >= 1, p = inf is the
// operator norm, alias of Ky Fan-1) or Ky Fan-k.
struct NormSpec {
    enum class Kind { schatten, ky_fan };

    Kind kind = Kind::schatten;
    double p = 2.0;  // schatten order; may be +inf
    int k = 1;       // ky fan order

    static NormSpec schatten(double p);
    static NormSpec ky_fan(int k);

    // "schatten:2", "schatten:inf", "kyfan:3"
    static NormSpec parse(const std::string& text);
    std::string to_string() const;
};

// Evaluated from precomputed singular values; lets callers sweep many specs
// over one SVD.
double ui_norm_from_singular(const SortedVector& s, const NormSpec& spec);

double ui_norm(const RealMatrix& m, const NormSpec& spec);
double ui_norm(const ComplexMatrix& m, const NormSpec& spec);

double distance_from_identity(const PhiMatrix& phi, const NormSpec& spec);

// distance(phi(proc)) - distance(phi_sic(d)); nonnegative up to numerics,
// zero iff the MIC and post states are SICs.
double theorem1_margin(const ReferenceProcess& proc, const NormSpec& spec);
double theorem1_margin(const PhiMatrix& phi_of_proc, const NormSpec& spec);

// Margins for a whole spec sweep from one SVD of I - Phi (ensemble runs
// evaluate many specs per matrix).
std::vector<double> theorem1_margins(const PhiMatrix& phi_of_proc,
                                     const std::vector<NormSpec>& specs);

// The family used by the verification suites: Schatten 1, 2, inf and
// Ky Fan 1..n.
std::vector<NormSpec> standard_spec_family(Eigen::Index order);

}  // namespace micbench
