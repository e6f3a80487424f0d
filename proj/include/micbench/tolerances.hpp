#pragma once

// Central numerical tolerances. Double precision with d <= 8 leaves several
// orders of headroom over all of these.
namespace micbench::tol {

inline constexpr double herm = 1e-10;      // hermiticity residual at construction
inline constexpr double trace = 1e-10;     // unit-trace / weight-sum residual
inline constexpr double resolve = 1e-10;   // POVM identity-resolution residual
inline constexpr double psd = 1e-9;        // eigenvalue floor for positivity checks
inline constexpr double rank = 1e-8;       // smallest Gram eigenvalue counted as full rank
inline constexpr double sic = 1e-9;        // SIC Gram residual for verification
inline constexpr double maj = 1e-9;        // majorization partial-sum slack
inline constexpr double log_entry_floor = 1e-14;  // entries below this are zeros in log majorization
inline constexpr double prob_entry = 1e-12;  // allowed negative mass per probability entry
inline constexpr double prob_sum = 1e-10;    // probability normalization residual
inline constexpr double phi_col = 1e-9;      // quasistochastic column-sum residual
inline constexpr double cond_max = 1e10;     // condition-number ceiling for inverting Phi^-1

}  // namespace micbench::tol
