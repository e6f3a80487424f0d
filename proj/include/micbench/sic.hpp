#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "micbench/operators.hpp"

namespace micbench {

// Unit vector whose Weyl-Heisenberg orbit is (or is hoped to be) a SIC.
class Fiducial {
public:
    explicit Fiducial(ComplexVector amplitudes);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const ComplexVector& amplitudes() const { return amplitudes_; }

private:
    ComplexVector amplitudes_;
};

// d^2 rank-1 projectors with equal pairwise overlaps tr Pi_i Pi_j = 1/(d+1).
class SicProjectors {
public:
    explicit SicProjectors(std::vector<HermitianOperator> projectors, double tol = tol::sic);

    Eigen::Index dim() const { return projectors_.front().dim(); }
    std::size_t size() const { return projectors_.size(); }
    const HermitianOperator& projector(std::size_t i) const { return projectors_[i]; }
    const std::vector<HermitianOperator>& projectors() const { return projectors_; }

private:
    std::vector<HermitianOperator> projectors_;
};

struct SicSystem {
    SicProjectors projectors;
    Mic mic;  // effects H_i = Pi_i / d
};

struct SicVerdict {
    bool is_sic = false;
    double max_residual = 0.0;
};

// X^p Z^q with X the cyclic shift and Z the diagonal of d-th roots of unity.
// No tau^{pq} phase factor; the projector orbit is insensitive to it.
ComplexMatrix wh_displacement(Eigen::Index d, Eigen::Index p, Eigen::Index q);

// Projectors onto the full WH orbit of psi, ordered by index p*d + q. The
// orbit of any unit vector resolves d times the identity (1-design), so the
// matching POVM always exists; no SIC condition is checked here.
std::vector<HermitianOperator> wh_orbit_projectors(const Fiducial& psi);

// Orbit projectors plus the MIC H_i = Pi_i/d; throws NotAFiducial when the
// worst pairwise-overlap residual exceeds tol.
SicSystem sic_from_fiducial(const Fiducial& psi, double tol = tol::sic);

// True iff every Gram entry matches (d delta_ij + 1)/(d^2 (d+1)) within tol
// and every effect is rank-1.
SicVerdict verify_sic(const Mic& mic, double tol = tol::sic);

// Registry of known fiducials (d = 1..5). Every entry passes
// sic_from_fiducial -> verify_sic at 1e-10.
Fiducial known_fiducial(Eigen::Index d);
std::vector<Eigen::Index> known_fiducial_dims();

// Frame potential sum_{(p,q) != (0,0)} (|<psi|D_pq psi>|^2 - 1/(d+1))^2;
// zero exactly when the orbit of psi is a SIC. Invariant under global phase.
double frame_potential(const ComplexVector& psi);

struct FindFiducialOptions {
    int max_restarts = 100;
    int max_iters = 4000;          // per restart
    double tol_sic = 1e-8;         // search acceptance on the overlap residual
    std::optional<ComplexVector> initial;  // used by restart 0 when present
};

// Projected gradient descent on the unit sphere with backtracking line
// search (Barzilai-Borwein initial step); fresh Haar-random restart on
// stagnation. Accepts at tol_sic, then polishes in 50-iteration rounds
// until the orbit certifies as a SIC well below verification tolerance.
Fiducial find_fiducial(Eigen::Index d, std::uint64_t seed, const FindFiducialOptions& opts = {});

// || sum_k Pi_k (x) Pi_k - (2d/(d+1)) P_sym ||_F; zero for 2-designs.
double two_design_residual(const SicProjectors& sic);

}  // namespace micbench
