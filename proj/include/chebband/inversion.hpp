#pragma once

#include "chebband/szego.hpp"

namespace chebband {

struct InversionSolution {
    int n = -1;
    std::vector<double> gamma;
    std::vector<int> sigma;
    std::vector<double> c;                // one point per closed gap
    std::vector<bool> endpoint_flags;     // c_j sits on a gap endpoint
    double residual = 0.0;                // torus max-norm defect of the target system
    double mod1_defect = 0.0;             // defect of the mod-1 form over interior points
    int iterations = 0;
    bool converged = false;
};

/// F_k(pts) = sum_j omega_k(pts_j), k = 1..l-1 (pts_j in the closed gap j).
std::vector<double> abel_forward(const PotentialTable& T, const std::vector<double>& pts);

/// The torus map: half the forward sums; points must be strictly interior.
std::vector<double> abel_tilde(const PotentialTable& T, const std::vector<double>& pts);

/// Solve sum_j omega_k(c_j) = gamma_k (mod 2) for one c_j per closed gap.
/// Damped Newton on gap coordinates with the analytic Jacobian, per-coordinate
/// clamping, endpoint snapping, and a homotopy fallback.  `init` overrides the
/// gap-midpoint start.
InversionSolution solve_inversion(const PotentialTable& T, const std::vector<double>& gamma,
                                  const std::vector<double>* init = nullptr);

/// gamma_n composed with solve_inversion; fills degree/phase data and the
/// mod-1 equivalence defect.
InversionSolution solve_for_n(const PotentialTable& T, const Weight& W, int n);

struct PeriodicSchedule {
    int N = 0;
    std::vector<int> m;                        // omega_k(inf) = m_k / N
    std::vector<std::vector<double>> c;        // c[b] for b = 0..N-1
    std::vector<std::vector<bool>> endpoint;   // endpoint flags per b
    double max_period_defect = 0.0;            // over all verified repetitions
};

/// Verifies rational harmonic measures with denominator N, solves the first
/// period, and checks c_{j,b} = c_{j,b+kN} for k = 1..B_max.
PeriodicSchedule periodic_schedule(const PotentialTable& T, const Weight& W, int N, int B_max,
                                   double rational_tol = 1e-8);

}  // namespace chebband
