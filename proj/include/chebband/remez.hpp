#pragma once

#include <optional>

#include "chebband/potential.hpp"
#include "chebband/weights.hpp"

namespace chebband {

struct RemezConfig {
    double tol = 1e-10;        // relative equioscillation gap at convergence
    int max_iterations = 200;
    int grid_factor = 30;      // residual scan grid: grid_factor*n + 50 per band
};

/// Monic weighted minimax result.  The polynomial is stored in the Chebyshev
/// basis of the hull, M(x) = sum_k coeff[k] T_k(u(x)), u affine hull -> [-1,1];
/// the top coefficient is pinned by monicity.
struct RemezResult {
    int n = 0;
    Interval hull;
    std::vector<double> coeff;            // size n+1
    double deviation = 0.0;               // ||M/W||_inf over E
    double vp_lower = 0.0;                // de la Vallee Poussin lower bound
    double certificate_gap = 0.0;         // (deviation - vp_lower)/deviation
    std::vector<double> alternation_x;    // n+1 points, increasing
    std::vector<int> alternation_sign;
    int iterations = 0;
    bool converged = false;

    double operator()(double x) const;
    /// Coefficients in the monomial basis (use only for modest degrees).
    std::vector<double> monomial_coeffs() const;
};

/// Weighted monic minimax polynomial on the band system by multi-point Remez
/// exchange.  `table` (optional) supplies the equilibrium masses used to seed
/// the reference; without it a table is built internally.
RemezResult minimax_monic(const IntervalSystem& sys, const Weight& W, int n,
                          const RemezConfig& cfg = {}, const PotentialTable* table = nullptr);

struct ZeroReport {
    std::vector<int> per_band;
    std::vector<std::vector<double>> band_zeros;
    std::vector<std::optional<double>> gap_zeros;  // at most one per gap
    int total = 0;
};

ZeroReport analyze_zeros(const IntervalSystem& sys, const RemezResult& res);

/// Best uniform (unweighted, non-monic) approximation to f on the bands by a
/// polynomial of the given degree; same exchange engine.
struct UniformFit {
    Interval hull;
    std::vector<double> coeff;  // Chebyshev basis on the hull, size deg+1
    double error = 0.0;
    bool converged = false;
    double operator()(double x) const;
};

UniformFit best_uniform_poly(const IntervalSystem& sys, const std::function<double(double)>& f,
                             int deg, double tol = 1e-12);

/// Clenshaw evaluation of a Chebyshev series at u in [-1,1].
double cheb_eval(const std::vector<double>& coeff, double u);

}  // namespace chebband
