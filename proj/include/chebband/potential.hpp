#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>

#include "chebband/interval_system.hpp"
#include "chebband/poly.hpp"
#include "chebband/quadrature.hpp"

namespace chebband {

/// Positive factor rest(t) with -H(t) = (t-lo)(hi-t) * rest(t) on band k.
double rest_band(const IntervalSystem& sys, int k, double t);
/// Positive factor rest(t) with  H(t) = (t-lo)(hi-t) * rest(t) on gap j.
double rest_gap(const IntervalSystem& sys, int j, double t);
/// Real boundary value of sqrt_H_plus on the real axis off the bands.
double sqrtH_real_off_bands(const IntervalSystem& sys, double x);

/// Everything attached to the pole at infinity: the monic polynomial r_inf
/// whose gap integrals against 1/sqrt(H) vanish, the normalized basis of
/// first-kind differentials p_k(z) dz / sqrt(H) with unit alpha-periods, the
/// real beta-period matrix B, the equilibrium masses omega_k(infinity), and
/// the logarithmic capacity.
///
/// Immutable after build_potential_table(); evaluators are const and safe to
/// call concurrently.
class PotentialTable {
  public:
    const IntervalSystem& system() const { return sys_; }
    const QuadConfig& quad() const { return quad_; }

    const Poly& r_inf() const { return r_inf_; }
    /// Numerator polynomial of the k-th normalized differential (k = 1..l-1).
    const Poly& basis_poly(int k) const { return p_.at(static_cast<size_t>(k) - 1); }
    /// Coefficient matrix d (row k-1, col s) with basis_poly(k) = sum_s d(k,s) x^s.
    const Eigen::MatrixXd& d_matrix() const { return d_; }
    const Eigen::MatrixXd& period_matrix() const { return B_; }
    const std::vector<double>& omega_inf() const { return omega_inf_; }
    double capacity() const { return capacity_; }

    /// Green's function g(z, infinity).  Real arguments must lie off the
    /// closed bands; throws std::domain_error otherwise.
    double green_inf(double x) const;
    double green_inf(cplx z) const;

    /// Boundary phase arg phi^+(x; infinity) for x in E, normalized to 0 at
    /// a_{2l}; strictly decreasing in x with total variation pi over E.
    double phase_inf(double x) const;

    /// Interior normal derivative vector (d omega_k / dn^+)(x), k = 1..l-1,
    /// for x strictly inside a band.  Solves the pointwise period system
    /// B^T dens = 2 pi p_k(x)/h(x).
    Eigen::VectorXd boundary_density(double x) const;

    /// Solve B^T y = v (shared factorization; used by density, log-moments
    /// and the inversion Jacobian).
    Eigen::VectorXd solve_Bt(const Eigen::VectorXd& v) const;

    /// integral over E_k of K(t) * (1/h)(t) dt by singular quadrature.
    double band_h_integral(int k, const RealFn& K) const;
    /// integral over E_k of [r(t)/(t-c)] (1/h)(t) dt, stable for poles c
    /// arbitrarily close to the band edge (analytic subtraction of the
    /// closed-form Cauchy kernel of the band).
    double band_pole_integral(int k, const Poly& r, double c) const;
    /// ... restricted to [x0, band_hi].
    double band_h_integral_right(int k, const RealFn& K, double x0) const;
    /// integral over gap_j of K(t)/sqrt(H(t)) dt (positive square root).
    double gap_sqrtH_integral(int j, const RealFn& K) const;

    friend PotentialTable build_potential_table(const IntervalSystem&, const QuadConfig&);

  private:
    PotentialTable(IntervalSystem sys, QuadConfig quad) : sys_(std::move(sys)), quad_(quad) {}

    IntervalSystem sys_;
    QuadConfig quad_;
    Poly r_inf_;
    std::vector<Poly> p_;
    Eigen::MatrixXd d_;
    Eigen::MatrixXd B_;
    Eigen::PartialPivLU<Eigen::MatrixXd> Bt_lu_;
    std::vector<double> omega_inf_;
    double capacity_ = 0.0;

    double green_real_axis(double x) const;
};

PotentialTable build_potential_table(const IntervalSystem& sys, const QuadConfig& quad = {});

/// Capacity of the system alone (builds the r_inf data internally).
double capacity_of(const IntervalSystem& sys, const QuadConfig& quad = {});

}  // namespace chebband
