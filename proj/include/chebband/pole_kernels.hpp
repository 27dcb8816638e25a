#pragma once

#include "chebband/potential.hpp"

namespace chebband {

/// Green's function data for a pole at a real point c off the closed bands:
/// the degree-(l-1) polynomial r_c with vanishing principal-value gap
/// integrals of r_c(t)/((t-c) sqrt(H)) and normalization r_c(c) = -sqrt(H)(c)
/// on the upper branch, plus the derived evaluators.
///
/// A pole sitting exactly on a band endpoint is degenerate: the associated
/// multiplicative Green's function collapses to the constant 1, so green and
/// phase vanish identically and the harmonic measures take their 0/1
/// boundary values.
class GreenPole {
  public:
    static GreenPole make(const PotentialTable& table, double c);

    double pole() const { return c_; }
    bool degenerate() const { return degenerate_; }
    const Poly& numerator() const { return r_; }

    /// omega_k(c), k = 1..l
    double omega(int k) const { return omega_.at(static_cast<size_t>(k) - 1); }
    const std::vector<double>& omega_all() const { return omega_; }

    /// g(x, c) for real x off the closed bands (0 for boundary points).
    double green(double x) const;
    double green(cplx z) const;

    /// Boundary phase arg phi^+(x; c) for x on E, anchored to 0 at a_{2l};
    /// includes the -pi jump picked up when the walk from a_{2l} passes the
    /// pole inside a gap.
    double phase(double x) const;

  private:
    const PotentialTable* T_ = nullptr;
    double c_ = 0.0;
    bool degenerate_ = false;
    int endpoint_band_ = 0;   // for the degenerate case: band whose endpoint c is
    bool endpoint_is_lo_ = false;
    int gap_index_ = 0;       // gap containing c, 0 when exterior
    Poly r_;
    std::vector<double> omega_;

    double green_real_axis(double x) const;
};

/// Conjugate pair of complex poles {w, conj(w)}, Im w > 0.  Works with the
/// combined real kernel q(t)/Q(t), Q(t) = (t-w)(t-conj w), q of degree l,
/// so that every evaluator below refers to the symmetric sum over the pair.
class GreenPolePair {
  public:
    static GreenPolePair make(const PotentialTable& table, cplx w);

    cplx pole() const { return w_; }
    const Poly& numerator() const { return q_; }

    /// omega_k(w) + omega_k(conj w)
    double omega_pair(int k) const { return omega_.at(static_cast<size_t>(k) - 1); }

    /// g(x, w) + g(x, conj w) for real x off the closed bands.
    double green_pair(double x) const;
    double green_pair(cplx z) const;

    /// arg [phi(.;w) phi(.;conj w)]^+(x) on E, anchored 0 at a_{2l}.
    double phase_pair(double x) const;

  private:
    const PotentialTable* T_ = nullptr;
    cplx w_;
    Poly q_;
    std::vector<double> omega_;

    double Q(double t) const {
        double dr = t - w_.real();
        return dr * dr + w_.imag() * w_.imag();
    }
};

/// d omega_k / dc for c strictly inside gap j, k = 1..l-1: the gradient of
/// the harmonic measures along the gap, obtained from the period system
/// B^T y = 2 p_k(c)/sqrtH_gap(c).  Blows up like 1/sqrt at the gap ends.
Eigen::VectorXd omega_gradient(const PotentialTable& table, double c, int j);

}  // namespace chebband
