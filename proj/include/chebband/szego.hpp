#pragma once

#include "chebband/pole_kernels.hpp"
#include "chebband/weights.hpp"

namespace chebband {

/// Log-moments of the weight against the interior normal derivatives of the
/// harmonic measures, L_k = (1/2pi) int_E log W dω_k/dn^+ |dxi|, k = 1..l-1.
std::vector<double> log_moments(const PotentialTable& T, const Weight& W);
/// Same, extended to all l bands (the last row closes the partition of unity).
std::vector<double> log_moments_full(const PotentialTable& T, const Weight& W);

struct GammaData {
    std::vector<double> gamma;  // in [0,1]
    std::vector<int> sigma;     // the unique binary shifts
};

/// gamma_{k,n} = n omega_k(inf) + L_k + sigma_{k,n} reduced mod 2 into [0,1].
/// Ties at exactly 1 resolve to sigma = 0.
GammaData gamma_n(const PotentialTable& T, const Weight& W, int n);
GammaData gamma_from_raw(const PotentialTable& T, const std::vector<double>& L, int n);

/// The multiplicative Szego function of a weight: zero- and pole-free off the
/// bands, positive at infinity, boundary moduli satisfying
/// sqrt(W^+ W^-) = W on E.  Built as
///   W(z) = e^{mu_0} prod_j [(z - c^_j) phi(z, c^_j)/phi(z, inf)]^{mu_j} I(z)
/// with gap-midpoint anchors c^_j: the exponents solve the l moment
/// conditions int x^s u / h = 0 for the residual log-weight u, which make the
/// Cauchy-type factor I single-valued with I(inf) = 1.
class SzegoData {
  public:
    double value_at_inf() const { return Winf_; }
    const std::vector<double>& mu() const { return mu_; }
    const std::vector<double>& anchors() const { return chat_; }

    double u(double x) const;            // residual log-weight on E
    double psi(double x) const;          // conjugate phase of I on E (PV transform)
    double log_modulus(cplx z) const;    // log |W(z)| off E
    double modulus(cplx z) const { return std::exp(log_modulus(z)); }
    double boundary_modulus(double x) const;  // |W^(+-)(x)| on E
    double boundary_phase(double x) const;    // arg W^+(x), anchored with the phi-phases
    /// W(z) W(z~) across the involution: closed form e^{2mu0} prod (z-c^)^{2mu_j}.
    cplx reflected_value(cplx z) const;
    /// Cauchy factor I(z) off E (single-valued, -> 1 at infinity).
    cplx I_value(cplx z) const;
    /// log I(z) = sqrtH^+(z) * (Cauchy transform of the residual log-weight).
    cplx I_log(cplx z) const;
    const GreenPole& anchor_pole(size_t j) const { return anchors_.at(j); }

  private:
    friend SzegoData szego_function(const PotentialTable&, const Weight&);
    const PotentialTable* T_ = nullptr;
    Weight W_;
    std::vector<double> mu_;     // mu_0, mu_1..mu_{l-1}
    std::vector<double> chat_;   // gap midpoints
    std::vector<GreenPole> anchors_;
    double Winf_ = 1.0;

    cplx cauchy(cplx z) const;   // (1/pi) int_E u(t) s(t) / ((z-t) sqrt(-H)) dt
};

SzegoData szego_function(const PotentialTable& T, const Weight& W);

/// Szego function of a polynomial weight rho assembled from its roots:
/// Omega(z)/rho(z) = prod_j (phi(z, w_j)/phi(z, inf))^{nu_j}.
class OmegaProduct {
  public:
    double value_at_inf() const { return Oinf_; }
    double log_modulus(cplx z) const;
    double modulus(cplx z) const { return std::exp(log_modulus(z)); }
    /// arg (Omega^+/rho)(x) on E = sum_j nu_j (arg phi^+(x,w_j) - arg phi^+(x,inf)).
    double boundary_phase(double x) const;

  private:
    friend OmegaProduct omega_product(const PotentialTable&, const Weight&);
    const PotentialTable* T_ = nullptr;
    Weight rho_;
    std::vector<GreenPole> real_poles_;
    std::vector<int> real_mult_;
    std::vector<GreenPolePair> pair_poles_;
    std::vector<int> pair_mult_;
    double Oinf_ = 1.0;
};

OmegaProduct omega_product(const PotentialTable& T, const Weight& rho);

/// Positive polynomial approximation of a weight: best uniform fit of the
/// requested degree, clipped to positivity, then a Newton correction of the l
/// lowest coefficients driving the log-moment mismatch toward zero.
struct WeightPolyFit {
    std::vector<double> cheb;      // base fit, Chebyshev basis on the hull
    Interval hull;
    Poly correction;               // low-order monomial correction
    double shift = 0.0;            // positivity clip
    double sup_rel_error = 0.0;    // ||rho/W - 1||_inf over a dense grid
    Eigen::VectorXd moment_mismatch;  // int x^s log(rho/W) / h dx, s = 0..l-1

    double operator()(double x) const;
    Weight as_weight(const IntervalSystem& sys) const;
};

WeightPolyFit approx_weight_poly(const PotentialTable& T, const Weight& W, int nu);

}  // namespace chebband
