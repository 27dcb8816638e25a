#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "chebband/interval_system.hpp"

namespace chebband {

struct QuadratureError : std::runtime_error {
    double achieved;
    QuadratureError(const std::string& what, double est) : std::runtime_error(what), achieved(est) {}
};

/// Tuning knobs shared by the integration routines.
struct QuadConfig {
    int base_nodes = 32;      // Gauss-Legendre nodes per panel at the coarsest level
    int max_doublings = 9;    // refinement budget before giving up
    double tol = 1e-12;       // target absolute error (scale-relative where noted)
};

/// Gauss-Legendre nodes and weights on [-1,1]; cached per order.
const std::vector<double>& gauss_nodes(int n);
const std::vector<double>& gauss_weights(int n);

using RealFn = std::function<double(double)>;
using CplxFn = std::function<cplx(cplx)>;

/// integral_0^pi f(theta) dtheta with node doubling until the estimate settles.
double integrate_theta(const RealFn& f, double theta_lo, double theta_hi, const QuadConfig& cfg);

/// integral_a^b f(x) dx for smooth f, adaptive bisection + Gauss-Legendre.
double integrate_smooth(const RealFn& f, double a, double b, const QuadConfig& cfg);

/// integral_lo^hi F(x) / sqrt((x-lo)(hi-x)) dx.  The substitution
/// x = m + w cos(theta) removes both endpoint singularities exactly.
double integrate_endpoint_singular(const RealFn& F, double lo, double hi, const QuadConfig& cfg);

/// Same integrand, but only over [x0, hi] (singular right end).
double integrate_endpoint_singular_right(const RealFn& F, double lo, double hi, double x0,
                                         const QuadConfig& cfg);
/// ... and over [lo, x0] (singular left end).
double integrate_endpoint_singular_left(const RealFn& F, double lo, double hi, double x0,
                                        const QuadConfig& cfg);

/// Principal value of integral_lo^hi F(x) / ((x-c) sqrt((x-lo)(hi-x))) dx for
/// c strictly inside.  Uses the cosine substitution and then subtracts the
/// pole analytically: the PV of dtheta/(cos theta - cos theta_c) over [0,pi]
/// vanishes, so only the smooth difference quotient remains.
double integrate_pv(const RealFn& F, double lo, double hi, double c, const QuadConfig& cfg);

/// Principal value of integral_a^b F(t)/(t-c) dt for F smooth on [a,b] and
/// a < c < b (no endpoint weight).
double integrate_pv_plain(const RealFn& F, double a, double b, double c, const QuadConfig& cfg);

/// Straight-segment contour integral of a complex integrand.
cplx integrate_segment(const CplxFn& f, cplx z0, cplx z1, const QuadConfig& cfg);

/// Adaptive integral of a complex-valued function of a real variable.
cplx integrate_adaptive_cplx(const std::function<cplx(double)>& f, double a, double b,
                             const QuadConfig& cfg);

/// integral_a^inf f(x) dx for f decaying like 1/x^2 or faster; maps the tail
/// through u = 1/x.  `f` must accept arbitrarily large arguments.
double integrate_to_infinity(const RealFn& f, double a, const QuadConfig& cfg);

/// Spec'd entry point: band/gap/principal-value integral dispatch.
enum class IntegralKind { Band, Gap, PrincipalValue };
double band_integral(const RealFn& smooth_part, const Interval& iv, IntegralKind kind,
                     double pole, const QuadConfig& cfg);

}  // namespace chebband
