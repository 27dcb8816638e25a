#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebband {

using cplx = std::complex<double>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double mid() const { return 0.5 * (lo + hi); }
    double halfwidth() const { return 0.5 * (hi - lo); }
    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
    bool contains_strict(double x) const { return x > lo && x < hi; }
};

/// Where a real point sits relative to the band system.
enum class PointLocation { Band, BandEndpoint, Gap, Exterior };

struct LocateResult {
    PointLocation kind;
    int index;  // band index (1-based) for Band/BandEndpoint, gap index for Gap, -1 otherwise
};

/// A finite union of l >= 1 disjoint closed intervals ("bands")
/// E = [a_1,a_2] u ... u [a_{2l-1},a_{2l}], a_1 < a_2 < ... < a_{2l}.
/// The open intervals between consecutive bands are the "gaps".
/// Immutable after construction; all member functions are const and pure.
class IntervalSystem {
  public:
    /// Validates and stores the endpoint list. Throws std::invalid_argument on
    /// odd count, fewer than two points, non-increasing or non-finite entries.
    explicit IntervalSystem(std::vector<double> endpoints);

    int num_bands() const { return l_; }
    int num_gaps() const { return l_ - 1; }
    int genus() const { return l_ - 1; }

    const std::vector<double>& endpoints() const { return a_; }
    double endpoint(int i) const { return a_.at(static_cast<size_t>(i) - 1); }  // 1-based a_i

    /// k = 1..l
    Interval band(int k) const { return {a_[2 * (size_t)k - 2], a_[2 * (size_t)k - 1]}; }
    /// j = 1..l-1, the open interval (a_{2j}, a_{2j+1})
    Interval gap(int j) const { return {a_[2 * (size_t)j - 1], a_[2 * (size_t)j]}; }
    Interval hull() const { return {a_.front(), a_.back()}; }
    double diameter() const { return a_.back() - a_.front(); }

    LocateResult locate(double x) const;
    bool on_set(double x) const;

    /// H(z) = prod_{i=1}^{2l} (z - a_i)
    cplx H(cplx z) const;
    double H(double x) const;

    /// Branch of sqrt(H) that is analytic on the closed upper half-plane cut
    /// along the bands, fixed by sqrt(H(x)) > 0 for x > a_{2l}.  On a band,
    /// the boundary value from above is purely imaginary; on a gap or outside
    /// the hull it is real with alternating sign.  For Im z < 0 the value is
    /// conj(sqrt_H_plus(conj z)), i.e. the continuation across the gaps.
    cplx sqrt_H_plus(cplx z) const;

    /// sqrt_H_plus at a real point of gap j: equals (-1)^(l-j) sqrt(H(x)).
    double sqrt_H_gap(double x, int j) const;
    /// sqrt_H_plus on band k divided by i: (-1)^(l-k) sqrt(-H(x)).
    double sqrt_H_band_over_i(double x, int k) const;

    /// Sign (-1)^(l-k) attached to band k.
    double band_sign(int k) const { return ((l_ - k) % 2 == 0) ? 1.0 : -1.0; }

    /// Signed reciprocal density 1/h(x) = (-1)^(l-k) / (pi sqrt(-H(x))) on the
    /// interior of band k, 0 off the bands.  At a band endpoint returns a
    /// signed infinity; integrals against 1/h must go through the singular
    /// quadrature routines, never through pointwise sums near the edges.
    double h_inv(double x) const;

    bool operator==(const IntervalSystem& o) const { return a_ == o.a_; }

  private:
    std::vector<double> a_;
    int l_;
};

/// Convenience factory mirroring the JSON config {"endpoints": [...]}.
IntervalSystem validate_system(const std::vector<double>& endpoints);

}  // namespace chebband
