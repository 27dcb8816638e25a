#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "chebband/interval_system.hpp"
#include "chebband/poly.hpp"

namespace chebband {

/// One root of a polynomial weight.  Im(w) > 0 stands for the conjugate pair
/// {w, conj w}, each carrying multiplicity mult; real roots stand alone.
struct PolyRoot {
    cplx w;
    int mult = 1;
};

/// Positive weight on the band system: either the constant 1, a polynomial
/// rho(x) = sign * prod (x - w_j)^{mult_j} (optionally its reciprocal
/// 1/rho), or a sampled function interpolated per band.
class Weight {
  public:
    enum class Kind { Unit, Polynomial, Sampled };

    static Weight unit();
    /// rho = sign * prod over roots; reciprocal selects W = 1/rho.
    static Weight polynomial(double sign, std::vector<PolyRoot> roots, bool reciprocal = false);
    /// Sampled weight; nodes must cover every band of the system it is used
    /// with.  Barycentric interpolation per band.
    static Weight sampled(const IntervalSystem& sys, std::vector<double> grid,
                          std::vector<double> values);
    /// Sample a callable on per-band Chebyshev grids.
    static Weight from_function(const IntervalSystem& sys, const std::function<double(double)>& f,
                                int pts_per_band = 48);

    Kind kind() const { return kind_; }
    bool is_unit() const { return kind_ == Kind::Unit; }
    bool reciprocal() const { return reciprocal_; }

    double operator()(double x) const;
    double log_value(double x) const;

    // Polynomial-only accessors.
    const std::vector<PolyRoot>& roots() const { return roots_; }
    double sign() const { return sign_; }
    int poly_degree() const;             // conjugate pairs count twice
    double poly_leading() const;         // leading coefficient of rho
    Poly rho_poly() const;               // rho as a dense polynomial
    double rho(double x) const;          // rho(x) regardless of reciprocal flag

    /// Throws std::domain_error if W is not strictly positive on a dense grid
    /// over the bands.
    void check_positive(const IntervalSystem& sys, int grid_per_band = 400) const;

  private:
    Kind kind_ = Kind::Unit;
    double sign_ = 1.0;
    std::vector<PolyRoot> roots_;
    bool reciprocal_ = false;

    struct BandInterp {
        Interval iv;
        std::vector<double> x, v, bw;  // nodes, values, barycentric weights
        double eval(double t) const;
    };
    std::shared_ptr<const std::vector<BandInterp>> interp_;
};

}  // namespace chebband
