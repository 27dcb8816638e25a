#include "chebband/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace chebband {

Weight Weight::unit() { return Weight(); }

Weight Weight::polynomial(double sign, std::vector<PolyRoot> roots, bool reciprocal) {
    if (sign != 1.0 && sign != -1.0) throw std::invalid_argument("weight sign must be +-1");
    Weight w;
    w.kind_ = Kind::Polynomial;
    w.sign_ = sign;
    w.reciprocal_ = reciprocal;
    for (auto& r : roots) {
        if (r.mult < 1) throw std::invalid_argument("root multiplicity must be >= 1");
        if (r.w.imag() < 0.0) r.w = std::conj(r.w);
        w.roots_.push_back(r);
    }
    return w;
}

double Weight::BandInterp::eval(double t) const {
    double num = 0.0, den = 0.0;
    for (size_t j = 0; j < x.size(); ++j) {
        if (t == x[j]) return v[j];
        double term = bw[j] / (t - x[j]);
        num += term * v[j];
        den += term;
    }
    return num / den;
}

Weight Weight::sampled(const IntervalSystem& sys, std::vector<double> grid,
                       std::vector<double> values) {
    if (grid.size() != values.size() || grid.size() < 2)
        throw std::invalid_argument("sampled weight: grid/values size mismatch");
    auto interps = std::make_shared<std::vector<BandInterp>>();
    for (int k = 1; k <= sys.num_bands(); ++k) {
        BandInterp bi;
        bi.iv = sys.band(k);
        for (size_t i = 0; i < grid.size(); ++i)
            if (grid[i] >= bi.iv.lo - 1e-14 && grid[i] <= bi.iv.hi + 1e-14) {
                bi.x.push_back(grid[i]);
                bi.v.push_back(values[i]);
            }
        if (bi.x.size() < 2)
            throw std::invalid_argument("sampled weight: band " + std::to_string(k) +
                                        " has fewer than 2 sample points");
        bi.bw.assign(bi.x.size(), 1.0);
        for (size_t j = 0; j < bi.x.size(); ++j)
            for (size_t i = 0; i < bi.x.size(); ++i)
                if (i != j) bi.bw[j] /= (bi.x[j] - bi.x[i]);
        interps->push_back(std::move(bi));
    }
    Weight w;
    w.kind_ = Kind::Sampled;
    w.interp_ = std::move(interps);
    return w;
}

Weight Weight::from_function(const IntervalSystem& sys, const std::function<double(double)>& f,
                             int pts_per_band) {
    std::vector<double> grid, values;
    for (int k = 1; k <= sys.num_bands(); ++k) {
        Interval b = sys.band(k);
        for (int i = 0; i < pts_per_band; ++i) {
            double th = M_PI * i / (pts_per_band - 1);
            double x = b.mid() + b.halfwidth() * std::cos(th);
            grid.push_back(x);
            values.push_back(f(x));
        }
    }
    return sampled(sys, std::move(grid), std::move(values));
}

double Weight::rho(double x) const {
    double p = sign_;
    for (const auto& r : roots_) {
        if (r.w.imag() == 0.0) {
            for (int m = 0; m < r.mult; ++m) p *= (x - r.w.real());
        } else {
            double dr = x - r.w.real();
            double q = dr * dr + r.w.imag() * r.w.imag();
            for (int m = 0; m < r.mult; ++m) p *= q;
        }
    }
    return p;
}

double Weight::operator()(double x) const {
    switch (kind_) {
        case Kind::Unit:
            return 1.0;
        case Kind::Polynomial: {
            double p = rho(x);
            return reciprocal_ ? 1.0 / p : p;
        }
        case Kind::Sampled: {
            const BandInterp* best = nullptr;
            double dist = 1e300;
            for (const auto& bi : *interp_) {
                double d = (x < bi.iv.lo) ? bi.iv.lo - x : (x > bi.iv.hi ? x - bi.iv.hi : 0.0);
                if (d < dist) {
                    dist = d;
                    best = &bi;
                }
            }
            return best->eval(x);
        }
    }
    return 1.0;
}

double Weight::log_value(double x) const {
    if (kind_ == Kind::Polynomial) {
        // sum the logs root by root; more accurate than log of the product
        double s = 0.0;
        for (const auto& r : roots_) {
            if (r.w.imag() == 0.0)
                s += r.mult * std::log(std::abs(x - r.w.real()));
            else {
                double dr = x - r.w.real();
                s += r.mult * std::log(dr * dr + r.w.imag() * r.w.imag());
            }
        }
        return reciprocal_ ? -s : s;
    }
    return std::log((*this)(x));
}

int Weight::poly_degree() const {
    int d = 0;
    for (const auto& r : roots_) d += (r.w.imag() == 0.0) ? r.mult : 2 * r.mult;
    return d;
}

double Weight::poly_leading() const { return sign_; }

Poly Weight::rho_poly() const {
    Poly p({sign_});
    for (const auto& r : roots_) {
        Poly f;
        if (r.w.imag() == 0.0)
            f = Poly({-r.w.real(), 1.0});
        else
            f = Poly({std::norm(r.w), -2.0 * r.w.real(), 1.0});
        for (int m = 0; m < r.mult; ++m) p = p * f;
    }
    return p;
}

void Weight::check_positive(const IntervalSystem& sys, int grid_per_band) const {
    for (int k = 1; k <= sys.num_bands(); ++k) {
        Interval b = sys.band(k);
        for (int i = 0; i <= grid_per_band; ++i) {
            double x = b.lo + b.length() * i / grid_per_band;
            if (!((*this)(x) > 0.0))
                throw std::domain_error("weight is not strictly positive on the bands");
        }
    }
}

}  // namespace chebband
