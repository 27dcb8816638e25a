#include "chebband/interval_system.hpp"

#include <cmath>
#include <limits>

namespace chebband {

IntervalSystem::IntervalSystem(std::vector<double> endpoints) : a_(std::move(endpoints)) {
    if (a_.size() < 2) throw std::invalid_argument("interval system needs at least 2 endpoints");
    if (a_.size() % 2 != 0)
        throw std::invalid_argument("interval system needs an even number of endpoints, got " +
                                    std::to_string(a_.size()));
    for (size_t i = 0; i < a_.size(); ++i) {
        if (!std::isfinite(a_[i])) throw std::invalid_argument("endpoints must be finite");
        if (i > 0 && a_[i] <= a_[i - 1])
            throw std::invalid_argument("endpoints must be strictly increasing");
    }
    l_ = static_cast<int>(a_.size() / 2);
}

LocateResult IntervalSystem::locate(double x) const {
    if (x < a_.front() || x > a_.back()) return {PointLocation::Exterior, -1};
    for (int k = 1; k <= l_; ++k) {
        Interval b = band(k);
        if (x == b.lo || x == b.hi) return {PointLocation::BandEndpoint, k};
        if (x > b.lo && x < b.hi) return {PointLocation::Band, k};
    }
    for (int j = 1; j < l_; ++j)
        if (gap(j).contains_strict(x)) return {PointLocation::Gap, j};
    return {PointLocation::Exterior, -1};
}

bool IntervalSystem::on_set(double x) const {
    auto r = locate(x);
    return r.kind == PointLocation::Band || r.kind == PointLocation::BandEndpoint;
}

cplx IntervalSystem::H(cplx z) const {
    cplx p = 1.0;
    for (double ai : a_) p *= (z - ai);
    return p;
}

double IntervalSystem::H(double x) const {
    double p = 1.0;
    for (double ai : a_) p *= (x - ai);
    return p;
}

cplx IntervalSystem::sqrt_H_plus(cplx z) const {
    if (z.imag() < 0.0) return std::conj(sqrt_H_plus(std::conj(z)));
    // Half-angle product: each factor sqrt(z - a_i) with argument in [0, pi]
    // for Im z >= 0.  Accumulate log-modulus and half-arguments to avoid
    // overflow for large |z| and high degree.
    double logmod = 0.0;
    double arg = 0.0;
    for (double ai : a_) {
        cplx f = z - ai;
        logmod += 0.5 * std::log(std::abs(f));
        double th = std::atan2(f.imag(), f.real());  // in [0, pi] for Im z >= 0
        arg += 0.5 * th;
    }
    return std::polar(std::exp(logmod), arg);
}

double IntervalSystem::sqrt_H_gap(double x, int j) const {
    double s = ((l_ - j) % 2 == 0) ? 1.0 : -1.0;
    return s * std::sqrt(H(x));
}

double IntervalSystem::sqrt_H_band_over_i(double x, int k) const {
    return band_sign(k) * std::sqrt(-H(x));
}

double IntervalSystem::h_inv(double x) const {
    auto r = locate(x);
    if (r.kind == PointLocation::Band) {
        return band_sign(r.index) / (M_PI * std::sqrt(-H(x)));
    }
    if (r.kind == PointLocation::BandEndpoint) {
        return band_sign(r.index) * std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

IntervalSystem validate_system(const std::vector<double>& endpoints) {
    return IntervalSystem(endpoints);
}

}  // namespace chebband
