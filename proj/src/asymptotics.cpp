#include "chebband/asymptotics.hpp"

#include <cmath>

namespace chebband {

AsymptoticModel AsymptoticModel::make(const PotentialTable& T, const Weight& W, int n) {
    AsymptoticModel M;
    M.T_ = &T;
    M.W_ = W;
    M.n_ = n;
    M.szego_ = szego_function(T, W);
    M.sol_ = solve_for_n(T, W, n);
    for (size_t j = 0; j < M.sol_.c.size(); ++j)
        if (!M.sol_.endpoint_flags[j]) M.cpoles_.push_back(GreenPole::make(T, M.sol_.c[j]));
    if (W.kind() == Weight::Kind::Polynomial) {
        for (const auto& r : W.roots()) {
            if (r.w.imag() == 0.0) {
                M.wreal_.push_back(GreenPole::make(T, r.w.real()));
                M.wreal_mult_.push_back(r.mult);
            } else {
                M.wpair_.push_back(GreenPolePair::make(T, r.w));
                M.wpair_mult_.push_back(r.mult);
            }
        }
    }
    return M;
}

double AsymptoticModel::theta(double x) const {
    // band endpoints evaluate as one-sided interior limits
    auto loc = T_->system().locate(x);
    if (loc.kind == PointLocation::BandEndpoint) {
        Interval b = T_->system().band(loc.index);
        double nudge = 1e-9 * b.length();
        x = (x == b.lo) ? b.lo + nudge : b.hi - nudge;
    }
    double th = n_ * T_->phase_inf(x);
    for (const auto& p : cpoles_) th -= p.phase(x);
    th += szego_.boundary_phase(x);
    return th;
}

double AsymptoticModel::predict_on_E(double x) const { return 2.0 * W_(x) * std::cos(theta(x)); }

double AsymptoticModel::psi_log_modulus(cplx z) const {
    double v = n_ * T_->green_inf(z);
    for (const auto& p : cpoles_) v -= p.green(z);
    return v + szego_.log_modulus(z);
}

cplx AsymptoticModel::psi(cplx z) const {
    const IntervalSystem& sys = T_->system();
    bool lower = z.imag() < 0.0;
    if (lower) z = std::conj(z);

    // combined kernel of d log(phi(.,inf)^n / prod phi(.,c_j) * anchor part of W)
    const auto& mu = szego_.mu();
    const auto& chat = szego_.anchors();

    auto kernel = [&](cplx t) -> cplx {
        cplx num = cplx(static_cast<double>(n_)) * T_->r_inf()(t);
        for (const auto& p : cpoles_) num -= cplx(p.numerator()(t)) / (t - p.pole());
        for (size_t j = 0; j < chat.size(); ++j)
            num += mu[j + 1] * (cplx(szego_.anchor_pole(j).numerator()(t)) / (t - chat[j]) -
                                cplx(T_->r_inf()(t)));
        return num / sys.sqrt_H_plus(t);
    };

    double xr = sys.endpoints().back() + std::max(1.0, 0.5 * sys.diameter());
    for (const auto& p : cpoles_) xr = std::max(xr, p.pole() + 1.0);
    double base = n_ * T_->green_inf(xr);
    for (const auto& p : cpoles_) base -= p.green(xr);
    for (size_t j = 0; j < chat.size(); ++j)
        base += mu[j + 1] * (szego_.anchor_pole(j).green(xr) - T_->green_inf(xr));

    cplx path = 0.0;
    if (z != cplx(xr, 0.0)) {
        double Y = std::max(z.imag(), 0.5 * sys.diameter());
        cplx a0(xr, 0.0), a1(xr, Y), a2(z.real(), Y);
        path = integrate_segment(kernel, a0, a1, T_->quad()) +
               integrate_segment(kernel, a1, a2, T_->quad()) +
               integrate_segment(kernel, a2, z, T_->quad());
    }

    cplx logw_rest = mu[0];
    for (size_t j = 0; j < chat.size(); ++j) logw_rest += mu[j + 1] * std::log(z - chat[j]);
    cplx logpsi = base + path + logw_rest + sys.sqrt_H_plus(z) * szego_.I_log(z);
    cplx val = std::exp(logpsi);
    return lower ? std::conj(val) : val;
}

cplx AsymptoticModel::predict_off_E(cplx z) const {
    cplx p = psi(z);
    cplx refl = szego_.reflected_value(z);
    return 0.5 * (p + refl / p);
}

double AsymptoticModel::predict_deviation() const {
    double v = 2.0 * std::pow(T_->capacity(), n_);
    for (const auto& p : cpoles_) v *= std::exp(T_->green_inf(p.pole()));
    return v / szego_.value_at_inf();
}

AsymptoticModel::ZeroCounts AsymptoticModel::predict_zero_counts() const {
    const IntervalSystem& sys = T_->system();
    int l = sys.num_bands();
    auto L = log_moments_full(*T_, W_);
    ZeroCounts zc;
    zc.raw.assign(l, 0.0);
    std::vector<GreenPole> all_poles;
    for (double cj : sol_.c) all_poles.push_back(GreenPole::make(*T_, cj));
    for (int k = 1; k <= l; ++k) {
        double v = n_ * T_->omega_inf()[k - 1] + L[k - 1];
        for (const auto& P : all_poles) v -= P.omega(k);
        zc.raw[k - 1] = v;
    }
    for (int k = 0; k < l; ++k) {
        int r = static_cast<int>(std::lround(zc.raw[k]));
        zc.per_band.push_back(r);
        zc.rounding_defect = std::max(zc.rounding_defect, std::abs(zc.raw[k] - r));
    }
    for (size_t j = 0; j < sol_.c.size(); ++j)
        zc.gap_zero_expected.push_back(!sol_.endpoint_flags[j]);
    return zc;
}

void AsymptoticModel::require_poly() const {
    if (W_.kind() != Weight::Kind::Polynomial || W_.reciprocal())
        throw std::logic_error("rational machinery needs a (non-reciprocal) polynomial weight");
}

double AsymptoticModel::chi(double x) const {
    require_poly();
    int nu = W_.poly_degree();
    double v = (n_ - nu) * T_->phase_inf(x);
    for (size_t i = 0; i < wreal_.size(); ++i) v += wreal_mult_[i] * wreal_[i].phase(x);
    for (size_t i = 0; i < wpair_.size(); ++i) v += wpair_mult_[i] * wpair_[i].phase_pair(x);
    for (const auto& p : cpoles_) v -= p.phase(x);
    return v;
}

double AsymptoticModel::rational_S(double x) const {
    auto loc = T_->system().locate(x);
    if (loc.kind != PointLocation::Band)
        throw std::domain_error("rational_S: x must be strictly inside a band");
    double s = T_->system().band_sign(loc.index);
    return -s * std::sin(chi(x)) / std::sqrt(-T_->system().H(x));
}

double AsymptoticModel::rational_deviation() const {
    require_poly();
    int nu = W_.poly_degree();
    double v = 2.0 * std::pow(T_->capacity(), n_ - nu) / std::abs(W_.poly_leading());
    for (const auto& p : cpoles_) v *= std::exp(T_->green_inf(p.pole()));
    for (size_t i = 0; i < wreal_.size(); ++i)
        v /= std::exp(wreal_mult_[i] * T_->green_inf(wreal_[i].pole()));
    for (size_t i = 0; i < wpair_.size(); ++i)
        v /= std::exp(2.0 * wpair_mult_[i] * T_->green_inf(wpair_[i].pole()));
    return v;
}

}  // namespace chebband
