#include "chebband/pole_kernels.hpp"

#include <cmath>

namespace chebband {

namespace {

constexpr double kEndpointSnap = 1e-13;

/// PV gap moment: fpint_{gap_i} t^s / ((t-c) sqrt(H)) dt (ordinary integral
/// when the pole is not inside gap i).
double gap_pole_moment(const PotentialTable& T, int i, int s, double c) {
    const IntervalSystem& sys = T.system();
    Interval g = sys.gap(i);
    auto F = [&, s](double t) { return std::pow(t, s) / std::sqrt(rest_gap(sys, i, t)); };
    if (g.contains_strict(c)) return integrate_pv(F, g.lo, g.hi, c, T.quad());
    auto Fp = [&](double t) { return F(t) / (t - c); };
    return integrate_endpoint_singular(Fp, g.lo, g.hi, T.quad());
}

}  // namespace

GreenPole GreenPole::make(const PotentialTable& T, double c) {
    const IntervalSystem& sys = T.system();
    int l = sys.num_bands();
    GreenPole P;
    P.T_ = &T;
    P.c_ = c;
    P.omega_.assign(l, 0.0);

    double snap = kEndpointSnap * std::max(1.0, sys.diameter());
    for (int k = 1; k <= l; ++k) {
        Interval b = sys.band(k);
        if (std::abs(c - b.lo) <= snap || std::abs(c - b.hi) <= snap) {
            P.degenerate_ = true;
            P.endpoint_band_ = k;
            P.endpoint_is_lo_ = std::abs(c - b.lo) <= snap;
            // Harmonic measures at a band endpoint of E_k: indicator of E_k.
            P.omega_[k - 1] = 1.0;
            return P;
        }
    }

    auto loc = sys.locate(c);
    if (loc.kind == PointLocation::Band)
        throw std::domain_error("GreenPole: pole must lie off the closed bands");
    P.gap_index_ = (loc.kind == PointLocation::Gap) ? loc.index : 0;

    // Solve for r_c: l-1 principal-value gap conditions plus the residue
    // normalization r_c(c) = -sqrtH^+(c).
    Eigen::MatrixXd M(l, l);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(l);
    for (int i = 1; i <= l - 1; ++i)
        for (int s = 0; s < l; ++s) M(i - 1, s) = gap_pole_moment(T, i, s, c);
    for (int s = 0; s < l; ++s) M(l - 1, s) = std::pow(c, s);
    rhs(l - 1) = -sqrtH_real_off_bands(sys, c);
    Eigen::VectorXd coef = M.partialPivLu().solve(rhs);
    P.r_ = Poly(std::vector<double>(coef.data(), coef.data() + l));

    for (int k = 1; k <= l; ++k) P.omega_[k - 1] = T.band_pole_integral(k, P.r_, c);
    return P;
}

double GreenPole::green_real_axis(double x) const {
    const IntervalSystem& sys = T_->system();
    const auto& a = sys.endpoints();
    int l = sys.num_bands();
    const QuadConfig& cfg = T_->quad();
    auto loc = sys.locate(x);
    if (loc.kind == PointLocation::Band) throw std::domain_error("green: x on the bands");
    if (loc.kind == PointLocation::BandEndpoint) return 0.0;

    auto K = [&](double t) { return r_(t) / (t - c_); };

    if (loc.kind == PointLocation::Exterior && x > a.back()) {
        // int_{a_2l}^{x} r_c(t)/((t-c) sqrt(H)) dt, s-substitution at the
        // branch point; principal value in s when the pole lies inside.
        double a2l = a.back();
        double S = std::sqrt(x - a2l);
        auto restR = [&](double t) {
            double p = 1.0;
            for (size_t i = 0; i + 1 < a.size(); ++i) p *= (t - a[i]);
            return p;
        };
        if (c_ > a2l && c_ < x) {
            double sc = std::sqrt(c_ - a2l);
            auto Psi = [&](double s) {
                double t = a2l + s * s;
                return 2.0 * r_(t) / (std::sqrt(restR(t)) * (s + sc));
            };
            return integrate_pv_plain(Psi, 0.0, S, sc, cfg);
        }
        auto f = [&](double s) {
            double t = a2l + s * s;
            return 2.0 * K(t) / std::sqrt(restR(t));
        };
        return integrate_smooth(f, 0.0, S, cfg);
    }

    double g = 0.0;
    int first_gap = (loc.kind == PointLocation::Gap) ? loc.index : 1;
    for (int i = first_gap; i <= l - 1; ++i) {
        double sgn = ((l - i) % 2 == 0) ? 1.0 : -1.0;
        Interval gp = sys.gap(i);
        auto F = [&](double t) { return r_(t) / std::sqrt(rest_gap(sys, i, t)); };
        auto FK = [&](double t) { return F(t) / (t - c_); };
        bool partial = (loc.kind == PointLocation::Gap && i == first_gap);
        double lo = partial ? x : gp.lo;
        double seg;
        if (c_ > lo && c_ < gp.hi && gap_index_ == i) {
            // pole inside the traversed part of this gap
            seg = integrate_pv(F, gp.lo, gp.hi, c_, cfg);
            if (partial)
                seg -= integrate_endpoint_singular_left(FK, gp.lo, gp.hi, x, cfg);
        } else if (partial) {
            seg = integrate_endpoint_singular_right(FK, gp.lo, gp.hi, x, cfg);
        } else {
            seg = integrate_endpoint_singular(FK, gp.lo, gp.hi, cfg);
        }
        g -= sgn * seg;
    }
    if (loc.kind == PointLocation::Exterior) {  // x < a_1
        double a1 = a.front();
        double sl = (l % 2 == 0) ? 1.0 : -1.0;
        auto restL = [&](double t) {
            double p = 1.0;
            for (size_t i = 1; i < a.size(); ++i) p *= (a[i] - t);
            return p;
        };
        double S = std::sqrt(a1 - x);
        double seg;
        if (c_ < a1 && c_ > x) {
            double sc = std::sqrt(a1 - c_);
            auto Psi = [&](double s) {
                double t = a1 - s * s;
                return 2.0 * r_(t) / (std::sqrt(restL(t)) * (s + sc));
            };
            // t - c = sc^2 - s^2 = -(s - sc)(s + sc)
            seg = -integrate_pv_plain(Psi, 0.0, S, sc, cfg);
        } else {
            auto f = [&](double s) {
                double t = a1 - s * s;
                return 2.0 * K(t) / std::sqrt(restL(t));
            };
            seg = integrate_smooth(f, 0.0, S, cfg);
        }
        g -= sl * seg;
    }
    return g;
}

double GreenPole::green(double x) const {
    if (degenerate_) return 0.0;
    return green_real_axis(x);
}

double GreenPole::green(cplx z) const {
    if (degenerate_) return 0.0;
    if (z.imag() == 0.0) return green_real_axis(z.real());
    if (z.imag() < 0.0) z = std::conj(z);
    const IntervalSystem& sys = T_->system();
    double xr = std::max(sys.endpoints().back(), c_) + std::max(1.0, 0.5 * sys.diameter());
    double g0 = green_real_axis(xr);
    double Y = std::max(z.imag(), 0.5 * sys.diameter());
    auto f = [&](cplx t) { return cplx(r_(t)) / ((t - c_) * sys.sqrt_H_plus(t)); };
    cplx anchor(xr, 0.0), up(xr, Y), across(z.real(), Y);
    cplx path = integrate_segment(f, anchor, up, T_->quad()) +
                integrate_segment(f, up, across, T_->quad()) +
                integrate_segment(f, across, z, T_->quad());
    return g0 + path.real();
}

double GreenPole::phase(double x) const {
    if (degenerate_) return 0.0;
    const IntervalSystem& sys = T_->system();
    auto loc = sys.locate(x);
    if (loc.kind != PointLocation::Band && loc.kind != PointLocation::BandEndpoint)
        throw std::domain_error("phase: x must lie on the bands");
    int k = loc.index;
    auto K = [&](double t) { return r_(t) / (t - c_); };
    double partial;
    if (loc.kind == PointLocation::Band) {
        partial = T_->band_h_integral_right(k, K, x);
    } else {
        Interval b = sys.band(k);
        partial = (x == b.lo) ? T_->band_h_integral(k, K) : 0.0;
    }
    double tail = 0.0;
    for (int kk = k + 1; kk <= sys.num_bands(); ++kk) tail += omega_[kk - 1];
    double ph = M_PI * (partial + tail);
    // Walking left from a_{2l}, passing the pole inside a gap costs -pi.
    if (gap_index_ > 0 && c_ > x) ph -= M_PI;
    return ph;
}

GreenPolePair GreenPolePair::make(const PotentialTable& T, cplx w) {
    if (w.imag() == 0.0) throw std::invalid_argument("GreenPolePair: pole must be complex");
    if (w.imag() < 0.0) w = std::conj(w);
    const IntervalSystem& sys = T.system();
    int l = sys.num_bands();
    GreenPolePair P;
    P.T_ = &T;
    P.w_ = w;

    // q in P_l with: real gap conditions int q/(Q sqrt H) = 0, and the
    // residue condition q(w) = -(w - conj w) sqrtH^+(w)  (two real rows).
    int n = l + 1;
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int i = 1; i <= l - 1; ++i) {
        Interval g = sys.gap(i);
        for (int s = 0; s <= l; ++s) {
            auto F = [&, s](double t) {
                return std::pow(t, s) / (P.Q(t) * std::sqrt(rest_gap(sys, i, t)));
            };
            M(i - 1, s) = integrate_endpoint_singular(F, g.lo, g.hi, T.quad());
        }
    }
    cplx target = -(w - std::conj(w)) * sys.sqrt_H_plus(w);
    cplx wp = 1.0;
    for (int s = 0; s <= l; ++s) {
        M(l - 1, s) = wp.real();
        M(l, s) = wp.imag();
        wp *= w;
    }
    rhs(l - 1) = target.real();
    rhs(l) = target.imag();
    Eigen::VectorXd coef = M.partialPivLu().solve(rhs);
    P.q_ = Poly(std::vector<double>(coef.data(), coef.data() + n));

    P.omega_.assign(l, 0.0);
    for (int k = 1; k <= l; ++k)
        P.omega_[k - 1] = T.band_h_integral(k, [&](double t) { return P.q_(t) / P.Q(t); });
    return P;
}

double GreenPolePair::green_pair(double x) const {
    const IntervalSystem& sys = T_->system();
    const auto& a = sys.endpoints();
    int l = sys.num_bands();
    const QuadConfig& cfg = T_->quad();
    auto loc = sys.locate(x);
    if (loc.kind == PointLocation::Band) throw std::domain_error("green_pair: x on the bands");
    if (loc.kind == PointLocation::BandEndpoint) return 0.0;

    auto K = [&](double t) { return q_(t) / Q(t); };

    if (loc.kind == PointLocation::Exterior && x > a.back()) {
        double a2l = a.back();
        auto f = [&](double s) {
            double t = a2l + s * s;
            double rest = 1.0;
            for (size_t i = 0; i + 1 < a.size(); ++i) rest *= (t - a[i]);
            return 2.0 * K(t) / std::sqrt(rest);
        };
        return integrate_smooth(f, 0.0, std::sqrt(x - a2l), cfg);
    }
    double g = 0.0;
    int first_gap = (loc.kind == PointLocation::Gap) ? loc.index : 1;
    for (int i = first_gap; i <= l - 1; ++i) {
        double sgn = ((l - i) % 2 == 0) ? 1.0 : -1.0;
        Interval gp = sys.gap(i);
        auto FK = [&](double t) { return K(t) / std::sqrt(rest_gap(sys, i, t)); };
        double seg;
        if (loc.kind == PointLocation::Gap && i == first_gap)
            seg = integrate_endpoint_singular_right(FK, gp.lo, gp.hi, x, cfg);
        else
            seg = integrate_endpoint_singular(FK, gp.lo, gp.hi, cfg);
        g -= sgn * seg;
    }
    if (loc.kind == PointLocation::Exterior) {
        double a1 = a.front();
        double sl = (l % 2 == 0) ? 1.0 : -1.0;
        auto f = [&](double s) {
            double t = a1 - s * s;
            double rest = 1.0;
            for (size_t i = 1; i < a.size(); ++i) rest *= (a[i] - t);
            return 2.0 * K(t) / std::sqrt(rest);
        };
        g -= sl * integrate_smooth(f, 0.0, std::sqrt(a1 - x), cfg);
    }
    return g;
}

double GreenPolePair::green_pair(cplx z) const {
    if (z.imag() == 0.0) return green_pair(z.real());
    if (z.imag() < 0.0) z = std::conj(z);
    const IntervalSystem& sys = T_->system();
    double xr = sys.endpoints().back() + std::max(1.0, 0.5 * sys.diameter());
    double g0 = green_pair(xr);
    double Y = std::max({z.imag(), 0.5 * sys.diameter(), 2.0 * std::abs(w_.imag())});
    auto f = [&](cplx t) {
        return cplx(q_(t)) / ((t - w_) * (t - std::conj(w_)) * sys.sqrt_H_plus(t));
    };
    cplx anchor(xr, 0.0), up(xr, Y), across(z.real(), Y);
    cplx path = integrate_segment(f, anchor, up, T_->quad()) +
                integrate_segment(f, up, across, T_->quad()) +
                integrate_segment(f, across, z, T_->quad());
    return g0 + path.real();
}

double GreenPolePair::phase_pair(double x) const {
    const IntervalSystem& sys = T_->system();
    auto loc = sys.locate(x);
    if (loc.kind != PointLocation::Band && loc.kind != PointLocation::BandEndpoint)
        throw std::domain_error("phase_pair: x must lie on the bands");
    int k = loc.index;
    auto K = [&](double t) { return q_(t) / Q(t); };
    double partial;
    if (loc.kind == PointLocation::Band) {
        partial = T_->band_h_integral_right(k, K, x);
    } else {
        Interval b = sys.band(k);
        partial = (x == b.lo) ? T_->band_h_integral(k, K) : 0.0;
    }
    double tail = 0.0;
    for (int kk = k + 1; kk <= sys.num_bands(); ++kk) tail += omega_[kk - 1];
    return M_PI * (partial + tail);
}

Eigen::VectorXd omega_gradient(const PotentialTable& T, double c, int j) {
    const IntervalSystem& sys = T.system();
    int g = sys.genus();
    if (g == 0) return Eigen::VectorXd(0);
    if (!sys.gap(j).contains_strict(c))
        throw std::domain_error("omega_gradient: c must be strictly inside gap j");
    // Sign fixed against finite differences of omega_k along the gap.
    Eigen::VectorXd v(g);
    double sq = sys.sqrt_H_gap(c, j);
    for (int k = 1; k <= g; ++k) v(k - 1) = -2.0 * T.basis_poly(k)(c) / sq;
    return T.solve_Bt(v);
}

}  // namespace chebband
