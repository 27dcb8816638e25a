#include "chebband/potential.hpp"

#include <cmath>

namespace chebband {

double rest_band(const IntervalSystem& sys, int k, double t) {
    const auto& a = sys.endpoints();
    int lo_i = 2 * k - 2, hi_i = 2 * k - 1;  // 0-based indices of the band ends
    double p = 1.0;
    for (int i = 0; i < lo_i; ++i) p *= (t - a[i]);
    for (size_t i = hi_i + 1; i < a.size(); ++i) p *= (a[i] - t);
    return p;
}

double rest_gap(const IntervalSystem& sys, int j, double t) {
    const auto& a = sys.endpoints();
    int lo_i = 2 * j - 1, hi_i = 2 * j;
    double p = 1.0;
    for (int i = 0; i < lo_i; ++i) p *= (t - a[i]);
    for (size_t i = hi_i + 1; i < a.size(); ++i) p *= (a[i] - t);
    return p;
}

double sqrtH_real_off_bands(const IntervalSystem& sys, double x) {
    auto r = sys.locate(x);
    int l = sys.num_bands();
    if (r.kind == PointLocation::Gap) return sys.sqrt_H_gap(x, r.index);
    if (r.kind == PointLocation::Exterior) {
        if (x > sys.endpoints().back()) return std::sqrt(sys.H(x));
        double s = (l % 2 == 0) ? 1.0 : -1.0;
        return s * std::sqrt(sys.H(x));
    }
    throw std::domain_error("sqrtH_real_off_bands: point lies on the bands");
}

double PotentialTable::band_h_integral(int k, const RealFn& K) const {
    Interval b = sys_.band(k);
    double s = sys_.band_sign(k) / M_PI;
    auto F = [&](double t) { return K(t) / std::sqrt(rest_band(sys_, k, t)); };
    return s * integrate_endpoint_singular(F, b.lo, b.hi, quad_);
}

double PotentialTable::band_pole_integral(int k, const Poly& r, double c) const {
    Interval b = sys_.band(k);
    if (c >= b.lo && c <= b.hi) throw std::domain_error("band_pole_integral: pole on the band");
    double dist = (c < b.lo) ? b.lo - c : c - b.hi;
    double restc = (dist < 0.25 * b.halfwidth()) ? rest_band(sys_, k, c) : -1.0;
    if (restc <= 0.0)
        return band_h_integral(k, [&](double t) { return r(t) / (t - c); });

    // subtract the constant making the numerator vanish at the pole;
    // int_band dt/((t-c) sqrt((t-lo)(hi-t))) has a closed form
    double s = sys_.band_sign(k) / M_PI;
    double Fc = r(c) / std::sqrt(restc);
    auto diff = [&](double t) {
        return (r(t) / std::sqrt(rest_band(sys_, k, t)) - Fc) / (t - c);
    };
    double I_diff = integrate_endpoint_singular(diff, b.lo, b.hi, quad_);
    double closed = -M_PI * ((c > b.mid()) ? 1.0 : -1.0) / std::sqrt((c - b.lo) * (c - b.hi));
    return s * (I_diff + Fc * closed);
}

double PotentialTable::band_h_integral_right(int k, const RealFn& K, double x0) const {
    Interval b = sys_.band(k);
    double s = sys_.band_sign(k) / M_PI;
    auto F = [&](double t) { return K(t) / std::sqrt(rest_band(sys_, k, t)); };
    return s * integrate_endpoint_singular_right(F, b.lo, b.hi, x0, quad_);
}

double PotentialTable::gap_sqrtH_integral(int j, const RealFn& K) const {
    Interval g = sys_.gap(j);
    auto F = [&](double t) { return K(t) / std::sqrt(rest_gap(sys_, j, t)); };
    return integrate_endpoint_singular(F, g.lo, g.hi, quad_);
}

Eigen::VectorXd PotentialTable::solve_Bt(const Eigen::VectorXd& v) const {
    return Bt_lu_.solve(v);
}

Eigen::VectorXd PotentialTable::boundary_density(double x) const {
    auto loc = sys_.locate(x);
    if (loc.kind != PointLocation::Band)
        throw std::domain_error("boundary_density: x must be strictly inside a band");
    int g = sys_.genus();
    Eigen::VectorXd rhs(g);
    double hinv = sys_.h_inv(x);
    for (int k = 1; k <= g; ++k) rhs(k - 1) = 2.0 * M_PI * basis_poly(k)(x) * hinv;
    if (g == 0) return rhs;
    return solve_Bt(rhs);
}

double PotentialTable::green_real_axis(double x) const {
    const auto& a = sys_.endpoints();
    int l = sys_.num_bands();
    auto loc = sys_.locate(x);
    if (loc.kind == PointLocation::Band)
        throw std::domain_error("green_inf: boundary point");
    if (loc.kind == PointLocation::BandEndpoint) return 0.0;

    if (loc.kind == PointLocation::Exterior && x > a.back()) {
        // g(x) = int_{a_2l}^x r/sqrt(H); substitute t = a_2l + s^2 to kill the
        // branch-point singularity at the lower end.
        double a2l = a.back();
        auto f = [&](double s) {
            double t = a2l + s * s;
            double rest = 1.0;
            for (size_t i = 0; i + 1 < a.size(); ++i) rest *= (t - a[i]);
            return 2.0 * r_inf_(t) / std::sqrt(rest);
        };
        return integrate_smooth(f, 0.0, std::sqrt(x - a2l), quad_);
    }

    // Walk the real axis from a_{2l} down to x; only gap segments contribute.
    double g = 0.0;
    int first_gap = (loc.kind == PointLocation::Gap) ? loc.index : 1;
    for (int i = first_gap; i <= l - 1; ++i) {
        double sgn = ((l - i) % 2 == 0) ? 1.0 : -1.0;
        Interval gp = sys_.gap(i);
        auto F = [&](double t) { return r_inf_(t) / std::sqrt(rest_gap(sys_, i, t)); };
        double seg;
        if (loc.kind == PointLocation::Gap && i == first_gap)
            seg = integrate_endpoint_singular_right(F, gp.lo, gp.hi, x, quad_);
        else
            seg = integrate_endpoint_singular(F, gp.lo, gp.hi, quad_);
        g -= sgn * seg;
    }
    if (loc.kind == PointLocation::Exterior) {
        // x < a_1: remaining piece from a_1 down to x, t = a_1 - s^2.
        double a1 = a.front();
        double sl = (l % 2 == 0) ? 1.0 : -1.0;
        auto f = [&](double s) {
            double t = a1 - s * s;
            double rest = 1.0;
            for (size_t i = 1; i < a.size(); ++i) rest *= (a[i] - t);
            return 2.0 * r_inf_(t) / std::sqrt(rest);
        };
        g -= sl * integrate_smooth(f, 0.0, std::sqrt(a1 - x), quad_);
    }
    return g;
}

double PotentialTable::green_inf(double x) const { return green_real_axis(x); }

double PotentialTable::green_inf(cplx z) const {
    if (z.imag() == 0.0) return green_real_axis(z.real());
    if (z.imag() < 0.0) z = std::conj(z);

    double xr = sys_.endpoints().back() + std::max(1.0, 0.5 * sys_.diameter());
    double g0 = green_real_axis(xr);
    double Y = std::max(z.imag(), 0.5 * sys_.diameter());
    auto f = [&](cplx t) { return cplx(r_inf_(t)) / sys_.sqrt_H_plus(t); };
    cplx anchor(xr, 0.0), up(xr, Y), across(z.real(), Y);
    cplx path = integrate_segment(f, anchor, up, quad_) +
                integrate_segment(f, up, across, quad_) +
                integrate_segment(f, across, z, quad_);
    return g0 + path.real();
}

double PotentialTable::phase_inf(double x) const {
    auto loc = sys_.locate(x);
    int l = sys_.num_bands();
    int k;
    double partial;
    if (loc.kind == PointLocation::Band) {
        k = loc.index;
        partial = band_h_integral_right(k, [&](double t) { return r_inf_(t); }, x);
    } else if (loc.kind == PointLocation::BandEndpoint) {
        k = loc.index;
        Interval b = sys_.band(k);
        partial = (x == b.lo) ? band_h_integral(k, [&](double t) { return r_inf_(t); }) : 0.0;
    } else {
        throw std::domain_error("phase_inf: x must lie on the bands");
    }
    double tail = 0.0;
    for (int kk = k + 1; kk <= l; ++kk) tail += omega_inf_[kk - 1];
    return M_PI * (partial + tail);
}

PotentialTable build_potential_table(const IntervalSystem& sys, const QuadConfig& quad) {
    PotentialTable T(sys, quad);
    int l = sys.num_bands();
    int g = l - 1;

    // r_inf: monic degree l-1 with vanishing gap integrals against 1/sqrt(H).
    if (g == 0) {
        T.r_inf_ = Poly({1.0});
    } else {
        Eigen::MatrixXd G(g, l);
        for (int j = 1; j <= g; ++j)
            for (int s = 0; s < l; ++s)
                G(j - 1, s) = T.gap_sqrtH_integral(j, [&](double t) { return std::pow(t, s); });
        Eigen::MatrixXd A = G.leftCols(g);
        Eigen::VectorXd b = -G.col(g);
        Eigen::VectorXd rho = A.partialPivLu().solve(b);
        std::vector<double> coeffs(l);
        for (int s = 0; s < g; ++s) coeffs[s] = rho(s);
        coeffs[g] = 1.0;
        T.r_inf_ = Poly(std::move(coeffs));
    }

    // Equilibrium masses.
    T.omega_inf_.resize(l);
    for (int k = 1; k <= l; ++k)
        T.omega_inf_[k - 1] = T.band_h_integral(k, [&](double t) { return T.r_inf_(t); });

    // Normalized first-kind differentials and the beta-period matrix.
    if (g > 0) {
        Eigen::MatrixXd A(g, g);  // A(j,s) = int_{E_j} t^s (1/h) dt
        for (int j = 1; j <= g; ++j)
            for (int s = 0; s < g; ++s)
                A(j - 1, s) = T.band_h_integral(j, [&](double t) { return std::pow(t, s); });
        // Row k of d solves sum_s d(k,s) A(j,s) = -delta_jk, i.e. D A^T = -I.
        Eigen::MatrixXd D = A.transpose().partialPivLu().solve(-Eigen::MatrixXd::Identity(g, g));
        T.d_ = D;
        T.p_.clear();
        for (int k = 0; k < g; ++k) {
            std::vector<double> c(g);
            for (int s = 0; s < g; ++s) c[s] = D(k, s);
            T.p_.emplace_back(std::move(c));
        }
        Eigen::MatrixXd B(g, g);
        for (int j = 1; j <= g; ++j)
            for (int k = 1; k <= g; ++k) {
                double v = 0.0;
                for (int i = j; i <= g; ++i) {
                    double sgn = ((l - i) % 2 == 0) ? 1.0 : -1.0;
                    v += 2.0 * sgn *
                         T.gap_sqrtH_integral(i, [&](double t) { return T.basis_poly(k)(t); });
                }
                B(j - 1, k - 1) = v;
            }
        T.B_ = B;
        T.Bt_lu_ = Eigen::PartialPivLU<Eigen::MatrixXd>(B.transpose());
    } else {
        T.d_.resize(0, 0);
        T.B_.resize(0, 0);
    }

    // Capacity: log cap = lim_{R->inf} (log R - g(R)); Neville extrapolation
    // in 1/R over a geometric ladder of radii.
    {
        const int npts = 5;
        double R0 = 256.0 * sys.diameter() + std::abs(sys.endpoints().back());
        std::vector<double> xs(npts), ys(npts);
        for (int m = 0; m < npts; ++m) {
            double R = R0 * std::pow(2.0, m);
            xs[m] = 1.0 / R;
            ys[m] = std::log(R) - T.green_real_axis(R);
        }
        for (int k = 1; k < npts; ++k)
            for (int i = npts - 1; i >= k; --i)
                ys[i] = ys[i] + (ys[i] - ys[i - 1]) * (0.0 - xs[i]) / (xs[i] - xs[i - k]);
        T.capacity_ = std::exp(ys[npts - 1]);
    }

    return T;
}

double capacity_of(const IntervalSystem& sys, const QuadConfig& quad) {
    return build_potential_table(sys, quad).capacity();
}

}  // namespace chebband
