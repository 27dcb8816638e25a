#include "chebband/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace chebband {

namespace {

struct GaussRule {
    std::vector<double> x, w;
};

GaussRule compute_gauss(int n) {
    // Newton iteration on Legendre P_n, standard Golub-Welsch-free variant.
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0, p1, dp;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const GaussRule& gauss_rule(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
    return it->second;
}

double gl_on(const RealFn& f, double a, double b, int n) {
    const GaussRule& r = gauss_rule(n);
    double m = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.w[i] * f(m + h * r.x[i]);
    return s * h;
}

cplx gl_on_segment(const CplxFn& f, cplx z0, cplx z1, int n) {
    const GaussRule& r = gauss_rule(n);
    cplx m = 0.5 * (z0 + z1), h = 0.5 * (z1 - z0);
    cplx s = 0.0;
    for (int i = 0; i < n; ++i) s += r.w[i] * f(m + h * r.x[i]);
    return s * h;
}

}  // namespace

const std::vector<double>& gauss_nodes(int n) { return gauss_rule(n).x; }
const std::vector<double>& gauss_weights(int n) { return gauss_rule(n).w; }

double integrate_theta(const RealFn& f, double lo, double hi, const QuadConfig& cfg) {
    int n = cfg.base_nodes;
    double prev = gl_on(f, lo, hi, n);
    for (int lev = 0; lev < cfg.max_doublings; ++lev) {
        n *= 2;
        double cur = gl_on(f, lo, hi, n);
        double err = std::abs(cur - prev);
        if (err <= cfg.tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw QuadratureError("integrate_theta failed to converge", std::abs(prev));
}

namespace {

double adaptive(const RealFn& f, double a, double b, double whole, double tol, int n, int depth) {
    double m = 0.5 * (a + b);
    double left = gl_on(f, a, m, n), right = gl_on(f, m, b, n);
    double sum = left + right;
    // floor the split tolerance at roundoff scale or the recursion explodes
    double floor_tol = 64.0 * 1e-16 * (std::abs(left) + std::abs(right) + 1e-300);
    if (std::abs(sum - whole) <= std::max(tol, floor_tol) || depth > 28) return sum;
    double child_tol = std::max(0.5 * tol, floor_tol);
    return adaptive(f, a, m, left, child_tol, n, depth + 1) +
           adaptive(f, m, b, right, child_tol, n, depth + 1);
}

}  // namespace

double integrate_smooth(const RealFn& f, double a, double b, const QuadConfig& cfg) {
    if (a == b) return 0.0;
    double whole = gl_on(f, a, b, cfg.base_nodes);
    return adaptive(f, a, b, whole, cfg.tol, cfg.base_nodes, 0);
}

double integrate_endpoint_singular(const RealFn& F, double lo, double hi, const QuadConfig& cfg) {
    double m = 0.5 * (lo + hi), w = 0.5 * (hi - lo);
    return integrate_theta([&](double th) { return F(m + w * std::cos(th)); }, 0.0, M_PI, cfg);
}

double integrate_endpoint_singular_right(const RealFn& F, double lo, double hi, double x0,
                                         const QuadConfig& cfg) {
    double m = 0.5 * (lo + hi), w = 0.5 * (hi - lo);
    double u = std::min(1.0, std::max(-1.0, (x0 - m) / w));
    double th0 = std::acos(u);
    return integrate_theta([&](double th) { return F(m + w * std::cos(th)); }, 0.0, th0, cfg);
}

double integrate_endpoint_singular_left(const RealFn& F, double lo, double hi, double x0,
                                        const QuadConfig& cfg) {
    double m = 0.5 * (lo + hi), w = 0.5 * (hi - lo);
    double u = std::min(1.0, std::max(-1.0, (x0 - m) / w));
    double th0 = std::acos(u);
    return integrate_theta([&](double th) { return F(m + w * std::cos(th)); }, th0, M_PI, cfg);
}

double integrate_pv(const RealFn& F, double lo, double hi, double c, const QuadConfig& cfg) {
    if (!(c > lo && c < hi)) throw std::invalid_argument("integrate_pv: pole not interior");
    double m = 0.5 * (lo + hi), w = 0.5 * (hi - lo);
    double uc = (c - m) / w;
    auto Fu = [&](double u) { return F(m + w * u); };
    double Fc = Fu(uc);

    // Difference quotient in u = cos(theta); removable at u = uc.  Inside a
    // guard strip around the pole the direct quotient loses digits, so there
    // we evaluate the quotient of a local quartic interpolant of F instead
    // (Newton form anchored at uc, synthetic division by (u - uc) built in).
    // Stencil nodes fold toward the interior when the pole sits near +-1.
    const double hs = 2e-3;
    double xs[5] = {uc, 0, 0, 0, 0};
    {
        int got = 1;
        for (int step = 1; got < 5 && step < 64; ++step)
            for (double sgn : {1.0, -1.0}) {
                double cand = uc + sgn * step * hs;
                if (got < 5 && std::abs(cand) <= 1.0 - 1e-12) xs[got++] = cand;
            }
    }
    const double guard = 2.5 * hs;
    double dd[5];
    for (int i = 0; i < 5; ++i) dd[i] = Fu(xs[i]);
    for (int k = 1; k < 5; ++k)
        for (int i = 4; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
    auto local_quotient = [&](double u) {
        // (p(u) - p(uc)) / (u - uc) for the Newton-form interpolant p
        double q = dd[4];
        for (int k = 3; k >= 1; --k) q = dd[k] + (u - xs[k]) * q;
        return q;
    };

    auto integrand = [&](double th) {
        double u = std::cos(th);
        double du = u - uc;
        if (std::abs(du) < guard) return local_quotient(u);
        return (Fu(u) - Fc) / du;
    };
    // PV of 1/(cos th - cos th_c) over [0,pi] is zero, so only the difference
    // quotient contributes.
    return integrate_theta(integrand, 0.0, M_PI, cfg) / w;
}

double integrate_pv_plain(const RealFn& F, double a, double b, double c, const QuadConfig& cfg) {
    if (!(c > a && c < b)) throw std::invalid_argument("integrate_pv_plain: pole not interior");
    double Fc = F(c);
    const double hs = 1e-3 * (b - a);
    double xs[5] = {c, 0, 0, 0, 0};
    {
        int got = 1;
        for (int step = 1; got < 5 && step < 64; ++step)
            for (double sgn : {1.0, -1.0}) {
                double cand = c + sgn * step * hs;
                if (got < 5 && cand > a + 1e-12 * (b - a) && cand < b - 1e-12 * (b - a))
                    xs[got++] = cand;
            }
    }
    double dd[5];
    for (int i = 0; i < 5; ++i) dd[i] = F(xs[i]);
    for (int k = 1; k < 5; ++k)
        for (int i = 4; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
    const double guard = 2.0 * hs;
    auto quotient = [&](double t) {
        if (std::abs(t - c) < guard) {
            double q = dd[4];
            for (int k = 3; k >= 1; --k) q = dd[k] + (t - xs[k]) * q;
            return q;
        }
        return (F(t) - Fc) / (t - c);
    };
    return integrate_smooth(quotient, a, b, cfg) + Fc * std::log((b - c) / (c - a));
}

cplx integrate_segment(const CplxFn& f, cplx z0, cplx z1, const QuadConfig& cfg) {
    int n = cfg.base_nodes;
    cplx prev = gl_on_segment(f, z0, z1, n);
    for (int lev = 0; lev < cfg.max_doublings; ++lev) {
        n *= 2;
        cplx cur = gl_on_segment(f, z0, z1, n);
        if (std::abs(cur - prev) <= cfg.tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw QuadratureError("integrate_segment failed to converge", std::abs(prev));
}

namespace {

cplx gl_on_cplx(const std::function<cplx(double)>& f, double a, double b, int n) {
    const GaussRule& r = gauss_rule(n);
    double m = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx s = 0.0;
    for (int i = 0; i < n; ++i) s += r.w[i] * f(m + h * r.x[i]);
    return s * h;
}

cplx adaptive_cplx(const std::function<cplx(double)>& f, double a, double b, cplx whole, double tol,
                   int n, int depth) {
    double m = 0.5 * (a + b);
    cplx left = gl_on_cplx(f, a, m, n), right = gl_on_cplx(f, m, b, n);
    cplx sum = left + right;
    double floor_tol = 64.0 * 1e-16 * (std::abs(left) + std::abs(right) + 1e-300);
    if (std::abs(sum - whole) <= std::max(tol, floor_tol) || depth > 28) return sum;
    double child_tol = std::max(0.5 * tol, floor_tol);
    return adaptive_cplx(f, a, m, left, child_tol, n, depth + 1) +
           adaptive_cplx(f, m, b, right, child_tol, n, depth + 1);
}

}  // namespace

cplx integrate_adaptive_cplx(const std::function<cplx(double)>& f, double a, double b,
                             const QuadConfig& cfg) {
    if (a == b) return 0.0;
    cplx whole = gl_on_cplx(f, a, b, cfg.base_nodes);
    return adaptive_cplx(f, a, b, whole, cfg.tol, cfg.base_nodes, 0);
}

double integrate_to_infinity(const RealFn& f, double a, const QuadConfig& cfg) {
    if (a <= 0.0) throw std::invalid_argument("integrate_to_infinity needs a > 0");
    // x = 1/u maps [a, inf) to (0, 1/a]; f ~ C/x^2 keeps the image integrand bounded.
    auto g = [&](double u) {
        double x = 1.0 / u;
        return f(x) * x * x;
    };
    return integrate_smooth(g, 0.0, 1.0 / a, cfg);
}

double band_integral(const RealFn& smooth_part, const Interval& iv, IntegralKind kind, double pole,
                     const QuadConfig& cfg) {
    switch (kind) {
        case IntegralKind::Band:
        case IntegralKind::Gap:
            return integrate_endpoint_singular(smooth_part, iv.lo, iv.hi, cfg);
        case IntegralKind::PrincipalValue:
            return integrate_pv(smooth_part, iv.lo, iv.hi, pole, cfg);
    }
    throw std::logic_error("unreachable");
}

}  // namespace chebband
