#include "chebband/remez.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace chebband {

double cheb_eval(const std::vector<double>& coeff, double u) {
    double b1 = 0.0, b2 = 0.0;
    for (size_t k = coeff.size(); k-- > 1;) {
        double b0 = 2.0 * u * b1 - b2 + coeff[k];
        b2 = b1;
        b1 = b0;
    }
    return u * b1 - b2 + (coeff.empty() ? 0.0 : coeff[0]);
}

namespace {

double to_u(const Interval& hull, double x) {
    return (2.0 * x - (hull.lo + hull.hi)) / (hull.hi - hull.lo);
}

struct Candidate {
    double x;
    double val;
};

/// Golden-section maximization of |e| on [lo,hi].
template <class F>
Candidate refine_extremum(const F& e, double lo, double hi) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = std::abs(e(c)), fd = std::abs(e(d));
    for (int it = 0; it < 40 && (b - a) > 1e-14 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = std::abs(e(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = std::abs(e(d));
        }
    }
    double xm = 0.5 * (a + b);
    return {xm, e(xm)};
}

/// All signed local extrema of e over one band, edge points included.
template <class F>
void scan_band(const F& e, const Interval& b, int grid, std::vector<Candidate>& out) {
    std::vector<double> xs(grid), es(grid);
    for (int i = 0; i < grid; ++i) {
        double th = M_PI * (grid - 1 - i) / (grid - 1);
        xs[i] = b.mid() + b.halfwidth() * std::cos(th);
        es[i] = e(xs[i]);
    }
    for (int i = 0; i < grid; ++i) {
        bool is_max;
        if (i == 0)
            is_max = std::abs(es[0]) >= std::abs(es[1]);
        else if (i == grid - 1)
            is_max = std::abs(es[i]) >= std::abs(es[i - 1]);
        else
            is_max = std::abs(es[i]) >= std::abs(es[i - 1]) && std::abs(es[i]) >= std::abs(es[i + 1]);
        if (!is_max) continue;
        double lo = (i == 0) ? xs[0] : xs[i - 1];
        double hi = (i == grid - 1) ? xs[grid - 1] : xs[i + 1];
        Candidate c = (lo == hi) ? Candidate{xs[i], es[i]} : refine_extremum(e, lo, hi);
        // keep the edge point itself if it beats the refined interior value
        if (i == 0 && std::abs(es[0]) > std::abs(c.val)) c = {xs[0], es[0]};
        if (i == grid - 1 && std::abs(es[i]) > std::abs(c.val)) c = {xs[i], es[i]};
        out.push_back(c);
    }
}

/// Keep one candidate (the largest) per run of equal sign.
std::vector<Candidate> condense(std::vector<Candidate> v) {
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.x < b.x; });
    std::vector<Candidate> out;
    for (const auto& c : v) {
        if (c.val == 0.0) continue;
        if (!out.empty() && (out.back().val > 0) == (c.val > 0)) {
            if (std::abs(c.val) > std::abs(out.back().val)) out.back() = c;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

/// Reduce an alternating candidate list to exactly m points, dropping the
/// weakest end for odd excess and the weakest adjacent pair otherwise.
void trim_to(std::vector<Candidate>& v, size_t m) {
    while (v.size() > m) {
        size_t excess = v.size() - m;
        if (excess % 2 == 1) {
            if (std::abs(v.front().val) <= std::abs(v.back().val))
                v.erase(v.begin());
            else
                v.pop_back();
        } else {
            size_t best = 0;
            double bestv = 1e300;
            for (size_t i = 0; i + 1 < v.size(); ++i) {
                double worst = std::max(std::abs(v[i].val), std::abs(v[i + 1].val));
                if (worst < bestv) {
                    bestv = worst;
                    best = i;
                }
            }
            v.erase(v.begin() + best, v.begin() + best + 2);
        }
    }
}

/// Single-point exchange fallback: swap the global extremum into the
/// reference while keeping alternation.
void single_exchange(std::vector<Candidate>& ref, const Candidate& star) {
    auto pos = std::lower_bound(ref.begin(), ref.end(), star.x,
                                [](const Candidate& c, double x) { return c.x < x; });
    bool star_pos = star.val > 0;
    if (pos == ref.begin()) {
        if ((ref.front().val > 0) == star_pos)
            ref.front() = star;
        else {
            ref.insert(ref.begin(), star);
            ref.pop_back();
        }
    } else if (pos == ref.end()) {
        if ((ref.back().val > 0) == star_pos)
            ref.back() = star;
        else {
            ref.push_back(star);
            ref.erase(ref.begin());
        }
    } else {
        auto left = pos - 1;
        if ((left->val > 0) == star_pos)
            *left = star;
        else
            *pos = star;
    }
}

std::vector<double> seed_reference(const IntervalSystem& sys, const std::vector<double>& omega,
                                   int m) {
    int l = sys.num_bands();
    // largest-remainder allocation proportional to the equilibrium masses
    std::vector<int> cnt(l, 0);
    std::vector<std::pair<double, int>> rem;
    int assigned = 0;
    for (int k = 0; k < l; ++k) {
        double share = omega[k] * m;
        cnt[k] = static_cast<int>(std::floor(share));
        assigned += cnt[k];
        rem.push_back({share - cnt[k], k});
    }
    std::sort(rem.rbegin(), rem.rend());
    for (int i = 0; i < m - assigned; ++i) cnt[rem[i % l].second] += 1;

    std::vector<double> pts;
    for (int k = 0; k < l; ++k) {
        Interval b = sys.band(k + 1);
        int nk = cnt[k];
        if (nk == 0) continue;
        if (nk == 1) {
            pts.push_back(b.mid());
            continue;
        }
        for (int i = 0; i < nk; ++i)
            pts.push_back(b.mid() + b.halfwidth() * std::cos(M_PI * (nk - 1 - i) / (nk - 1)));
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace

double RemezResult::operator()(double x) const { return cheb_eval(coeff, to_u(hull, x)); }

std::vector<double> RemezResult::monomial_coeffs() const {
    // T_k on the hull expanded to monomials; fine for the degrees we report.
    size_t m = coeff.size();
    std::vector<std::vector<double>> T(m);
    double w = hull.halfwidth(), mid = hull.mid();
    // u = (x - mid)/w
    std::vector<double> u = {-mid / w, 1.0 / w};
    T[0] = {1.0};
    if (m > 1) T[1] = u;
    auto mul = [](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> r(a.size() + b.size() - 1, 0.0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    };
    for (size_t k = 2; k < m; ++k) {
        auto t = mul(u, T[k - 1]);
        for (double& v : t) v *= 2.0;
        std::vector<double> r(t.size(), 0.0);
        for (size_t i = 0; i < t.size(); ++i) r[i] = t[i];
        for (size_t i = 0; i < T[k - 2].size(); ++i) r[i] -= T[k - 2][i];
        T[k] = r;
    }
    std::vector<double> out(m, 0.0);
    for (size_t k = 0; k < m; ++k)
        for (size_t i = 0; i < T[k].size(); ++i) out[i] += coeff[k] * T[k][i];
    return out;
}

double UniformFit::operator()(double x) const { return cheb_eval(coeff, to_u(hull, x)); }

RemezResult minimax_monic(const IntervalSystem& sys, const Weight& W, int n,
                          const RemezConfig& cfg, const PotentialTable* table) {
    if (n < 1) throw std::invalid_argument("minimax_monic: n >= 1 required");
    W.check_positive(sys);

    RemezResult res;
    res.n = n;
    res.hull = sys.hull();
    double w = res.hull.halfwidth();
    double alpha_n = (n == 0) ? 1.0 : std::pow(w, n) * std::pow(2.0, 1 - n);

    std::vector<double> omega;
    if (table) {
        omega = table->omega_inf();
    } else {
        QuadConfig qc;
        qc.tol = 1e-10;
        omega = build_potential_table(sys, qc).omega_inf();
    }

    std::vector<double> ref = seed_reference(sys, omega, n + 1);
    std::vector<double> beta(n, 0.0);
    double level = 0.0;

    auto Mhat = [&](double x) {
        double u = to_u(res.hull, x);
        std::vector<double> full(beta);
        full.push_back(alpha_n);
        return cheb_eval(full, u);
    };
    auto e = [&](double x) { return Mhat(x) / W(x); };

    int grid = cfg.grid_factor * n + 50;
    std::vector<Candidate> reference;

    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        res.iterations = iter;
        // solve the leveled interpolation problem on the reference
        int m = n + 1;
        Eigen::MatrixXd A(m, m);
        Eigen::VectorXd rhs(m);
        for (int i = 0; i < m; ++i) {
            double u = to_u(res.hull, ref[i]);
            double t0 = 1.0, t1 = u;
            for (int k = 0; k < n; ++k) {
                A(i, k) = (k == 0) ? 1.0 : t1;
                if (k >= 1) {
                    double t2 = 2.0 * u * t1 - t0;
                    t0 = t1;
                    t1 = t2;
                }
            }
            double s = (i % 2 == 0) ? 1.0 : -1.0;
            A(i, n) = -s * W(ref[i]);
            // monic top coefficient moved to the right-hand side
            std::vector<double> top(n + 1, 0.0);
            top[n] = alpha_n;
            rhs(i) = -cheb_eval(top, u);
        }
        Eigen::VectorXd sol = A.colPivHouseholderQr().solve(rhs);
        for (int k = 0; k < n; ++k) beta[k] = sol(k);
        level = std::abs(sol(n));
        if (!std::isfinite(level)) throw std::runtime_error("minimax_monic: singular reference");

        // scan the residual
        std::vector<Candidate> cand;
        for (int k = 1; k <= sys.num_bands(); ++k) scan_band(e, sys.band(k), grid, cand);
        auto alt = condense(std::move(cand));

        Candidate star = alt.front();
        for (const auto& c : alt)
            if (std::abs(c.val) > std::abs(star.val)) star = c;
        double dev = std::abs(star.val);

        if (alt.size() >= static_cast<size_t>(n + 1)) {
            trim_to(alt, n + 1);
            reference = alt;
        } else if (!reference.empty()) {
            single_exchange(reference, star);
        } else {
            // degenerate start; perturb by reseeding from the scan
            reference = alt;
            while (reference.size() < static_cast<size_t>(n + 1))
                reference.push_back({ref[reference.size()], 0.0});
        }

        double gap = (dev - level) / std::max(dev, 1e-300);
        res.deviation = dev;
        res.certificate_gap = std::abs(gap);
        if (std::abs(gap) <= cfg.tol) {
            res.converged = true;
        }

        res.alternation_x.clear();
        res.alternation_sign.clear();
        res.vp_lower = 1e300;
        for (const auto& c : reference) {
            res.alternation_x.push_back(c.x);
            res.alternation_sign.push_back(c.val > 0 ? 1 : -1);
            res.vp_lower = std::min(res.vp_lower, std::abs(c.val));
        }

        if (res.converged) break;
        ref.clear();
        for (const auto& c : reference) ref.push_back(c.x);
    }

    res.coeff = beta;
    res.coeff.push_back(alpha_n);
    res.certificate_gap = (res.deviation - res.vp_lower) / std::max(res.deviation, 1e-300);
    return res;
}

namespace {

template <class F>
double brent_root(const F& f, double a, double b) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::runtime_error("brent: not bracketed");
    for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (a + b);
        if (b - a < 1e-15 * std::max(1.0, std::abs(m))) return m;
        double fm = f(m);
        // secant candidate
        double s = m;
        if (fb != fa) {
            s = b - fb * (b - a) / (fb - fa);
            if (!(s > a && s < b)) s = m;
        }
        double fs = (s == m) ? fm : f(s);
        double x1 = m, fx1 = fm;
        if (s != m && std::abs(fs) < std::abs(fm)) {
            x1 = s;
            fx1 = fs;
        }
        if (fa * fx1 <= 0.0) {
            b = x1;
            fb = fx1;
        } else {
            a = x1;
            fa = fx1;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

ZeroReport analyze_zeros(const IntervalSystem& sys, const RemezResult& res) {
    ZeroReport rep;
    auto M = [&](double x) { return res(x); };
    int grid = 30 * res.n + 60;
    auto scan = [&](const Interval& iv, int pts) {
        std::vector<double> zs;
        double xprev = iv.lo, fprev = M(xprev);
        if (fprev == 0.0) zs.push_back(xprev);
        for (int i = 1; i < pts; ++i) {
            double x = iv.lo + iv.length() * i / (pts - 1);
            double fx = M(x);
            if (fx == 0.0)
                zs.push_back(x);  // grid node hits the zero (symmetric systems)
            else if (fprev * fx < 0.0)
                zs.push_back(brent_root(M, xprev, x));
            xprev = x;
            fprev = fx;
        }
        return zs;
    };
    for (int k = 1; k <= sys.num_bands(); ++k) {
        auto zs = scan(sys.band(k), grid);
        rep.per_band.push_back(static_cast<int>(zs.size()));
        rep.band_zeros.push_back(zs);
        rep.total += static_cast<int>(zs.size());
    }
    for (int j = 1; j <= sys.num_gaps(); ++j) {
        Interval g = sys.gap(j);
        // shrink slightly so a zero at a shared endpoint is counted as a band zero
        double eps = 1e-12 * g.length();
        auto zs = scan({g.lo + eps, g.hi - eps}, 201);
        if (zs.size() > 1) throw std::runtime_error("analyze_zeros: multiple zeros in one gap");
        if (zs.empty())
            rep.gap_zeros.push_back(std::nullopt);
        else {
            rep.gap_zeros.push_back(zs[0]);
            rep.total += 1;
        }
    }
    return rep;
}

UniformFit best_uniform_poly(const IntervalSystem& sys, const std::function<double(double)>& f,
                             int deg, double tol) {
    UniformFit fit;
    fit.hull = sys.hull();
    int m = deg + 2;

    // seed by band-length share
    std::vector<double> omega;
    double total = 0.0;
    for (int k = 1; k <= sys.num_bands(); ++k) total += sys.band(k).length();
    for (int k = 1; k <= sys.num_bands(); ++k) omega.push_back(sys.band(k).length() / total);
    std::vector<double> ref = seed_reference(sys, omega, m);

    std::vector<double> beta(deg + 1, 0.0);
    auto p = [&](double x) { return cheb_eval(beta, to_u(fit.hull, x)); };
    auto e = [&](double x) { return p(x) - f(x); };

    int grid = 30 * (deg + 1) + 50;
    std::vector<Candidate> reference;
    for (int iter = 0; iter < 200; ++iter) {
        Eigen::MatrixXd A(m, m);
        Eigen::VectorXd rhs(m);
        for (int i = 0; i < m; ++i) {
            double u = to_u(fit.hull, ref[i]);
            double t0 = 1.0, t1 = u;
            for (int k = 0; k <= deg; ++k) {
                A(i, k) = (k == 0) ? 1.0 : t1;
                if (k >= 1) {
                    double t2 = 2.0 * u * t1 - t0;
                    t0 = t1;
                    t1 = t2;
                }
            }
            A(i, deg + 1) = (i % 2 == 0) ? -1.0 : 1.0;
            rhs(i) = f(ref[i]);
        }
        Eigen::VectorXd sol = A.colPivHouseholderQr().solve(rhs);
        for (int k = 0; k <= deg; ++k) beta[k] = sol(k);
        double level = std::abs(sol(deg + 1));

        std::vector<Candidate> cand;
        for (int k = 1; k <= sys.num_bands(); ++k) scan_band(e, sys.band(k), grid, cand);
        auto alt = condense(std::move(cand));
        Candidate star = alt.front();
        for (const auto& c : alt)
            if (std::abs(c.val) > std::abs(star.val)) star = c;
        double dev = std::abs(star.val);

        if (alt.size() >= static_cast<size_t>(m)) {
            trim_to(alt, m);
            reference = alt;
        } else if (!reference.empty()) {
            single_exchange(reference, star);
        } else {
            reference = alt;
            while (reference.size() < static_cast<size_t>(m))
                reference.push_back({ref[reference.size()], 0.0});
        }

        fit.error = dev;
        // floor the gap test at roundoff scale of the target values
        double fscale = 0.0;
        for (double x : ref) fscale = std::max(fscale, std::abs(f(x)));
        if (dev - level <= tol * dev + 64.0 * 1e-16 * fscale || dev <= 1e-15) {
            fit.converged = true;
            break;
        }
        ref.clear();
        for (const auto& c : reference) ref.push_back(c.x);
    }
    fit.coeff = beta;
    return fit;
}

}  // namespace chebband
