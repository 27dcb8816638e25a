#include "chebband/inversion.hpp"

#include <cmath>

namespace chebband {

namespace {

double wrap2(double t) { return std::remainder(t, 2.0); }  // into (-1, 1]

/// omega vector (k = 1..l-1) at a gap point; exact 0/1 limits on endpoints.
Eigen::VectorXd omega_vec(const PotentialTable& T, double cj) {
    int g = T.system().genus();
    auto P = GreenPole::make(T, cj);
    Eigen::VectorXd v(g);
    for (int k = 1; k <= g; ++k) v(k - 1) = P.omega(k);
    return v;
}

struct NewtonOutcome {
    std::vector<double> c;
    double residual;
    int iterations;
    bool converged;
};

Eigen::VectorXd torus_residual(const PotentialTable& T, const std::vector<double>& c,
                               const std::vector<double>& gamma) {
    int g = T.system().genus();
    Eigen::VectorXd F = Eigen::VectorXd::Zero(g);
    for (int j = 0; j < g; ++j) F += omega_vec(T, c[j]);
    Eigen::VectorXd r(g);
    for (int k = 0; k < g; ++k) r(k) = wrap2(F(k) - gamma[k]);
    return r;
}

/// The solver runs in the angle uniformization of each gap,
/// c_j = mid_j + w_j cos(theta_j), theta_j on the two-sheeted circle.  The
/// summed measures with the sheet sign are real-analytic in theta straight
/// through the gap endpoints (where 1/sqrt blowups in c cancel), so an
/// unconstrained Newton handles interior, endpoint and corner solutions
/// uniformly.
struct ThetaMap {
    const PotentialTable* T;
    int g;

    double c_of(int j, double th) const {
        Interval gp = T->system().gap(j + 1);
        return gp.mid() + gp.halfwidth() * std::cos(th);
    }
    double sheet(double th) const {
        double s = std::sin(th);
        return (s >= 0.0) ? 1.0 : -1.0;
    }
    /// F_k(theta) = sum_j sheet_j * omega_k(c_j)
    Eigen::VectorXd value(const std::vector<double>& th) const {
        Eigen::VectorXd F = Eigen::VectorXd::Zero(g);
        for (int j = 0; j < g; ++j) F += sheet(th[j]) * omega_vec(*T, c_of(j, th[j]));
        return F;
    }
    Eigen::VectorXd residual(const std::vector<double>& th,
                             const std::vector<double>& gamma) const {
        Eigen::VectorXd F = value(th);
        Eigen::VectorXd r(g);
        for (int k = 0; k < g; ++k) r(k) = wrap2(F(k) - gamma[k]);
        return r;
    }
    /// d(sheet * omega)/d theta: analytic through sin(theta) = 0.
    Eigen::MatrixXd jacobian(const std::vector<double>& th) const {
        const IntervalSystem& sys = T->system();
        int l = sys.num_bands();
        Eigen::MatrixXd J(g, g);
        for (int j = 0; j < g; ++j) {
            double c = c_of(j, th[j]);
            double sgn = ((l - (j + 1)) % 2 == 0) ? 1.0 : -1.0;
            Eigen::VectorXd u(g);
            for (int k = 1; k <= g; ++k)
                u(k - 1) = 2.0 * sgn * T->basis_poly(k)(c) / std::sqrt(rest_gap(sys, j + 1, c));
            J.col(j) = T->solve_Bt(u);
        }
        return J;
    }
};

NewtonOutcome newton_solve(const PotentialTable& T, const std::vector<double>& gamma,
                           std::vector<double> c_init, int max_iter) {
    const IntervalSystem& sys = T.system();
    int g = sys.genus();
    ThetaMap map{&T, g};

    std::vector<double> th(g);
    for (int j = 0; j < g; ++j) {
        Interval gp = sys.gap(j + 1);
        double u = (c_init[j] - gp.mid()) / gp.halfwidth();
        th[j] = std::acos(std::min(1.0, std::max(-1.0, u)));
    }

    Eigen::VectorXd r = map.residual(th, gamma);
    double rn = r.lpNorm<Eigen::Infinity>();
    int iter = 0;
    for (; iter < max_iter && rn > 1e-12; ++iter) {
        Eigen::MatrixXd J = map.jacobian(th);
        Eigen::VectorXd step = J.partialPivLu().solve(-r);
        if (!step.allFinite()) break;
        for (int j = 0; j < g; ++j)
            if (std::abs(step(j)) > 1.0) step(j) /= std::abs(step(j));  // radians cap
        double damp = 1.0;
        bool improved = false;
        for (int back = 0; back < 30; ++back) {
            std::vector<double> trial(th);
            for (int j = 0; j < g; ++j) trial[j] = th[j] + damp * step(j);
            Eigen::VectorXd rt = map.residual(trial, gamma);
            double rtn = rt.lpNorm<Eigen::Infinity>();
            if (rtn < rn) {
                th = trial;
                r = rt;
                rn = rtn;
                improved = true;
                break;
            }
            damp *= 0.5;
        }
        if (!improved) break;
    }

    // project onto the principal sheet: reflect negative-sheet angles and
    // re-verify (integer contributions at the fold make this loss-free for
    // the targets generated by the phase data)
    std::vector<double> c(g);
    for (int j = 0; j < g; ++j) {
        double t = std::remainder(th[j], 2.0 * M_PI);
        c[j] = map.c_of(j, std::abs(t));
    }
    double rn_plus = torus_residual(T, c, gamma).lpNorm<Eigen::Infinity>();
    return {c, rn_plus, iter, rn_plus <= 1e-10};
}

}  // namespace

std::vector<double> abel_forward(const PotentialTable& T, const std::vector<double>& pts) {
    int g = T.system().genus();
    if (static_cast<int>(pts.size()) != g)
        throw std::invalid_argument("abel_forward: need one point per gap");
    for (int j = 0; j < g; ++j) {
        Interval gp = T.system().gap(j + 1);
        if (pts[j] < gp.lo || pts[j] > gp.hi)
            throw std::domain_error("abel_forward: point outside its gap");
    }
    Eigen::VectorXd F = Eigen::VectorXd::Zero(g);
    for (int j = 0; j < g; ++j) F += omega_vec(T, pts[j]);
    return std::vector<double>(F.data(), F.data() + g);
}

std::vector<double> abel_tilde(const PotentialTable& T, const std::vector<double>& pts) {
    int g = T.system().genus();
    for (int j = 0; j < g && j < static_cast<int>(pts.size()); ++j)
        if (!T.system().gap(j + 1).contains_strict(pts[j]))
            throw std::domain_error("abel_tilde: point not strictly inside its gap");
    auto F = abel_forward(T, pts);
    for (double& v : F) v *= 0.5;
    return F;
}

InversionSolution solve_inversion(const PotentialTable& T, const std::vector<double>& gamma,
                                  const std::vector<double>* init) {
    const IntervalSystem& sys = T.system();
    int g = sys.genus();
    InversionSolution sol;
    sol.gamma = gamma;
    if (g == 0) {
        sol.converged = true;
        return sol;
    }
    if (static_cast<int>(gamma.size()) != g)
        throw std::invalid_argument("solve_inversion: gamma size mismatch");

    std::vector<double> start(g);
    for (int j = 0; j < g; ++j) start[j] = sys.gap(j + 1).mid();
    if (init) start = *init;

    NewtonOutcome best = newton_solve(T, gamma, start, 80);

    if (best.residual > 1e-10) {
        // Coarse scan over the product of gaps (endpoints included, with the
        // exact 0/1 measures there), sharing the per-gap pole evaluations;
        // catches corner targets where gamma_k sits on the torus boundary
        // and supplies a good basin for a fresh Newton run.
        const std::vector<double> fracs = {0.0, 0.06, 0.17, 0.31, 0.5, 0.69, 0.83, 0.94, 1.0};
        int np = static_cast<int>(fracs.size());
        std::vector<std::vector<Eigen::VectorXd>> omegas(g);
        for (int j = 0; j < g; ++j) {
            Interval gp = sys.gap(j + 1);
            for (double f : fracs) omegas[j].push_back(omega_vec(T, gp.lo + f * gp.length()));
        }
        std::vector<int> idx(g, 0), best_idx(g, 0);
        double best_scan = 1e300;
        long total = 1;
        for (int j = 0; j < g; ++j) total *= np;
        for (long code = 0; code < total; ++code) {
            long c = code;
            Eigen::VectorXd F = Eigen::VectorXd::Zero(g);
            for (int j = 0; j < g; ++j) {
                idx[j] = static_cast<int>(c % np);
                c /= np;
                F += omegas[j][idx[j]];
            }
            double rn = 0.0;
            for (int k = 0; k < g; ++k) rn = std::max(rn, std::abs(wrap2(F(k) - gamma[k])));
            if (rn < best_scan) {
                best_scan = rn;
                best_idx = idx;
            }
        }
        std::vector<double> c2(g);
        bool corner = best_scan <= 1e-11;
        for (int j = 0; j < g; ++j) {
            Interval gp = sys.gap(j + 1);
            double f = fracs[best_idx[j]];
            if (!corner) f = std::min(0.97, std::max(0.03, f));  // differentiable start
            c2[j] = gp.lo + f * gp.length();
        }
        if (corner) {
            best = {c2, best_scan, best.iterations, true};
        } else {
            NewtonOutcome retry = newton_solve(T, gamma, c2, 80);
            if (retry.residual < best.residual) best = retry;
        }
    }

    // endpoint snap: accept an endpoint when it does not hurt the residual
    sol.c = best.c;
    sol.endpoint_flags.assign(g, false);
    for (int j = 0; j < g; ++j) {
        Interval gp = sys.gap(j + 1);
        double m = 1e-7 * gp.length();
        bool near_lo = sol.c[j] - gp.lo <= m, near_hi = gp.hi - sol.c[j] <= m;
        if (!near_lo && !near_hi) continue;
        double snapped = near_lo ? gp.lo : gp.hi;
        std::vector<double> trial(sol.c);
        trial[j] = snapped;
        double rt = torus_residual(T, trial, gamma).lpNorm<Eigen::Infinity>();
        if (rt <= std::max(best.residual, 1e-11)) {
            sol.c = trial;
            best.residual = rt;
            sol.endpoint_flags[j] = true;
        }
    }
    sol.residual = best.residual;
    sol.iterations = best.iterations;
    sol.converged = best.residual <= 1e-9;
    return sol;
}

InversionSolution solve_for_n(const PotentialTable& T, const Weight& W, int n) {
    auto L = log_moments(T, W);
    GammaData gd = gamma_from_raw(T, L, n);
    InversionSolution sol = solve_inversion(T, gd.gamma);
    sol.n = n;
    sol.sigma = gd.sigma;

    // mod-1 form over the strictly interior points
    int g = T.system().genus();
    double defect = 0.0;
    if (g > 0) {
        Eigen::VectorXd F = Eigen::VectorXd::Zero(g);
        for (int j = 0; j < g; ++j)
            if (!sol.endpoint_flags[j]) F += omega_vec(T, sol.c[j]);
        for (int k = 0; k < g; ++k) {
            double target = n * T.omega_inf()[k] + L[k];
            double d = std::abs(std::remainder(F(k) - target, 1.0));
            defect = std::max(defect, d);
        }
    }
    sol.mod1_defect = defect;
    return sol;
}

PeriodicSchedule periodic_schedule(const PotentialTable& T, const Weight& W, int N, int B_max,
                                   double rational_tol) {
    const auto& omega = T.omega_inf();
    PeriodicSchedule ps;
    ps.N = N;
    for (double w : omega) {
        double mN = w * N;
        int m = static_cast<int>(std::lround(mN));
        if (std::abs(w - static_cast<double>(m) / N) > rational_tol || m < 1 || m > N - 1)
            throw std::domain_error("periodic_schedule: harmonic measures not rational with this denominator");
        ps.m.push_back(m);
    }
    for (int b = 0; b < N; ++b) {
        auto sol = solve_for_n(T, W, b);
        ps.c.push_back(sol.c);
        ps.endpoint.push_back(sol.endpoint_flags);
    }
    double defect = 0.0;
    for (int b = 0; b < N; ++b)
        for (int k = 1; k <= B_max; ++k) {
            auto sol = solve_for_n(T, W, b + k * N);
            for (size_t j = 0; j < sol.c.size(); ++j) {
                // endpoint-degenerate coordinates are equivalent regardless of
                // which gap end carries them (the pole factor collapses to 1)
                if (sol.endpoint_flags[j] && ps.endpoint[b][j]) continue;
                defect = std::max(defect, std::abs(sol.c[j] - ps.c[b][j]));
            }
        }
    ps.max_period_defect = defect;
    return ps;
}

}  // namespace chebband
