#include "chebband/szego.hpp"

#include <cmath>

#include "chebband/remez.hpp"

namespace chebband {

std::vector<double> log_moments(const PotentialTable& T, const Weight& W) {
    int g = T.system().genus();
    if (g == 0) return {};
    if (W.is_unit()) return std::vector<double>(g, 0.0);
    Eigen::VectorXd m(g);
    for (int j = 1; j <= g; ++j) {
        double v = 0.0;
        for (int k = 1; k <= T.system().num_bands(); ++k)
            v += T.band_h_integral(
                k, [&](double t) { return T.basis_poly(j)(t) * W.log_value(t); });
        m(j - 1) = v;
    }
    // orientation pinned by the anchor identity L_k(|.-c0|) = omega_k(c0) - omega_k(inf)
    Eigen::VectorXd L = -2.0 * T.solve_Bt(m);
    return std::vector<double>(L.data(), L.data() + g);
}

std::vector<double> log_moments_full(const PotentialTable& T, const Weight& W) {
    auto L = log_moments(T, W);
    double s = 0.0;
    for (double v : L) s += v;
    L.push_back(-s);  // partition of unity: the normal derivatives sum to zero
    return L;
}

GammaData gamma_from_raw(const PotentialTable& T, const std::vector<double>& L, int n) {
    int g = T.system().genus();
    GammaData out;
    for (int k = 0; k < g; ++k) {
        double raw = n * T.omega_inf()[k] + L[k];
        double t = raw - 2.0 * std::floor(raw / 2.0);  // in [0,2)
        // snap knife-edge representatives so equal inputs reduce identically
        double r = std::round(t);
        if (std::abs(t - r) < 5e-10) t = (r == 2.0) ? 0.0 : r;
        if (t <= 1.0) {
            out.gamma.push_back(t);
            out.sigma.push_back(0);
        } else {
            out.gamma.push_back(t - 1.0);
            out.sigma.push_back(1);
        }
    }
    return out;
}

GammaData gamma_n(const PotentialTable& T, const Weight& W, int n) {
    return gamma_from_raw(T, log_moments(T, W), n);
}

double SzegoData::u(double x) const {
    double v = W_.log_value(x) - mu_[0];
    for (size_t j = 0; j < chat_.size(); ++j)
        v -= mu_[j + 1] * std::log(std::abs(x - chat_[j]));
    return v;
}

cplx SzegoData::cauchy(cplx z) const {
    const IntervalSystem& sys = T_->system();
    cplx acc = 0.0;
    for (int k = 1; k <= sys.num_bands(); ++k) {
        Interval b = sys.band(k);
        double sgn = sys.band_sign(k);
        double m = b.mid(), w = b.halfwidth();
        auto f = [&](double th) -> cplx {
            double t = m + w * std::cos(th);
            return cplx(u(t) * sgn / std::sqrt(rest_band(sys, k, t))) / (z - t);
        };
        acc += integrate_adaptive_cplx(f, 0.0, M_PI, T_->quad());
    }
    return acc / M_PI;
}

cplx SzegoData::I_log(cplx z) const { return T_->system().sqrt_H_plus(z) * cauchy(z); }

cplx SzegoData::I_value(cplx z) const { return std::exp(I_log(z)); }

double SzegoData::psi(double x) const {
    const IntervalSystem& sys = T_->system();
    auto loc = sys.locate(x);
    if (loc.kind != PointLocation::Band)
        throw std::domain_error("psi: x must be strictly inside a band");
    double acc = 0.0;
    for (int k = 1; k <= sys.num_bands(); ++k) {
        Interval b = sys.band(k);
        double sgn = sys.band_sign(k);
        auto F = [&](double t) { return u(t) * sgn / std::sqrt(rest_band(sys, k, t)); };
        if (k == loc.index) {
            // 1/(x-t) = -1/(t-x)
            acc -= integrate_pv(F, b.lo, b.hi, x, T_->quad());
        } else {
            auto G = [&](double t) { return F(t) / (x - t); };
            acc += integrate_endpoint_singular(G, b.lo, b.hi, T_->quad());
        }
    }
    return sys.band_sign(loc.index) * std::sqrt(-sys.H(x)) * acc / M_PI;
}

double SzegoData::log_modulus(cplx z) const {
    double v = mu_[0];
    for (size_t j = 0; j < chat_.size(); ++j) {
        v += mu_[j + 1] * (std::log(std::abs(z - chat_[j])) + anchors_[j].green(z));
    }
    double sum_mu = 0.0;
    for (size_t j = 0; j < chat_.size(); ++j) sum_mu += mu_[j + 1];
    if (sum_mu != 0.0) v -= sum_mu * T_->green_inf(z);
    return v + (T_->system().sqrt_H_plus(z) * cauchy(z)).real();
}

double SzegoData::boundary_modulus(double x) const {
    double v = mu_[0] + u(x);
    for (size_t j = 0; j < chat_.size(); ++j) v += mu_[j + 1] * std::log(std::abs(x - chat_[j]));
    return std::exp(v);
}

double SzegoData::boundary_phase(double x) const {
    double ph = psi(x);
    double ph_inf = T_->phase_inf(x);
    for (size_t j = 0; j < chat_.size(); ++j) {
        double arg_lin = (x < chat_[j]) ? M_PI : 0.0;  // arg(x - c^ + i0)
        ph += mu_[j + 1] * (arg_lin + anchors_[j].phase(x) - ph_inf);
    }
    return ph;
}

cplx SzegoData::reflected_value(cplx z) const {
    cplx lg = 2.0 * mu_[0];
    for (size_t j = 0; j < chat_.size(); ++j) lg += 2.0 * mu_[j + 1] * std::log(z - chat_[j]);
    return std::exp(lg);
}

SzegoData szego_function(const PotentialTable& T, const Weight& W) {
    const IntervalSystem& sys = T.system();
    W.check_positive(sys);
    int l = sys.num_bands();
    SzegoData S;
    S.T_ = &T;
    S.W_ = W;
    for (int j = 1; j <= l - 1; ++j) S.chat_.push_back(sys.gap(j).mid());
    for (double c : S.chat_) S.anchors_.push_back(GreenPole::make(T, c));

    // Moment conditions int x^s u / h = 0, s = 0..l-1, for the multipliers.
    Eigen::MatrixXd M(l, l);
    Eigen::VectorXd b(l);
    for (int s = 0; s < l; ++s) {
        double c0 = 0.0, bw = 0.0;
        std::vector<double> cj(l - 1, 0.0);
        for (int k = 1; k <= l; ++k) {
            c0 += T.band_h_integral(k, [&](double t) { return std::pow(t, s); });
            bw += T.band_h_integral(k, [&](double t) { return std::pow(t, s) * W.log_value(t); });
            for (int j = 0; j < l - 1; ++j)
                cj[j] += T.band_h_integral(k, [&, j](double t) {
                    return std::pow(t, s) * std::log(std::abs(t - S.chat_[j]));
                });
        }
        M(s, 0) = c0;
        for (int j = 0; j < l - 1; ++j) M(s, j + 1) = cj[j];
        b(s) = bw;
    }
    Eigen::VectorXd mu = M.partialPivLu().solve(b);
    S.mu_.assign(mu.data(), mu.data() + l);

    double lw = S.mu_[0];
    for (int j = 0; j < l - 1; ++j)
        lw += S.mu_[j + 1] * (std::log(T.capacity()) + T.green_inf(S.chat_[j]));
    S.Winf_ = std::exp(lw);
    return S;
}

double OmegaProduct::log_modulus(cplx z) const {
    double v = std::log(std::abs(rho_.rho_poly()(z)));
    double gi = T_->green_inf(z);
    for (size_t i = 0; i < real_poles_.size(); ++i)
        v += real_mult_[i] * (real_poles_[i].green(z) - gi);
    for (size_t i = 0; i < pair_poles_.size(); ++i)
        v += pair_mult_[i] * (pair_poles_[i].green_pair(z) - 2.0 * gi);
    return v;
}

double OmegaProduct::boundary_phase(double x) const {
    double ph_inf = T_->phase_inf(x);
    double ph = 0.0;
    for (size_t i = 0; i < real_poles_.size(); ++i)
        ph += real_mult_[i] * (real_poles_[i].phase(x) - ph_inf);
    for (size_t i = 0; i < pair_poles_.size(); ++i)
        ph += pair_mult_[i] * (pair_poles_[i].phase_pair(x) - 2.0 * ph_inf);
    return ph;
}

OmegaProduct omega_product(const PotentialTable& T, const Weight& rho) {
    if (rho.kind() != Weight::Kind::Polynomial)
        throw std::invalid_argument("omega_product expects a polynomial weight");
    const IntervalSystem& sys = T.system();
    OmegaProduct O;
    O.T_ = &T;
    O.rho_ = rho;
    double lg = std::log(std::abs(rho.poly_leading()));
    int nu = rho.poly_degree();
    lg += nu * std::log(T.capacity());
    for (const auto& r : rho.roots()) {
        if (r.w.imag() == 0.0) {
            if (sys.on_set(r.w.real()))
                throw std::domain_error("omega_product: root on the bands");
            O.real_poles_.push_back(GreenPole::make(T, r.w.real()));
            O.real_mult_.push_back(r.mult);
            lg += r.mult * T.green_inf(r.w.real());
        } else {
            O.pair_poles_.push_back(GreenPolePair::make(T, r.w));
            O.pair_mult_.push_back(r.mult);
            lg += 2.0 * r.mult * T.green_inf(r.w);
        }
    }
    O.Oinf_ = std::exp(lg);
    return O;
}

double WeightPolyFit::operator()(double x) const {
    double u = (2.0 * x - (hull.lo + hull.hi)) / (hull.hi - hull.lo);
    return cheb_eval(cheb, u) + shift + correction(x);
}

Weight WeightPolyFit::as_weight(const IntervalSystem& sys) const {
    int deg = static_cast<int>(cheb.size()) + correction.degree() + 4;
    return Weight::from_function(sys, [*this](double x) { return (*this)(x); },
                                 std::max(24, 2 * deg));
}

WeightPolyFit approx_weight_poly(const PotentialTable& T, const Weight& W, int nu) {
    const IntervalSystem& sys = T.system();
    W.check_positive(sys);
    int l = sys.num_bands();

    WeightPolyFit fit;
    fit.hull = sys.hull();
    UniformFit base = best_uniform_poly(sys, [&](double x) { return W(x); }, nu);
    fit.cheb = base.coeff;
    fit.correction = Poly(std::vector<double>(l, 0.0));

    // positivity clip
    double mn = 1e300;
    for (int k = 1; k <= l; ++k) {
        Interval b = sys.band(k);
        for (int i = 0; i <= 600; ++i) {
            double x = b.lo + b.length() * i / 600;
            mn = std::min(mn, fit(x));
        }
    }
    if (mn <= 0.0) fit.shift = -mn + 1e-8;

    // Newton on the l lowest coefficients to zero the log-moment mismatch
    auto mismatch = [&]() {
        Eigen::VectorXd m(l);
        for (int s = 0; s < l; ++s) {
            double v = 0.0;
            for (int k = 1; k <= l; ++k)
                v += T.band_h_integral(k, [&](double t) {
                    return std::pow(t, s) * (std::log(fit(t)) - W.log_value(t));
                });
            m(s) = v;
        }
        return m;
    };
    for (int it = 0; it < 8; ++it) {
        Eigen::VectorXd m = mismatch();
        if (m.lpNorm<Eigen::Infinity>() < 1e-12) break;
        Eigen::MatrixXd J(l, l);
        for (int s = 0; s < l; ++s)
            for (int q = 0; q < l; ++q) {
                double v = 0.0;
                for (int k = 1; k <= l; ++k)
                    v += T.band_h_integral(
                        k, [&](double t) { return std::pow(t, s + q) / fit(t); });
                J(s, q) = v;
            }
        Eigen::VectorXd step = J.partialPivLu().solve(m);
        double damp = 1.0;
        for (int back = 0; back < 30; ++back) {
            Poly trial = fit.correction;
            for (int q = 0; q < l; ++q) trial.c[q] -= damp * step(q);
            Poly saved = fit.correction;
            fit.correction = trial;
            double mmin = 1e300;
            for (int k = 1; k <= l; ++k) {
                Interval b = sys.band(k);
                for (int i = 0; i <= 200; ++i)
                    mmin = std::min(mmin, fit(b.lo + b.length() * i / 200));
            }
            if (mmin > 0.0) break;
            fit.correction = saved;
            damp *= 0.5;
        }
    }

    fit.moment_mismatch = mismatch();
    double rel = 0.0;
    for (int k = 1; k <= l; ++k) {
        Interval b = sys.band(k);
        for (int i = 0; i <= 800; ++i) {
            double x = b.lo + b.length() * i / 800;
            rel = std::max(rel, std::abs(fit(x) / W(x) - 1.0));
        }
    }
    fit.sup_rel_error = rel;
    return fit;
}

}  // namespace chebband
