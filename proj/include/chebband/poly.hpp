#pragma once

#include <complex>
#include <vector>

#include "chebband/interval_system.hpp"

namespace chebband {

/// Dense real polynomial in the monomial basis, coeffs[k] multiplies x^k.
struct Poly {
    std::vector<double> c;

    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {}
    static Poly constant(double v) { return Poly({v}); }
    static Poly monic_from_roots(const std::vector<double>& roots) {
        Poly p({1.0});
        for (double r : roots) p = p * Poly({-r, 1.0});
        return p;
    }

    int degree() const { return c.empty() ? -1 : static_cast<int>(c.size()) - 1; }

    double operator()(double x) const {
        double v = 0.0;
        for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
        return v;
    }
    cplx operator()(cplx z) const {
        cplx v = 0.0;
        for (size_t i = c.size(); i-- > 0;) v = v * z + c[i];
        return v;
    }

    Poly derivative() const {
        if (c.size() <= 1) return Poly({0.0});
        std::vector<double> d(c.size() - 1);
        for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
        return Poly(std::move(d));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c.empty() || b.c.empty()) return Poly();
        std::vector<double> r(a.c.size() + b.c.size() - 1, 0.0);
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return Poly(std::move(r));
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<double> r(std::max(a.c.size(), b.c.size()), 0.0);
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(double s, const Poly& p) {
        Poly r = p;
        for (double& v : r.c) v *= s;
        return r;
    }
};

}  // namespace chebband
