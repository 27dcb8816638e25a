#include <doctest.h>

#include <cmath>
#include <random>

#include "chebband/interval_system.hpp"
#include "chebband/quadrature.hpp"

using namespace chebband;

TEST_CASE("validate_system accepts and classifies simple systems") {
    auto s1 = validate_system({-1.0, 1.0});
    CHECK(s1.num_bands() == 1);
    CHECK(s1.num_gaps() == 0);

    auto s2 = validate_system({-1.0, -0.5, 0.5, 1.0});
    CHECK(s2.num_bands() == 2);
    CHECK(s2.gap(1).lo == -0.5);
    CHECK(s2.gap(1).hi == 0.5);
}

TEST_CASE("validate_system rejects bad input") {
    CHECK_THROWS_AS(validate_system({-1.0, 1.0, 0.5, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_system({0.0, 1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_system({0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate_system({0.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("H and sqrt_H_plus anchor values") {
    auto s = validate_system({-1.0, 1.0});
    CHECK(s.H(2.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(s.sqrt_H_plus(cplx(2.0, 0.0)).real() == doctest::Approx(std::sqrt(3.0)));
    // interior boundary value from above: sqrt(z^2-1) -> +i at z = 0
    cplx v = s.sqrt_H_plus(cplx(0.0, 0.0));
    CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(1.0));

    auto s2 = validate_system({-1.0, -0.5, 0.5, 1.0});
    CHECK(s2.H(0.0) == doctest::Approx(0.25 * (-1.0) * (-1.0)).epsilon(1e-15));
    CHECK(s2.H(0.0) == doctest::Approx(0.25));
}

TEST_CASE("sqrt_H_plus squares back to H on the real line") {
    auto s = validate_system({-1.3, -0.7, -0.1, 0.4, 0.9, 1.7});
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-2.0, 2.5);
    for (int i = 0; i < 500; ++i) {
        double x = U(rng);
        cplx v = s.sqrt_H_plus(cplx(x, 0.0));
        double H = s.H(x);
        CHECK(std::abs(v * v - cplx(H)) <= 1e-12 * std::max(1.0, std::abs(H)));
    }
    // and on the upper half-plane, against the square
    std::uniform_real_distribution<double> V(1e-3, 2.0);
    for (int i = 0; i < 200; ++i) {
        cplx z(U(rng), V(rng));
        cplx v = s.sqrt_H_plus(z);
        cplx H = s.H(z);
        CHECK(std::abs(v * v - H) <= 1e-11 * std::max(1.0, std::abs(H)));
    }
}

TEST_CASE("h_inv values, signs, and support") {
    auto s1 = validate_system({-1.0, 1.0});
    CHECK(s1.h_inv(0.0) == doctest::Approx(1.0 / M_PI));
    CHECK(s1.h_inv(2.0) == 0.0);
    CHECK(std::isinf(s1.h_inv(1.0)));

    // sign alternation (-1)^(l-k) on random systems up to l = 4
    std::mt19937 rng(11);
    for (int l = 1; l <= 4; ++l) {
        std::vector<double> pts;
        std::uniform_real_distribution<double> U(0.0, 1.0);
        double x = -1.0;
        for (int i = 0; i < 2 * l; ++i) {
            x += 0.05 + U(rng);
            pts.push_back(x);
        }
        auto s = validate_system(pts);
        for (int k = 1; k <= l; ++k) {
            double m = s.band(k).mid();
            double expect_sign = ((l - k) % 2 == 0) ? 1.0 : -1.0;
            CHECK(s.h_inv(m) * expect_sign > 0.0);
        }
    }
}

TEST_CASE("quadrature: arcsine anchors") {
    QuadConfig cfg;
    auto one = [](double) { return 1.0; };
    double I = integrate_endpoint_singular(one, -1.0, 1.0, cfg);
    CHECK(I == doctest::Approx(M_PI).epsilon(1e-13));

    auto odd = [](double x) { return x; };
    CHECK(integrate_endpoint_singular(odd, -1.0, 1.0, cfg) == doctest::Approx(0.0).epsilon(1e-13));

    // fpint_{-1}^{1} 1/((x-0.3) sqrt(1-x^2)) dx = 0
    double pv = integrate_pv(one, -1.0, 1.0, 0.3, cfg);
    CHECK(std::abs(pv) <= 1e-11);

    // cross-check the PV against a two-sided limit with the pole factored in
    double eps = 1e-6;
    auto f = [](double x) { return 1.0 / ((x - 0.3) * std::sqrt(1.0 - x * x)); };
    double left = integrate_smooth(f, -0.999999, 0.3 - eps, cfg);
    double right = integrate_smooth(f, 0.3 + eps, 0.999999, cfg);
    // the eps-window contributes O(eps) after cancellation, edges O(sqrt eps)
    CHECK(std::abs(pv - (left + right)) <= 5e-3);
}

TEST_CASE("quadrature: partial and pv-plain pieces") {
    QuadConfig cfg;
    // int_0^1 dx / sqrt(1-x^2) = pi/2
    auto one = [](double) { return 1.0; };
    double I = integrate_endpoint_singular_right(one, -1.0, 1.0, 0.0, cfg);
    CHECK(I == doctest::Approx(M_PI / 2).epsilon(1e-13));
    double J = integrate_endpoint_singular_left(one, -1.0, 1.0, 0.0, cfg);
    CHECK(J == doctest::Approx(M_PI / 2).epsilon(1e-13));

    // fpint_0^2 e^t/(t-1) dt  (known via Ei; check against fine split integral)
    auto F = [](double t) { return std::exp(t); };
    double pv = integrate_pv_plain(F, 0.0, 2.0, 1.0, cfg);
    double eps = 1e-7;
    auto f = [](double t) { return std::exp(t) / (t - 1.0); };
    double ref = integrate_smooth(f, 0.0, 1.0 - eps, cfg) + integrate_smooth(f, 1.0 + eps, 2.0, cfg);
    CHECK(pv == doctest::Approx(ref).epsilon(1e-5));
}
