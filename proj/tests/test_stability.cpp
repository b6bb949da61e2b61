#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "dtbc/coefficients.hpp"
#include "dtbc/stability.hpp"

using namespace dtbc;
using stability::cplx;

TEST_CASE("root pair classification and product") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double mux = 0.05 + 0.85 * uni(rng);
        const double muy = uni(rng) * (0.95 - mux);
        const double r = std::exp(std::log(1.0 + 1e-6) +
                                  (std::log(10.0) - std::log(1.0 + 1e-6)) * uni(rng));
        const cplx z = std::polar(r, 2.0 * std::numbers::pi * uni(rng));
        const double theta = std::numbers::pi * uni(rng);
        const auto pair = stability::kappa_roots_2d(z, theta, mux, muy);
        CHECK(std::abs(pair.kappa_s) < 1.0);
        CHECK(std::abs(pair.kappa_u) > 1.0);
        CHECK(std::abs(pair.kappa_s * pair.kappa_u + 1.0) < 1e-12);
    }
    CHECK_THROWS(stability::kappa_roots_2d(cplx(1.0, 0.0), 0.1, 0.5, 0.1));
}

TEST_CASE("glancing values make the discriminant vanish") {
    for (double mux : {0.3, 0.5, 5.0 / 6.0}) {
        const cplx z(std::sqrt(1.0 - mux * mux), mux); // i mux + sqrt(1-mux^2)
        const cplx zi = 1.0 / z;
        const cplx disc = (z - zi) * (z - zi) / (mux * mux) + 4.0;
        CHECK(std::abs(disc) < 1e-12);
    }
}

TEST_CASE("large-z behaviour of the stable and unstable roots") {
    const double mux = 0.6;
    const cplx z(1e6, 0.0);
    const cplx ks = stability::kappa_s0(z, mux);
    const cplx ku = stability::kappa_u0(z, mux);
    CHECK(std::abs(ks * z / mux - 1.0) < 1e-9);
    CHECK(std::abs(ku * mux / z + 1.0) < 1e-9);
}

TEST_CASE("laurent expansions match the kernel sequences") {
    const double mux = 0.55, muy = 0.2;
    const cplx z(3.0, 0.0);
    const auto s0 = coeffs::gen_s0(mux, 51);
    const auto s1 = coeffs::gen_s1(mux, muy, 51);
    const auto s2 = coeffs::gen_s2(mux, muy, 51);

    cplx sum0 = 0.0, sum1 = 0.0, sum2 = 0.0;
    for (int n = 50; n >= 0; --n) {
        sum0 += s0[n] * std::pow(z, -2.0 * n - 1.0);
        sum1 += s1[n] * std::pow(z, -2.0 * n);
        sum2 += s2[n] * std::pow(z, -2.0 * n - 1.0);
    }
    CHECK(std::abs(stability::kappa_s0(z, mux) - sum0) < 1e-12);
    CHECK(std::abs(stability::kappa_s1(z, mux, muy) - sum1) < 1e-12);
    CHECK(std::abs(stability::kappa_s2(z, mux, muy) - sum2) < 1e-12);

    // Also off the real axis.
    const cplx zc(1.7, 2.2);
    cplx c0 = 0.0, c1 = 0.0;
    for (int n = 50; n >= 0; --n) {
        c0 += s0[n] * std::pow(zc, -2.0 * n - 1.0);
        c1 += s1[n] * std::pow(zc, -2.0 * n);
    }
    CHECK(std::abs(stability::kappa_s0(zc, mux) - c0) < 1e-11);
    CHECK(std::abs(stability::kappa_s1(zc, mux, muy) - c1) < 1e-11);
}

TEST_CASE("zero tangential velocity kills the correctors") {
    const cplx z(2.0, 1.0);
    CHECK(std::abs(stability::kappa_s1(z, 0.5, 0.0)) == 0.0);
    CHECK(std::abs(stability::kappa_s2(z, 0.5, 0.0)) == 0.0);
}

TEST_CASE("corrector limits approaching z = -i") {
    const double mux = 1.0 / 3.0, muy = 1.0 / 6.0;
    const double root = std::sqrt(1.0 - mux * mux);
    const cplx z = cplx(0.0, -1.0) * (1.0 + 1e-7);
    const cplx k0_lim(0.0, (1.0 - root) / mux);
    const cplx k1_lim(muy * (1.0 - root) / (2.0 * mux * root), 0.0);
    const cplx k2_lim(0.0, -muy * muy * mux / (2.0 * std::pow(1.0 - mux * mux, 1.5)));
    CHECK(std::abs(stability::kappa_s0(z, mux) - k0_lim) < 1e-3);
    CHECK(std::abs(stability::kappa_s1(z, mux, muy) - k1_lim) < 1e-3);
    CHECK(std::abs(stability::kappa_s2(z, mux, muy) - k2_lim) < 1e-3);
}

TEST_CASE("order-0 and order-1 checks pass with margin") {
    auto r0 = stability::gr_check_order0(0.5, 0.3, 2000, 9);
    CHECK(r0.pass);
    CHECK(r0.min_gap > 0.0);

    auto r1 = stability::gr_check_order1(0.5, 0.3, 2000, 9);
    CHECK(r1.pass);
    CHECK(r1.min_gap > 0.0);
    CHECK(r1.max_residual_rel < 1e-10);

    // mu_y = 0 degenerates to the order-0 situation.
    auto r1z = stability::gr_check_order1(0.5, 0.0, 500, 9);
    CHECK(r1z.pass);
}

TEST_CASE("theta_max formula and the double root at -i") {
    const double mux = 1.0 / 3.0, muy = 1.0 / 6.0;
    const double a = 1.0 - mux * mux;
    const double expect = 2.0 * std::atan(2.0 * muy * a / (a * a - mux * mux * muy * muy));
    const double tm = stability::theta_max(mux, muy);
    CHECK(tm == doctest::Approx(expect).epsilon(1e-15));
    CHECK(tm > 0.0);
    CHECK(tm < std::numbers::pi);

    // At theta_max, -i is a double root of the degree-8 equation.
    const auto c = stability::order2_polynomial_coefficients(tm, mux, muy);
    cplx p = 0.0, dp = 0.0, scale = 0.0;
    const cplx z(0.0, -1.0);
    for (int k = 8; k >= 0; --k) {
        if (k < 8) dp = dp * z + p;
        p = p * z + c[k];
        scale += std::abs(c[k]);
    }
    CHECK(std::abs(p) < 1e-12 * std::abs(scale));
    CHECK(std::abs(dp) < 1e-9 * std::abs(scale));

    // mu_y -> 0 closes the angle.
    CHECK(stability::theta_max(0.4, 1e-9) < 1e-8);
}

TEST_CASE("degree-8 expansion equals the factored form") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    const double mux = 0.45, muy = 0.25, theta = 0.7;
    const auto c = stability::order2_polynomial_coefficients(theta, mux, muy);
    for (int trial = 0; trial < 20; ++trial) {
        const cplx z(uni(rng), uni(rng));
        cplx horner = 0.0;
        for (int k = 8; k >= 0; --k) horner = horner * z + c[k];
        const cplx z2m1 = z * z - 1.0;
        const cplx direct =
            cplx(0.0, std::sin(theta / 2.0)) *
                (std::pow(z2m1, 4.0) + 8.0 * mux * mux * z * z * z2m1 * z2m1 +
                 16.0 * mux * mux * (mux * mux - muy * muy) * std::pow(z, 4.0)) -
            4.0 * std::cos(theta / 2.0) * muy * z * z2m1 * (z2m1 * z2m1 + 4.0 * mux * mux * z * z);
        CHECK(std::abs(horner - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
    }

    // Substituting z -> iz and dividing by i turns the coefficients real.
    const cplx i(0.0, 1.0);
    for (int k = 0; k <= 8; ++k) {
        const cplx transformed = c[k] * std::pow(i, k) / i;
        CHECK(std::abs(transformed.imag()) < 1e-12 * std::max(1.0, std::abs(transformed)));
    }
}

TEST_CASE("order-2 root pattern on both sides of theta_max") {
    const double mux = 1.0 / 3.0, muy = 1.0 / 6.0;
    const double tm = stability::theta_max(mux, muy);

    const auto below = stability::order2_polynomial_roots(0.5 * tm, mux, muy);
    CHECK(below.involution_ok);
    CHECK(below.outside == 1);
    CHECK(below.inside == 1);
    CHECK(below.unimodular == 6);
    CHECK(below.z_theta_imaginary);

    const auto above = stability::order2_polynomial_roots(
        tm + 0.5 * (std::numbers::pi - tm), mux, muy);
    CHECK(above.involution_ok);
    CHECK(above.unimodular == 8);
}

TEST_CASE("order-2 sweep passes") {
    const auto rep = stability::gr_check_order2(1.0 / 3.0, 1.0 / 6.0, 60);
    CHECK(rep.pass);
    CHECK(rep.anomalies == 0);
    CHECK(rep.max_modulus < 1.0);
    CHECK(rep.max_modulus > 0.0);

    CHECK(stability::theta_max_limit_modulus(1.0 / 3.0, 1.0 / 6.0) < 1.0);
}

TEST_CASE("growth-rate estimator") {
    std::vector<std::pair<double, double>> flat;
    for (int i = 0; i < 50; ++i) flat.emplace_back(0.1 * i, 2.0);
    CHECK(stability::estimate_growth_rate(flat) == 0.0);

    std::vector<std::pair<double, double>> grow;
    for (int i = 0; i < 200; ++i) {
        const double t = 0.05 * i;
        grow.emplace_back(t, std::exp(0.7 * t));
    }
    CHECK(stability::estimate_growth_rate(grow) == doctest::Approx(0.7).epsilon(1e-6));

    std::vector<std::pair<double, double>> short_series(5, {1.0, 1.0});
    CHECK_THROWS(stability::estimate_growth_rate(short_series));
}
