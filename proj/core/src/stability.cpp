#include "dtbc/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dtbc/rootfind.hpp"

namespace dtbc::stability {

using namespace std::complex_literals;

namespace {

constexpr double kZGuard = 1e-12;
constexpr double kCircleTol = 1e-9;

void require_mu(double mu_x, double mu_y) {
    if (!(mu_x > 0.0) || !(mu_y >= 0.0) || !(mu_x + mu_y < 1.0))
        throw std::invalid_argument("stability: need mu_x > 0, mu_y >= 0, mu_x + mu_y < 1");
}

cplx char_denominator(cplx z, double mu_x) {
    // z^2 - 1 + 2 mu_x z kappa_s0(z); equals z^2 - 1 plus the branch chosen
    // by the stable root, and vanishes only at glancing points.
    return z * z - 1.0 + 2.0 * mu_x * z * kappa_s0(z, mu_x);
}

} // namespace

RootPair kappa_roots_2d(cplx z, double theta, double mu_x, double mu_y) {
    if (std::abs(z) <= 1.0 + kZGuard)
        throw std::invalid_argument("kappa_roots_2d: |z| must exceed 1 (classification guard)");
    // kappa^2 + B kappa - 1 = 0; the roots multiply to -1, so the large one is
    // computed cancellation-free and the small one follows from the product.
    const cplx B = (z * z - 1.0 + 2.0i * (mu_y * std::sin(theta) * z)) / (mu_x * z);
    cplx rad = std::sqrt(B * B + 4.0);
    if (std::real(std::conj(B) * rad) < 0.0) rad = -rad;
    const cplx big = -(B + rad) / 2.0;
    RootPair out;
    out.kappa_u = big;
    out.kappa_s = -1.0 / big;
    out.z = z;
    out.theta = theta;
    return out;
}

cplx kappa_s0(cplx z, double mu_x) {
    const cplx B = (z - 1.0 / z) / mu_x;
    cplx rad = std::sqrt(B * B + 4.0);
    if (std::real(std::conj(B) * rad) < 0.0) rad = -rad;
    return -1.0 / (-(B + rad) / 2.0);
}

cplx kappa_u0(cplx z, double mu_x) {
    const cplx B = (z - 1.0 / z) / mu_x;
    cplx rad = std::sqrt(B * B + 4.0);
    if (std::real(std::conj(B) * rad) < 0.0) rad = -rad;
    return -(B + rad) / 2.0;
}

cplx kappa_s1(cplx z, double mu_x, double mu_y) {
    const cplx den = char_denominator(z, mu_x);
    if (std::abs(den) < 1e-14)
        throw std::invalid_argument("kappa_s1: z too close to a glancing point");
    return -mu_y * z * kappa_s0(z, mu_x) / den;
}

cplx kappa_s2(cplx z, double mu_x, double mu_y) {
    const cplx den = char_denominator(z, mu_x);
    if (std::abs(den) < 1e-14)
        throw std::invalid_argument("kappa_s2: z too close to a glancing point");
    const cplx k1 = -mu_y * z * kappa_s0(z, mu_x) / den;
    return -4.0 * z * k1 * (mu_y + mu_x * k1) / den;
}

namespace {

/// z = r e^(i phi), r log-uniform in (1+1e-6, 10], phi uniform.
cplx sample_z(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double lo = std::log(1.0 + 1e-6), hi = std::log(10.0);
    const double r = std::exp(lo + (hi - lo) * uni(rng));
    const double phi = 2.0 * std::numbers::pi * uni(rng);
    return std::polar(r, phi);
}

} // namespace

StabilityReport gr_check_order0(double mu_x, double mu_y, int samples, uint64_t seed) {
    require_mu(mu_x, mu_y);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> theta_dist(0.0, std::numbers::pi);
    StabilityReport rep;
    rep.order = 0;
    rep.samples = samples;
    rep.min_gap = 1e300;
    for (int i = 0; i < samples; ++i) {
        const cplx z = sample_z(rng);
        const double theta = theta_dist(rng);
        const RootPair pair = kappa_roots_2d(z, theta, mu_x, mu_y);
        const double gap = std::abs(pair.kappa_u) - std::abs(kappa_s0(z, mu_x));
        rep.min_gap = std::min(rep.min_gap, gap);
    }
    rep.pass = rep.min_gap > 0.0;
    return rep;
}

StabilityReport gr_check_order1(double mu_x, double mu_y, int samples, uint64_t seed) {
    require_mu(mu_x, mu_y);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> theta_dist(0.0, std::numbers::pi);
    StabilityReport rep;
    rep.order = 1;
    rep.samples = samples;
    rep.min_gap = 1e300;
    double min_factor = 1e300;
    for (int i = 0; i < samples; ++i) {
        const cplx z = sample_z(rng);
        const double theta = theta_dist(rng);
        const double s = std::sin(theta);
        const cplx k0 = kappa_s0(z, mu_x);
        const cplx k1 = kappa_s1(z, mu_x, mu_y);
        const cplx rhs = k0 + 2.0i * (s * k1);

        // Substituted into the characteristic polynomial, the candidate leaves
        // exactly the factored residual (2 i sin)^2 z k1 (mu_y + mu_x k1).
        // Compared relative to the evaluation magnitude, since the residual
        // itself vanishes as theta -> 0.
        const cplx bcoef = z * z - 1.0 + 2.0i * (mu_y * s * z);
        const cplx lhs_poly = mu_x * z * (rhs * rhs - 1.0) + bcoef * rhs;
        const cplx factored = (2.0i * s) * (2.0i * s) * z * k1 * (mu_y + mu_x * k1);
        const double scale = std::abs(mu_x * z) * (std::abs(rhs) * std::abs(rhs) + 1.0) +
                             std::abs(bcoef) * std::abs(rhs);
        rep.max_residual_rel =
            std::max(rep.max_residual_rel, std::abs(lhs_poly - factored) / scale);

        // The factor mu_y + mu_x k1 = -mu_x mu_y z kappa_u0 / denom must stay
        // away from zero whenever mu_y > 0.
        if (mu_y > 0.0) {
            const cplx got = mu_y + mu_x * k1;
            const cplx expect = -mu_x * mu_y * z * kappa_u0(z, mu_x) / char_denominator(z, mu_x);
            const double rel = std::abs(got - expect) / std::max(std::abs(expect), 1e-30);
            rep.max_residual_rel = std::max(rep.max_residual_rel, rel);
            min_factor = std::min(min_factor, std::abs(got));
        }

        // On the sin(theta) = 0 slice the candidate reduces to the stable 1d
        // root and the plain modulus gap applies.
        const double gap = std::abs(kappa_u0(z, mu_x)) - std::abs(k0);
        rep.min_gap = std::min(rep.min_gap, gap);
    }
    if (mu_y > 0.0 && min_factor <= 0.0) rep.anomalies++;
    rep.pass = rep.min_gap > 0.0 && rep.max_residual_rel < 1e-10 && rep.anomalies == 0;
    return rep;
}

double theta_max(double mu_x, double mu_y) {
    if (!(mu_x > 0.0) || !(mu_y > 0.0) || !(mu_x + mu_y < 1.0))
        throw std::invalid_argument("theta_max: need mu_x, mu_y > 0 and mu_x + mu_y < 1");
    const double a = 1.0 - mu_x * mu_x;
    const double den = a * a - mu_x * mu_x * mu_y * mu_y;
    if (!(den > 0.0)) throw std::logic_error("theta_max: nonpositive denominator");
    return 2.0 * std::atan(2.0 * mu_y * a / den);
}

std::array<cplx, 9> order2_polynomial_coefficients(double theta, double mu_x, double mu_y) {
    const cplx a = cplx(0.0, std::sin(theta / 2.0));
    const double b = 4.0 * mu_y * std::cos(theta / 2.0);
    const double mx2 = mu_x * mu_x;
    std::array<cplx, 9> c{};
    c[8] = a;
    c[7] = -b;
    c[6] = a * (8.0 * mx2 - 4.0);
    c[5] = -b * (4.0 * mx2 - 3.0);
    c[4] = a * (6.0 - 16.0 * mx2 + 16.0 * mx2 * (mx2 - mu_y * mu_y));
    c[3] = b * (4.0 * mx2 - 3.0);
    c[2] = a * (8.0 * mx2 - 4.0);
    c[1] = cplx(b, 0.0);
    c[0] = a;
    return c;
}

Order2Roots order2_polynomial_roots(double theta, double mu_x, double mu_y) {
    if (std::sin(theta) == 0.0)
        throw std::invalid_argument("order2_polynomial_roots: sin(theta) must be nonzero");
    const auto carr = order2_polynomial_coefficients(theta, mu_x, mu_y);
    std::vector<cplx> coeffs(carr.begin(), carr.end());

    const double radius =
        std::pow(std::abs(coeffs[0] / coeffs[8]), 1.0 / 8.0); // geometric mean of |roots|
    auto res = roots::aberth(coeffs, roots::circle_start(std::max(radius, 0.5), 8), 1e-13, 500);

    Order2Roots out;
    for (int i = 0; i < 8; ++i) out.roots[i] = res.roots[i];

    for (const cplx& r : out.roots) {
        const double m = std::abs(r);
        if (std::abs(m - 1.0) <= kCircleTol) {
            ++out.unimodular;
        } else if (m > 1.0) {
            ++out.outside;
            out.z_theta = r;
        } else {
            ++out.inside;
        }
    }
    out.z_theta_imaginary =
        out.outside == 1 && std::abs(out.z_theta.real()) <= kCircleTol * std::abs(out.z_theta);

    // Multiset invariance under z -> -1/z.
    out.involution_ok = true;
    for (const cplx& r : out.roots) {
        const cplx img = -1.0 / r;
        double best = 1e300;
        for (const cplx& s : out.roots) best = std::min(best, std::abs(s - img));
        if (best > kCircleTol * std::max(1.0, std::abs(img))) {
            out.involution_ok = false;
            break;
        }
    }
    return out;
}

double theta_max_limit_modulus(double mu_x, double mu_y) {
    const double t = std::tan(theta_max(mu_x, mu_y) / 2.0);
    const double sin_tm = 2.0 * t / (1.0 + t * t);
    const double sin2_half = t * t / (1.0 + t * t);
    const double root = std::sqrt(1.0 - mu_x * mu_x);
    // All three limit values are purely imaginary multiples, so the modulus is
    // a plain absolute value of the imaginary parts' sum.
    const double k0 = (1.0 - root) / mu_x;
    const double k1 = mu_y * (1.0 - root) / (2.0 * mu_x * root);
    const double k2 = mu_y * mu_y * mu_x / (2.0 * std::pow(1.0 - mu_x * mu_x, 1.5));
    return std::abs(k0 + 2.0 * sin_tm * k1 + 4.0 * sin2_half * k2);
}

StabilityReport gr_check_order2(double mu_x, double mu_y, int theta_samples) {
    require_mu(mu_x, mu_y);
    if (!(mu_y > 0.0))
        throw std::invalid_argument("gr_check_order2: mu_y must be positive");
    StabilityReport rep;
    rep.order = 2;
    rep.samples = theta_samples;
    rep.theta_max = theta_max(mu_x, mu_y);

    std::ostringstream detail;
    // Below theta_max: unique purely-imaginary root outside the circle and a
    // modulus bound for the expansion evaluated there. A 2% band around
    // theta_max is excluded, where the double root makes classification moot.
    const int below = theta_samples;
    for (int i = 1; i <= below; ++i) {
        const double theta = rep.theta_max * (0.02 + 0.96 * i / (below + 1.0));
        const auto r = order2_polynomial_roots(theta, mu_x, mu_y);
        if (!(r.outside == 1 && r.inside == 1 && r.unimodular == 6 && r.z_theta_imaginary &&
              r.involution_ok)) {
            rep.anomalies++;
            detail << "theta=" << theta << " pattern out=" << r.outside << " in=" << r.inside
                   << " uni=" << r.unimodular << " imag=" << r.z_theta_imaginary
                   << " inv=" << r.involution_ok << "\n";
            continue;
        }
        const cplx z = r.z_theta;
        const double s = std::sin(theta);
        const double s2 = std::sin(theta / 2.0);
        const cplx expansion = kappa_s0(z, mu_x) + 2.0i * (s * kappa_s1(z, mu_x, mu_y)) -
                               4.0 * s2 * s2 * kappa_s2(z, mu_x, mu_y);
        rep.max_modulus = std::max(rep.max_modulus, std::abs(expansion));
    }
    // Above theta_max: every root unimodular.
    for (int i = 1; i <= theta_samples; ++i) {
        const double theta =
            rep.theta_max + (std::numbers::pi - rep.theta_max) * (0.02 + 0.96 * i / (theta_samples + 1.0));
        if (std::sin(theta) == 0.0) continue;
        const auto r = order2_polynomial_roots(theta, mu_x, mu_y);
        if (!(r.unimodular == 8 && r.involution_ok)) {
            rep.anomalies++;
            detail << "theta=" << theta << " above theta_max: out=" << r.outside
                   << " uni=" << r.unimodular << "\n";
        }
    }
    const double limit = theta_max_limit_modulus(mu_x, mu_y);
    rep.max_modulus = std::max(rep.max_modulus, 0.0);
    rep.pass = rep.anomalies == 0 && rep.max_modulus < 1.0 && limit < 1.0;
    rep.detail = detail.str();
    return rep;
}

double estimate_growth_rate(std::span<const std::pair<double, double>> t_l2) {
    if (t_l2.size() < 10)
        throw std::invalid_argument("estimate_growth_rate: need at least 10 samples");
    std::vector<double> t, y;
    for (const auto& [ti, l2] : t_l2) {
        if (l2 <= 0.0) continue;
        t.push_back(ti);
        y.push_back(std::log(l2));
    }
    if (y.size() < 2) return 0.0;
    // Maximal trailing strictly-increasing window.
    size_t start = y.size() - 1;
    while (start > 0 && y[start] > y[start - 1]) --start;
    const size_t count = y.size() - start;
    if (count < 5) return 0.0;
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (size_t i = start; i < y.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    const double n = static_cast<double>(count);
    const double denom = n * stt - st * st;
    if (denom == 0.0) return 0.0;
    const double slope = (n * sty - st * sy) / denom;
    return slope > 0.0 ? slope : 0.0;
}

} // namespace dtbc::stability
