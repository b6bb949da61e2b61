#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dtbc::stability {

using cplx = std::complex<double>;

/// Roots of mu_x z k^2 + (z^2 - 1 + 2 i mu_y sin(theta) z) k - mu_x z = 0,
/// classified by modulus. For |z| > 1 one root lies strictly inside the unit
/// circle and one strictly outside, and their product is -1.
struct RootPair {
    cplx kappa_s;
    cplx kappa_u;
    cplx z;
    double theta = 0.0;
};

RootPair kappa_roots_2d(cplx z, double theta, double mu_x, double mu_y);

/// One-dimensional stable root (theta = 0 case).
cplx kappa_s0(cplx z, double mu_x);
cplx kappa_u0(cplx z, double mu_x);

/// Tangential correctors of the stable root.
cplx kappa_s1(cplx z, double mu_x, double mu_y);
cplx kappa_s2(cplx z, double mu_x, double mu_y);

struct StabilityReport {
    int order = 0;
    int samples = 0;
    double min_gap = 0.0;          // order 0/1: min(|kappa_u| - |rhs|) over samples
    double max_residual_rel = 0.0; // order 1: worst relative identity residual
    double theta_max = 0.0;        // order 2
    double max_modulus = 0.0;      // order 2: worst |expansion(z_theta)|
    int anomalies = 0;             // order 2: root-classification anomalies
    bool pass = false;
    std::string detail;
};

StabilityReport gr_check_order0(double mu_x, double mu_y, int samples, uint64_t seed = 42);
StabilityReport gr_check_order1(double mu_x, double mu_y, int samples, uint64_t seed = 42);

/// Angle above which the order-2 determinant equation keeps all its roots on
/// the unit circle: theta_max = 2 atan(2 mu_y (1-mu_x^2) / ((1-mu_x^2)^2 - mu_x^2 mu_y^2)).
double theta_max(double mu_x, double mu_y);

struct Order2Roots {
    std::array<cplx, 8> roots{};
    int outside = 0;    // |z| > 1 + tol
    int inside = 0;     // |z| < 1 - tol
    int unimodular = 0; // within tol of the unit circle
    bool involution_ok = false; // multiset closed under z -> -1/z
    cplx z_theta;               // set when outside == 1
    bool z_theta_imaginary = false;
};

/// Expands the order-2 determinant condition into its degree-8 coefficients,
/// solves it, and classifies the roots (tolerance 1e-9 against the circle).
Order2Roots order2_polynomial_roots(double theta, double mu_x, double mu_y);

/// Degree-8 coefficients, low order first.
std::array<cplx, 9> order2_polynomial_coefficients(double theta, double mu_x, double mu_y);

/// |expansion| at the theta -> theta_max limit (z -> -i), from the closed
/// limit values of kappa_s0/s1/s2; must stay below 1.
double theta_max_limit_modulus(double mu_x, double mu_y);

/// Sweeps theta across (0, pi), checking the involution property, the root
/// count pattern on both sides of theta_max, and the modulus bound at z_theta.
StabilityReport gr_check_order2(double mu_x, double mu_y, int theta_samples);

/// Least-squares slope of log(l2) over the maximal trailing window where the
/// series is non-decreasing; 0 when there is no meaningful growth window.
double estimate_growth_rate(std::span<const std::pair<double, double>> t_l2);

} // namespace dtbc::stability
