#include "dtbc/coefficients.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dtbc::coeffs {

namespace {

void require_mu_x(double mu_x) {
    if (!(mu_x > 0.0 && mu_x < 1.0))
        throw std::invalid_argument("coefficients: mu_x must lie in (0,1)");
}

void require_mu_pair(double mu_x, double mu_y) {
    require_mu_x(mu_x);
    if (!(mu_y >= 0.0) || !(mu_x + mu_y < 1.0))
        throw std::invalid_argument("coefficients: need mu_y >= 0 and mu_x + mu_y < 1");
}

void require_count(int count) {
    if (count < 2) throw std::invalid_argument("coefficients: count must be >= 2");
}

// Internal accumulation runs in extended precision: the convolution routes
// compound rounding error across n, and the published route-agreement bound
// (1e-12 through n = 1000) needs the extra headroom. Results are doubles.
using acc_t = long double;

std::vector<double> collapse(const std::vector<acc_t>& v) {
    return {v.begin(), v.end()};
}

std::vector<acc_t> s0_closed_acc(acc_t mu_x, int count) {
    const acc_t alpha = 1.0L - 2.0L * mu_x * mu_x;
    std::vector<acc_t> s(count);
    s[0] = mu_x;
    s[1] = mu_x * (1.0L - mu_x * mu_x);
    for (int n = 2; n < count; ++n)
        s[n] = (2.0L * n - 1.0L) / (n + 1.0L) * alpha * s[n - 1] -
               (n - 2.0L) / (n + 1.0L) * s[n - 2];
    return s;
}

std::vector<double> s0_closed(double mu_x, int count) {
    return collapse(s0_closed_acc(mu_x, count));
}

std::vector<acc_t> s0_inductive_acc(acc_t mu_x, int count) {
    std::vector<acc_t> s(count);
    s[0] = mu_x;
    for (int n = 0; n + 1 < count; ++n) {
        acc_t conv = 0.0L;
        for (int p = 0; p <= n; ++p) conv += s[p] * s[n - p];
        s[n + 1] = s[n] - mu_x * conv;
    }
    return s;
}

std::vector<double> s0_inductive(double mu_x, int count) {
    return collapse(s0_inductive_acc(mu_x, count));
}

std::vector<double> s1_closed(double mu_x, double mu_y, int count) {
    const acc_t alpha = 1.0L - 2.0L * static_cast<acc_t>(mu_x) * mu_x;
    const acc_t scale = static_cast<acc_t>(mu_y) / (2.0L * mu_x);
    std::vector<acc_t> s(count);
    s[0] = 0.0L;
    // Running Legendre pair (P_{n-1}, P_n) at alpha.
    acc_t pm1 = 1.0L, p = alpha;
    s[1] = scale * (p - pm1);
    for (int n = 2; n < count; ++n) {
        const acc_t pn = ((2.0L * n - 1.0L) * alpha * p - (n - 1.0L) * pm1) / n;
        pm1 = p;
        p = pn;
        s[n] = scale * (p - pm1);
    }
    return collapse(s);
}

std::vector<acc_t> s1_inductive_acc(acc_t mu_x, acc_t mu_y, int count) {
    const std::vector<acc_t> s0 = s0_inductive_acc(mu_x, count);
    std::vector<acc_t> s(count);
    s[0] = 0.0L;
    for (int n = 0; n + 1 < count; ++n) {
        acc_t conv = 0.0L;
        for (int m = 0; m <= n; ++m) conv += s[m] * s0[n - m];
        s[n + 1] = s[n] - 2.0L * mu_x * conv - mu_y * s0[n];
    }
    return s;
}

std::vector<double> s1_inductive(double mu_x, double mu_y, int count) {
    return collapse(s1_inductive_acc(mu_x, mu_y, count));
}

std::vector<double> s2_closed(double mu_x, double mu_y, int count) {
    const acc_t alpha = 1.0L - 2.0L * static_cast<acc_t>(mu_x) * mu_x;
    std::vector<acc_t> P(count), U(count);
    P[0] = 1.0L;
    U[0] = 1.0L;
    if (count > 1) {
        P[1] = alpha;
        U[1] = 2.0L * alpha;
    }
    for (int n = 2; n < count; ++n) {
        P[n] = ((2.0L * n - 1.0L) * alpha * P[n - 1] - (n - 1.0L) * P[n - 2]) / n;
        U[n] = 2.0L * alpha * U[n - 1] - U[n - 2];
    }
    const acc_t scale = 4.0L * static_cast<acc_t>(mu_x) * mu_y * mu_y;
    std::vector<acc_t> s(count);
    s[0] = 0.0L;
    for (int n = 1; n < count; ++n) {
        acc_t conv = 0.0L;
        for (int m = 0; m <= n - 1; ++m) conv += U[m] * P[n - 1 - m];
        s[n] = scale * conv;
    }
    return collapse(s);
}

std::vector<double> s2_inductive(double mu_x, double mu_y, int count) {
    const std::vector<acc_t> s0 = s0_inductive_acc(mu_x, count);
    const std::vector<acc_t> s1 = s1_inductive_acc(mu_x, mu_y, count + 1);
    std::vector<acc_t> s(count);
    s[0] = 0.0L;
    for (int n = 0; n + 1 < count; ++n) {
        acc_t conv0 = 0.0L, conv1 = 0.0L;
        for (int m = 1; m <= n; ++m) {
            conv0 += s[m] * s0[n - m];
            conv1 += s1[m] * s1[n + 1 - m];
        }
        s[n + 1] = s[n] - 2.0L * mu_x * conv0 - 4.0L * mu_y * s1[n + 1] - 4.0L * mu_x * conv1;
    }
    return collapse(s);
}

} // namespace

double legendre(int n, double x) {
    if (n < 0) throw std::invalid_argument("legendre: n must be >= 0");
    if (n == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int m = 2; m <= n; ++m) {
        const double pn = ((2.0 * m - 1.0) * x * p - (m - 1.0) * pm1) / m;
        pm1 = p;
        p = pn;
    }
    return p;
}

double chebyshev_u(int n, double x) {
    if (n < 0) throw std::invalid_argument("chebyshev_u: n must be >= 0");
    if (n == 0) return 1.0;
    double um1 = 1.0, u = 2.0 * x;
    for (int m = 2; m <= n; ++m) {
        const double un = 2.0 * x * u - um1;
        um1 = u;
        u = un;
    }
    return u;
}

CoefficientSequence gen_s0(double mu_x, int count, Route route) {
    require_mu_x(mu_x);
    require_count(count);
    CoefficientSequence out{Family::S0, route, mu_x, 0.0, {}};
    out.values = (route == Route::ClosedForm) ? s0_closed(mu_x, count) : s0_inductive(mu_x, count);
    return out;
}

CoefficientSequence gen_s1(double mu_x, double mu_y, int count, Route route) {
    require_mu_pair(mu_x, mu_y);
    require_count(count);
    CoefficientSequence out{Family::S1, route, mu_x, mu_y, {}};
    out.values = (route == Route::ClosedForm) ? s1_closed(mu_x, mu_y, count)
                                              : s1_inductive(mu_x, mu_y, count);
    return out;
}

CoefficientSequence gen_s2(double mu_x, double mu_y, int count, Route route) {
    require_mu_pair(mu_x, mu_y);
    require_count(count);
    CoefficientSequence out{Family::S2, route, mu_x, mu_y, {}};
    out.values = (route == Route::ClosedForm) ? s2_closed(mu_x, mu_y, count)
                                              : s2_inductive(mu_x, mu_y, count);
    return out;
}

CoefficientSequence gen_family(Family family, double mu_x, double mu_y, int count, Route route) {
    CoefficientSequence out;
    switch (family) {
        case Family::S0: out = gen_s0(mu_x, count, route); break;
        case Family::S1: out = gen_s1(mu_x, mu_y, count, route); break;
        case Family::S2: out = gen_s2(mu_x, mu_y, count, route); break;
        case Family::T0: out = gen_s0(mu_y, count, route); break;
        case Family::T1: out = gen_s1(mu_y, mu_x, count, route); break;
        case Family::T2: out = gen_s2(mu_y, mu_x, count, route); break;
    }
    out.family = family;
    out.mu_x = mu_x;
    out.mu_y = mu_y;
    return out;
}

const char* family_name(Family family) {
    switch (family) {
        case Family::S0: return "s0";
        case Family::S1: return "s1";
        case Family::S2: return "s2";
        case Family::T0: return "t0";
        case Family::T1: return "t1";
        case Family::T2: return "t2";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "s0") return Family::S0;
    if (name == "s1") return Family::S1;
    if (name == "s2") return Family::S2;
    if (name == "t0") return Family::T0;
    if (name == "t1") return Family::T1;
    if (name == "t2") return Family::T2;
    throw std::invalid_argument("unknown coefficient family: " + name);
}

double asymptotic_s0(int n, double mu_x) {
    const double theta = std::acos(1.0 - 2.0 * mu_x * mu_x);
    const double pi = std::numbers::pi;
    return std::pow(1.0 - mu_x * mu_x, 0.25) / std::sqrt(pi * mu_x * n * n * n) *
           std::sin((n + 0.5) * theta - pi / 4.0);
}

double asymptotic_s1(int n, double mu_x, double mu_y) {
    const double theta = std::acos(1.0 - 2.0 * mu_x * mu_x);
    const double pi = std::numbers::pi;
    return -(mu_y / mu_x) * std::sqrt(std::tan(theta / 2.0) / (pi * n)) *
           std::sin(n * theta - pi / 4.0);
}

bool has_asymptotic(Family family) {
    return family != Family::S2 && family != Family::T2;
}

double asymptotic_value(Family family, int n, double mu_x, double mu_y) {
    switch (family) {
        case Family::S0: return asymptotic_s0(n, mu_x);
        case Family::S1: return asymptotic_s1(n, mu_x, mu_y);
        case Family::T0: return asymptotic_s0(n, mu_y);
        case Family::T1: return asymptotic_s1(n, mu_y, mu_x);
        default: throw std::invalid_argument("no asymptotic form for this family");
    }
}

} // namespace dtbc::coeffs
