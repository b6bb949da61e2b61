#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace dtbc::roots {

template <class C>
struct AberthResult {
    std::vector<C> roots;
    std::vector<bool> converged;
    int sweeps = 0;

    bool all_converged() const {
        for (bool c : converged)
            if (!c) return false;
        return true;
    }
};

/// Horner evaluation of p and p' together with the magnitude scale
/// sum_j |c_j| |x|^j used for the backward-error acceptance test.
template <class C, class R>
void eval_poly(const std::vector<C>& c, const C& x, C& p, C& dp, R& scale) {
    using std::abs;
    const size_t deg = c.size() - 1;
    const R ax = abs(x);
    p = c[deg];
    dp = C{};
    scale = abs(c[deg]);
    for (size_t j = deg; j-- > 0;) {
        dp = dp * x + p;
        p = p * x + c[j];
        scale = scale * ax + abs(c[j]);
    }
}

/// Simultaneous (Aberth-Ehrlich) iteration from caller-supplied initial
/// points. A root is accepted once |p(x)| <= rel_tol * sum |c_j||x|^j.
template <class C, class R>
AberthResult<C> aberth(const std::vector<C>& coeffs, std::vector<C> initial, R rel_tol,
                       int max_sweeps) {
    using std::abs;
    const size_t m = coeffs.size() - 1;
    AberthResult<C> out;
    out.roots = std::move(initial);
    out.converged.assign(m, false);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        out.sweeps = sweep + 1;
        bool all_done = true;
        bool moved = false;
        for (size_t i = 0; i < m; ++i) {
            if (out.converged[i]) continue;
            C p, dp;
            R scale;
            eval_poly(coeffs, out.roots[i], p, dp, scale);
            if (abs(p) <= rel_tol * scale) {
                out.converged[i] = true;
                continue;
            }
            all_done = false;
            if (abs(dp) == R(0)) {
                // Stationary point; nudge off it.
                out.roots[i] = out.roots[i] + C(R(1e-3) * (R(1) + abs(out.roots[i])), R(0));
                moved = true;
                continue;
            }
            const C newton = p / dp;
            C repel{};
            bool collision = false;
            for (size_t j = 0; j < m; ++j) {
                if (j == i) continue;
                const C d = out.roots[i] - out.roots[j];
                if (abs(d) == R(0)) {
                    collision = true;
                    break;
                }
                repel += C(R(1), R(0)) / d;
            }
            if (collision) {
                out.roots[i] = out.roots[i] + C(R(0), R(1e-3) * (R(1) + abs(out.roots[i])));
                moved = true;
                continue;
            }
            const C denom = C(R(1), R(0)) - newton * repel;
            const C w = (abs(denom) == R(0)) ? newton : newton / denom;
            out.roots[i] -= w;
            moved = true;
        }
        if (all_done) break;
        if (!moved) break;
    }
    // Final residual check for anything not yet flagged.
    for (size_t i = 0; i < m; ++i) {
        if (out.converged[i]) continue;
        C p, dp;
        R scale;
        eval_poly(coeffs, out.roots[i], p, dp, scale);
        out.converged[i] = abs(p) <= rel_tol * scale;
    }
    return out;
}

/// Perturbed-circle start points: radius from the geometric mean of the root
/// magnitudes (|c_0 / c_deg|^(1/deg)), angles offset so no point sits on an
/// axis of symmetry of the polynomial.
inline std::vector<std::complex<double>> circle_start(double radius, size_t count) {
    std::vector<std::complex<double>> pts(count);
    const double two_pi = 6.283185307179586476925;
    for (size_t k = 0; k < count; ++k) {
        const double ang = two_pi * (static_cast<double>(k) + 0.37) / static_cast<double>(count);
        const double r = radius * (1.0 + 0.05 * std::sin(3.0 + 7.0 * static_cast<double>(k)));
        pts[k] = std::polar(r, ang);
    }
    return pts;
}

} // namespace dtbc::roots
