#include "dtbc/soe.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "dtbc/rootfind.hpp"

namespace dtbc::soe {

using mp::BigComplex;
using mp::BigFloat;
using mp::ScopedPrecision;

const char* to_string(SoeValidity v) {
    switch (v) {
        case SoeValidity::Ok: return "ok";
        case SoeValidity::RootInsideOrOnCircle: return "root-inside-or-on-circle";
        case SoeValidity::NonSimpleRoots: return "non-simple-roots";
        case SoeValidity::RootFindingFailed: return "root-finding-failed";
        case SoeValidity::SingularSchur: return "singular-schur";
    }
    return "?";
}

std::vector<mp::BigFloat> PadeApproximant::series_prefix(int count) const {
    // nu~_k = p_k - sum_{j=1}^{min(k,M)} q_j nu~_{k-j}, computed from 0 up.
    ScopedPrecision guard(precision_digits);
    std::vector<BigFloat> nu(count);
    for (int n = 0; n < count; ++n) {
        BigFloat val = (n <= N) ? p[n] : BigFloat(0);
        const int jmax = std::min(n, M);
        for (int j = 1; j <= jmax; ++j) val -= q[j] * nu[n - j];
        nu[n] = val;
    }
    return nu;
}

mp::BigFloat PadeApproximant::series_coefficient(int k) const { return series_prefix(k + 1)[k]; }

std::vector<mp::BigFloat> s0_prefix_mp(double mu_x, int count, int precision_digits) {
    ScopedPrecision guard(precision_digits);
    const BigFloat mu(mu_x);
    const BigFloat alpha = 1 - 2 * mu * mu;
    std::vector<BigFloat> s(count);
    s[0] = mu;
    if (count > 1) s[1] = mu * (1 - mu * mu);
    for (int n = 2; n < count; ++n)
        s[n] = BigFloat(2 * n - 1) / (n + 1) * alpha * s[n - 1] -
               BigFloat(n - 2) / (n + 1) * s[n - 2];
    return s;
}

PadeApproximant build_pade(std::span<const double> kernel, int N, int M, int precision_digits) {
    ScopedPrecision guard(precision_digits);
    std::vector<BigFloat> nu(kernel.size());
    for (size_t i = 0; i < kernel.size(); ++i) nu[i] = kernel[i];
    return build_pade(std::span<const BigFloat>(nu), N, M, precision_digits);
}

PadeApproximant build_pade(std::span<const mp::BigFloat> kernel, int N, int M,
                           int precision_digits) {
    if (N < 0 || M <= 0 || N >= M)
        throw std::invalid_argument("build_pade: need 0 <= N < M");
    if (static_cast<int>(kernel.size()) < N + M + 1)
        throw std::invalid_argument("build_pade: kernel must provide at least N+M+1 terms");
    if (kernel[0] == 0)
        throw std::invalid_argument("build_pade: kernel[0] must be nonzero");
    if (precision_digits < 20)
        throw std::invalid_argument("build_pade: precision_digits must be >= 20");

    ScopedPrecision guard(precision_digits);
    std::vector<BigFloat> nu(kernel.begin(), kernel.begin() + (N + M + 1));

    // First column of the inverse of the lower-triangular Toeplitz block
    // A[i][j] = nu[i-j] (0-indexed, i,j < M).
    std::vector<BigFloat> x(M);
    x[0] = 1 / nu[0];
    for (int i = 1; i < M; ++i) {
        BigFloat acc = 0;
        for (int j = 0; j < i; ++j) acc += nu[i - j] * x[j];
        x[i] = -acc / nu[0];
    }

    // Y1[j] = -nu[j+1] (j < M), Y2[i] = -nu[M+i+1] (i < N).
    // W = C A^-1 with C[i][j] = nu[M+i-j]:  W[i][l] = sum_{j>=l} nu[M+i-j] x[j-l].
    std::vector<std::vector<BigFloat>> W(N, std::vector<BigFloat>(M));
    for (int i = 0; i < N; ++i)
        for (int l = 0; l < M; ++l) {
            BigFloat acc = 0;
            for (int j = l; j < M; ++j) acc += nu[M + i - j] * x[j - l];
            W[i][l] = acc;
        }

    // Schur system (-W[:,0..N-1]) pvec = W Y1 - Y2.
    std::vector<std::vector<BigFloat>> S(N, std::vector<BigFloat>(N));
    std::vector<BigFloat> rhs(N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) S[i][j] = -W[i][j];
        BigFloat acc = 0;
        for (int j = 0; j < M; ++j) acc += W[i][j] * (-nu[j + 1]);
        rhs[i] = acc + nu[M + i + 1];
    }

    // Partial-pivot LU solve of S pvec = rhs.
    std::vector<BigFloat> pvec(N);
    BigFloat max_pivot = 0, min_pivot = 0;
    if (N > 0) {
        std::vector<int> perm(N);
        for (int i = 0; i < N; ++i) perm[i] = i;
        for (int col = 0; col < N; ++col) {
            int best = col;
            BigFloat best_abs = abs(S[perm[col]][col]);
            for (int r = col + 1; r < N; ++r) {
                BigFloat a = abs(S[perm[r]][col]);
                if (a > best_abs) {
                    best_abs = a;
                    best = r;
                }
            }
            std::swap(perm[col], perm[best]);
            if (col == 0 || best_abs > max_pivot) max_pivot = best_abs;
            if (col == 0 || best_abs < min_pivot) min_pivot = best_abs;
            if (best_abs == 0) {
                std::ostringstream os;
                os << "build_pade: singular Schur complement at column " << col
                   << " (pivot ratio " << (min_pivot / (max_pivot + BigFloat(1e-300))) << ")";
                throw SoeError(SoeValidity::SingularSchur, os.str());
            }
            for (int r = col + 1; r < N; ++r) {
                const BigFloat f = S[perm[r]][col] / S[perm[col]][col];
                if (f == 0) continue;
                for (int c2 = col; c2 < N; ++c2) S[perm[r]][c2] -= f * S[perm[col]][c2];
                rhs[perm[r]] -= f * rhs[perm[col]];
            }
        }
        for (int i = N - 1; i >= 0; --i) {
            BigFloat acc = rhs[perm[i]];
            for (int j = i + 1; j < N; ++j) acc -= S[perm[i]][j] * pvec[j];
            pvec[i] = acc / S[perm[i]][i];
        }
    }

    // q = A^-1 (Y1 + [pvec;0]) via the Toeplitz structure of A^-1.
    std::vector<BigFloat> yv(M);
    for (int j = 0; j < M; ++j) {
        yv[j] = -nu[j + 1];
        if (j < N) yv[j] += pvec[j];
    }
    PadeApproximant out;
    out.N = N;
    out.M = M;
    out.precision_digits = precision_digits;
    out.p.resize(N + 1);
    out.q.resize(M + 1);
    out.p[0] = nu[0];
    for (int i = 0; i < N; ++i) out.p[i + 1] = pvec[i];
    out.q[0] = 1;
    for (int i = 0; i < M; ++i) {
        BigFloat acc = 0;
        for (int j = 0; j <= i; ++j) acc += x[i - j] * yv[j];
        out.q[i + 1] = acc;
    }
    return out;
}

bool RootSet::all_converged() const {
    for (bool c : converged)
        if (!c) return false;
    return true;
}

RootSet find_roots(const PadeApproximant& pade) {
    ScopedPrecision guard(pade.precision_digits);
    const int M = pade.M;
    std::vector<BigComplex> coeffs(M + 1);
    for (int j = 0; j <= M; ++j) coeffs[j] = BigComplex(pade.q[j], BigFloat(0));
    if (pade.q[M] == 0)
        throw SoeError(SoeValidity::RootFindingFailed,
                       "find_roots: leading coefficient of Q is zero (degree drop)");

    // Start circle at the geometric mean of the root magnitudes.
    const double log_ratio =
        static_cast<double>(log10(abs(pade.q[0])) - log10(abs(pade.q[M])));
    const double radius = std::pow(10.0, log_ratio / M);
    const auto start_d = roots::circle_start(std::max(radius, 1e-6), M);
    std::vector<BigComplex> start(M);
    for (int i = 0; i < M; ++i) start[i] = BigComplex(start_d[i].real(), start_d[i].imag());

    BigFloat rel_tol = pow(BigFloat(10), -(pade.precision_digits - 10));
    auto result = roots::aberth(coeffs, std::move(start), rel_tol, 4000);

    RootSet out;
    out.roots = std::move(result.roots);
    out.converged = std::move(result.converged);
    out.sweeps = result.sweeps;
    return out;
}

namespace {

BigComplex eval_poly_mp(const std::vector<BigFloat>& c, const BigComplex& x) {
    BigComplex acc(c.back(), BigFloat(0));
    for (size_t j = c.size() - 1; j-- > 0;) acc = acc * x + BigComplex(c[j], BigFloat(0));
    return acc;
}

BigComplex eval_dpoly_mp(const std::vector<BigFloat>& c, const BigComplex& x) {
    const size_t deg = c.size() - 1;
    BigComplex acc(BigFloat(deg) * c[deg], BigFloat(0));
    for (size_t j = deg - 1; j >= 1; --j) acc = acc * x + BigComplex(BigFloat(j) * c[j], BigFloat(0));
    return acc;
}

std::complex<double> to_double(const BigComplex& z) {
    return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

} // namespace

SumOfExponentials to_soe(const PadeApproximant& pade, const RootSet& roots,
                         double root_modulus_floor, double separation_floor) {
    ScopedPrecision guard(pade.precision_digits);
    const int M = pade.M;
    if (!roots.all_converged()) {
        int bad = 0;
        for (bool c : roots.converged)
            if (!c) ++bad;
        std::ostringstream os;
        os << "to_soe: " << bad << "/" << M << " roots failed the residual acceptance test";
        throw SoeError(SoeValidity::RootFindingFailed, os.str());
    }

    BigFloat min_mod;
    for (int i = 0; i < M; ++i) {
        const BigFloat m = abs(roots.roots[i]);
        if (i == 0 || m < min_mod) min_mod = m;
    }
    if (min_mod <= 1.0 + root_modulus_floor) {
        std::ostringstream os;
        os << "to_soe: root of modulus " << static_cast<double>(min_mod)
           << " inside or on the unit circle (floor " << root_modulus_floor << ")";
        throw SoeError(SoeValidity::RootInsideOrOnCircle, os.str());
    }

    // Pairwise separation relative to the larger of the two moduli, so one
    // far-out root does not mask near-coincidence among the others.
    BigFloat min_sep;
    bool first = true;
    for (int i = 0; i < M; ++i)
        for (int j = i + 1; j < M; ++j) {
            const BigFloat d = abs(roots.roots[i] - roots.roots[j]);
            const BigFloat scale = std::max(abs(roots.roots[i]), abs(roots.roots[j]));
            const BigFloat rel = d / scale;
            if (first || rel < min_sep) {
                min_sep = rel;
                first = false;
            }
        }
    if (!first && min_sep < separation_floor) {
        std::ostringstream os;
        os << "to_soe: near-coincident roots, relative separation "
           << static_cast<double>(min_sep) << " below floor " << separation_floor;
        throw SoeError(SoeValidity::NonSimpleRoots, os.str());
    }

    SumOfExponentials out;
    out.min_root_modulus = static_cast<double>(min_mod);
    out.min_root_separation = first ? 0.0 : static_cast<double>(min_sep);
    out.b.resize(M);
    out.q.resize(M);
    for (int m = 0; m < M; ++m) {
        const BigComplex& qm = roots.roots[m];
        const BigComplex num = eval_poly_mp(pade.p, qm);
        const BigComplex den = qm * eval_dpoly_mp(pade.q, qm);
        const BigComplex bm = -(num / den);
        out.b[m] = to_double(bm);
        out.q[m] = to_double(qm);
    }
    return out;
}

double SumOfExponentials::coefficient(int k) const {
    std::complex<double> acc = 0.0;
    for (size_t m = 0; m < q.size(); ++m) acc += b[m] * std::pow(q[m], -k);
    assert(std::abs(acc.imag()) < 1e-10);
    return acc.real();
}

std::vector<double> SumOfExponentials::coefficients(int count) const {
    std::vector<double> out(count, 0.0);
    for (size_t m = 0; m < q.size(); ++m) {
        const std::complex<double> inv = 1.0 / q[m];
        std::complex<double> pw = b[m];
        for (int k = 0; k < count; ++k) {
            out[k] += pw.real();
            pw *= inv;
        }
    }
    return out;
}

SoeBuild compress(std::span<const double> kernel, int N, int M, int precision_digits,
                  double root_modulus_floor, double separation_floor) {
    ScopedPrecision guard(precision_digits);
    std::vector<BigFloat> nu(kernel.begin(), kernel.end());
    return compress(std::span<const BigFloat>(nu), N, M, precision_digits, root_modulus_floor,
                    separation_floor);
}

SoeBuild compress_s0(double mu_x, int N, int M, int precision_digits, double root_modulus_floor,
                     double separation_floor) {
    const auto kernel = s0_prefix_mp(mu_x, N + M + 1, precision_digits);
    return compress(std::span<const BigFloat>(kernel), N, M, precision_digits, root_modulus_floor,
                    separation_floor);
}

SoeBuild compress(std::span<const mp::BigFloat> kernel, int N, int M, int precision_digits,
                  double root_modulus_floor, double separation_floor) {
    SoeBuild out;
    out.pade = build_pade(kernel, N, M, precision_digits);
    try {
        out.roots = find_roots(out.pade);
        out.soe = to_soe(out.pade, out.roots, root_modulus_floor, separation_floor);
    } catch (const SoeError& e) {
        out.validity = e.kind();
        out.validity_detail = e.what();
        return out;
    }
    // Keep full-precision weights for reconstruction diagnostics.
    ScopedPrecision guard(precision_digits);
    out.b_mp.resize(M);
    for (int m = 0; m < M; ++m) {
        const BigComplex& qm = out.roots.roots[m];
        out.b_mp[m] = -(eval_poly_mp(out.pade.p, qm) / (qm * eval_dpoly_mp(out.pade.q, qm)));
    }
    return out;
}

mp::BigFloat SoeBuild::reconstruct(int k) const {
    ScopedPrecision guard(pade.precision_digits);
    BigComplex acc;
    for (size_t m = 0; m < b_mp.size(); ++m) {
        const BigComplex& qm = roots.roots[m];
        // qm^-k by binary exponentiation on the inverse.
        BigComplex pw(BigFloat(1), BigFloat(0));
        BigComplex base = BigComplex(BigFloat(1), BigFloat(0)) / qm;
        int e = k;
        while (e > 0) {
            if (e & 1) pw = pw * base;
            base = base * base;
            e >>= 1;
        }
        acc += b_mp[m] * pw;
    }
    return acc.re;
}

ConvolutionChannelBank::ConvolutionChannelBank(const SumOfExponentials& soe,
                                               bool assert_zero_start)
    : b_(soe.b), c_(soe.b.size(), 0.0), assert_zero_start_(assert_zero_start) {
    inv_q_.reserve(soe.q.size());
    for (const auto& q : soe.q) inv_q_.push_back(1.0 / q);
}

double ConvolutionChannelBank::feed(double v) {
    if (assert_zero_start_ && !fed_) {
        assert(std::abs(v) < 1e-12);
    }
    fed_ = true;
    std::complex<double> total = 0.0;
    for (size_t m = 0; m < b_.size(); ++m) {
        c_[m] = inv_q_[m] * c_[m] + b_[m] * v;
        total += c_[m];
    }
    return total.real();
}

double ConvolutionChannelBank::total() const {
    std::complex<double> acc = 0.0;
    for (const auto& c : c_) acc += c;
    return acc.real();
}

void ConvolutionChannelBank::reset() {
    std::fill(c_.begin(), c_.end(), std::complex<double>(0.0));
    fed_ = false;
}

ChannelBankArray::ChannelBankArray(const SumOfExponentials& soe, int points)
    : m_(soe.size()), points_(points), b_(soe.b), c_(static_cast<size_t>(points) * soe.size(), 0.0) {
    inv_q_.reserve(soe.q.size());
    for (const auto& q : soe.q) inv_q_.push_back(1.0 / q);
}

void ChannelBankArray::feed(std::span<const double> v) {
    assert(static_cast<int>(v.size()) == points_);
    for (int p = 0; p < points_; ++p) {
        std::complex<double>* cp = c_.data() + static_cast<size_t>(p) * m_;
        const double vp = v[p];
        for (int m = 0; m < m_; ++m) cp[m] = inv_q_[m] * cp[m] + b_[m] * vp;
    }
}

double ChannelBankArray::total(int point) const {
    const std::complex<double>* cp = c_.data() + static_cast<size_t>(point) * m_;
    std::complex<double> acc = 0.0;
    for (int m = 0; m < m_; ++m) acc += cp[m];
    return acc.real();
}

} // namespace dtbc::soe
