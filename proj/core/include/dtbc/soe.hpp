#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtbc/bigfloat.hpp"

namespace dtbc::soe {

/// [N,M] rational fit P_N/Q_M of the kernel's power series, q[0] = 1. All
/// coefficients are kept at the build precision; conversion to double happens
/// only when the runtime SumOfExponentials is extracted.
struct PadeApproximant {
    int N = 0;
    int M = 0;
    int precision_digits = 80;
    std::vector<mp::BigFloat> p; // size N+1
    std::vector<mp::BigFloat> q; // size M+1, q[0] == 1

    /// Power-series coefficient of P/Q at order k, from q * series = p.
    mp::BigFloat series_coefficient(int k) const;
    std::vector<mp::BigFloat> series_prefix(int count) const;
};

enum class SoeValidity {
    Ok,
    RootInsideOrOnCircle,
    NonSimpleRoots,
    RootFindingFailed,
    SingularSchur,
};

const char* to_string(SoeValidity v);

class SoeError : public std::runtime_error {
public:
    SoeError(SoeValidity kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    SoeValidity kind() const { return kind_; }

private:
    SoeValidity kind_;
};

/// Builds the [N,M] approximant of sum kernel[k] x^k by the block linear
/// system: the lower-triangular Toeplitz block is inverted through its first
/// column and the numerator is obtained from the Schur complement.
/// Requires kernel.size() >= N+M+1, kernel[0] != 0 and 0 <= N < M.
PadeApproximant build_pade(std::span<const double> kernel, int N, int M, int precision_digits);
PadeApproximant build_pade(std::span<const mp::BigFloat> kernel, int N, int M,
                           int precision_digits);

/// Zero-order kernel prefix evaluated at the build precision. The fit is so
/// sensitive for N close to M that a double-rounded prefix moves roots across
/// the unit circle; the compression stage therefore regenerates its input.
std::vector<mp::BigFloat> s0_prefix_mp(double mu_x, int count, int precision_digits);

struct RootSet {
    std::vector<mp::BigComplex> roots; // size M
    std::vector<bool> converged;
    int sweeps = 0;
    bool all_converged() const;
};

/// All M roots of Q_M, accepted when the residual |Q(q)| drops below
/// 10^-(precision_digits-10) relative to the evaluation magnitude at q.
RootSet find_roots(const PadeApproximant& pade);

/// Runtime compressed kernel: coefficient k is Re sum_m b[m] * q[m]^-k.
struct SumOfExponentials {
    std::vector<std::complex<double>> b;
    std::vector<std::complex<double>> q;
    double min_root_modulus = 0.0;
    double min_root_separation = 0.0; // min over pairs of |qi-qj| / max(|qi|,|qj|)

    int size() const { return static_cast<int>(q.size()); }
    double coefficient(int k) const;
    /// coefficient(0..count-1) with running powers.
    std::vector<double> coefficients(int count) const;
};

/// Weight extraction b_m = -P(q_m) / (q_m Q'(q_m)) plus validity screening.
/// Throws SoeError unless every root is simple and strictly outside the unit
/// circle (with the given floors) and the root search converged.
SumOfExponentials to_soe(const PadeApproximant& pade, const RootSet& roots,
                         double root_modulus_floor = 1e-8, double separation_floor = 1e-8);

/// Full pipeline result. `soe` is meaningful only when validity == Ok; the
/// full-precision weights are kept for reconstruction diagnostics.
struct SoeBuild {
    PadeApproximant pade;
    RootSet roots;
    SoeValidity validity = SoeValidity::Ok;
    std::string validity_detail;
    SumOfExponentials soe;
    std::vector<mp::BigComplex> b_mp;

    bool ok() const { return validity == SoeValidity::Ok; }
    /// Full-precision reconstructed coefficient Re sum b_m q_m^-k.
    mp::BigFloat reconstruct(int k) const;
};

SoeBuild compress(std::span<const double> kernel, int N, int M, int precision_digits,
                  double root_modulus_floor = 1e-8, double separation_floor = 1e-8);
SoeBuild compress(std::span<const mp::BigFloat> kernel, int N, int M, int precision_digits,
                  double root_modulus_floor = 1e-8, double separation_floor = 1e-8);

/// compress() on the zero-order kernel of the given mu, regenerated at the
/// build precision.
SoeBuild compress_s0(double mu_x, int N, int M, int precision_digits,
                     double root_modulus_floor = 1e-8, double separation_floor = 1e-8);

/// One recursive-convolution channel bank: feed(v) performs
/// C_m <- C_m / q_m + b_m v and returns Re sum_m C_m, so after feeding
/// v_0..v_n the return value is the convolution sum_k v_k coeff(n-k).
class ConvolutionChannelBank {
public:
    ConvolutionChannelBank() = default;
    explicit ConvolutionChannelBank(const SumOfExponentials& soe, bool assert_zero_start = false);

    double feed(double v);
    /// Running convolution value as of the last feed.
    double total() const;
    void reset();
    int channels() const { return static_cast<int>(b_.size()); }

private:
    std::vector<std::complex<double>> inv_q_;
    std::vector<std::complex<double>> b_;
    std::vector<std::complex<double>> c_;
    bool assert_zero_start_ = false;
    bool fed_ = false;
};

/// Channel banks for `points` independent streams sharing one kernel,
/// stored contiguously; used by the boundary closures where every traced
/// point runs its own convolution.
class ChannelBankArray {
public:
    ChannelBankArray() = default;
    ChannelBankArray(const SumOfExponentials& soe, int points);

    /// v[i] is the newest sample of stream i; totals() afterwards gives the
    /// per-stream convolution values.
    void feed(std::span<const double> v);
    double total(int point) const;
    int points() const { return points_; }

private:
    int m_ = 0, points_ = 0;
    std::vector<std::complex<double>> inv_q_, b_;
    std::vector<std::complex<double>> c_; // points_ x m_
};

} // namespace dtbc::soe
