#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "dtbc/coefficients.hpp"
#include "dtbc/grid.hpp"
#include "dtbc/soe.hpp"

namespace dtbc {

enum class Boundary1D { ExactDtbc, SoeDtbc, Neumann };

struct SoeParams {
    int M = 50;
    int N = 49;
    int precision_digits = 80;
};

struct Solver1DConfig {
    Grid1D grid = Grid1D::make(-3.0, 3.0, 999);
    double cx = 1.0;
    double cfl_cap = 5.0 / 6.0;
    double final_time = 10.0;
    Boundary1D boundary = Boundary1D::ExactDtbc;
    SoeParams soe;
    double exit_time = 5.0; // residual window start
    std::vector<double> snapshot_times;
    int metrics_stride = 1;
    int field_dump_stride = 0; // 0 disables the space-time dump
};

/// First level from second-order one-step advection; interior only, the two
/// boundary entries of the result are set to 0.
std::vector<double> lax_wendroff_first_step(std::span<const double> u0, double mu_x);

/// next[j] = prev[j] - mu_x (curr[j+1] - curr[j-1]) for j = 1..J; boundary
/// entries of next are left untouched for the closure.
void leapfrog_interior_1d(std::span<const double> prev, std::span<const double> curr,
                          std::span<double> next, double mu_x);

/// Boundary trace of one side, split by time-index parity so a convolution
/// over every other level walks one contiguous array.
class BoundaryTrace {
public:
    void push(double v) { (count_++ % 2 == 0 ? even_ : odd_).push_back(v); }
    int levels() const { return count_; }
    /// Value at time index sigma (0 <= sigma < levels()).
    double at(int sigma) const { return (sigma % 2 == 0) ? even_[sigma / 2] : odd_[sigma / 2]; }
    /// sum_m kernel[m] * trace(L - 2m) with L = levels()-1, the convolution
    /// feeding the boundary value at level L+1.
    double convolve_latest(std::span<const double> kernel) const;

private:
    std::vector<double> even_, odd_;
    int count_ = 0;
};

/// Drives one run step by step; run_1d wraps this. Exposed so tests can
/// compare levels against an independent reference while stepping.
class Stepper1D {
public:
    explicit Stepper1D(const Solver1DConfig& cfg);

    void step();                      // advance one time level
    int level() const { return n_; }  // time index of current()
    std::span<const double> current() const { return curr_; }
    const CflParams& cfl() const { return cfl_; }
    double time() const { return n_ * cfl_.dt; }
    double closure_seconds() const { return closure_seconds_; }
    const soe::SoeBuild& soe_build() const; // throws unless SOE boundary

private:
    Solver1DConfig cfg_;
    CflParams cfl_;
    std::vector<double> prev_, curr_, next_;
    int n_ = 0;
    std::vector<double> s0_;
    BoundaryTrace left_, right_;
    std::optional<soe::SoeBuild> soe_build_;
    soe::ConvolutionChannelBank left_even_, left_odd_, right_even_, right_odd_;
    double closure_seconds_ = 0.0;

    void push_traces();
    std::array<double, 2> closure_values(); // {u_0, u_{J+1}} at the new level
};

struct RunReport1D {
    CflParams cfl;
    int steps = 0;
    double post_exit_residual = 0.0; // max |u| over t > exit_time
    std::vector<double> final_state;
    std::vector<std::pair<double, std::vector<double>>> snapshots; // (t, field)
    std::vector<std::array<double, 4>> metrics;                    // n, t, l2, max_abs
    std::vector<std::pair<int, std::vector<double>>> field_dump;   // (n, field)
    double closure_seconds = 0.0;
    double total_seconds = 0.0;
};

RunReport1D run_1d(const Solver1DConfig& cfg);

} // namespace dtbc
