#include "dtbc/solver1d.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace dtbc {

namespace {
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double l2_norm_1d(std::span<const double> u, double dx) {
    double s = 0.0;
    for (double v : u) s += v * v;
    return std::sqrt(dx * s);
}

double max_abs(std::span<const double> u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}
} // namespace

std::vector<double> lax_wendroff_first_step(std::span<const double> u0, double mu_x) {
    const int J = static_cast<int>(u0.size()) - 2;
    std::vector<double> u1(u0.size(), 0.0);
    for (int j = 1; j <= J; ++j) {
        u1[j] = u0[j] - 0.5 * mu_x * (u0[j + 1] - u0[j - 1]) +
                0.5 * mu_x * mu_x * (u0[j + 1] - 2.0 * u0[j] + u0[j - 1]);
    }
    return u1;
}

void leapfrog_interior_1d(std::span<const double> prev, std::span<const double> curr,
                          std::span<double> next, double mu_x) {
    const int J = static_cast<int>(curr.size()) - 2;
    for (int j = 1; j <= J; ++j) next[j] = prev[j] - mu_x * (curr[j + 1] - curr[j - 1]);
}

double BoundaryTrace::convolve_latest(std::span<const double> kernel) const {
    const int L = count_ - 1;
    if (L < 0) return 0.0;
    const std::vector<double>& arr = (L % 2 == 0) ? even_ : odd_;
    const int top = (L - (L % 2)) / 2; // arr[top] holds the value at time L
    const int terms = L / 2 + 1;       // m = 0 .. floor(L/2)
    if (static_cast<int>(kernel.size()) < terms)
        throw std::logic_error("BoundaryTrace: kernel prefix shorter than required history");
    double acc = 0.0;
    for (int m = 0; m < terms; ++m) acc += kernel[m] * arr[top - m];
    return acc;
}

Stepper1D::Stepper1D(const Solver1DConfig& cfg) : cfg_(cfg) {
    cfl_ = derive_timestep_1d(cfg.cx, cfg.grid.dx, cfg.cfl_cap);
    const int steps = static_cast<int>(std::ceil(cfg.final_time / cfl_.dt - 1e-9));
    const int kernel_len = steps / 2 + 3;

    if (cfg.boundary == Boundary1D::ExactDtbc) {
        s0_ = coeffs::gen_s0(cfl_.mu_x, kernel_len).values;
    } else if (cfg.boundary == Boundary1D::SoeDtbc) {
        soe_build_ = soe::compress_s0(cfl_.mu_x, cfg.soe.N, cfg.soe.M, cfg.soe.precision_digits);
        if (!soe_build_->ok())
            throw soe::SoeError(soe_build_->validity,
                                "1d run rejected: " + soe_build_->validity_detail);
        left_even_ = soe::ConvolutionChannelBank(soe_build_->soe, true);
        left_odd_ = soe::ConvolutionChannelBank(soe_build_->soe, true);
        right_even_ = soe::ConvolutionChannelBank(soe_build_->soe, true);
        right_odd_ = soe::ConvolutionChannelBank(soe_build_->soe, true);
    }

    prev_ = gaussian_init_1d(cfg.grid);
    curr_ = lax_wendroff_first_step(prev_, cfl_.mu_x);
    next_.assign(prev_.size(), 0.0);
    n_ = 1;

    // Histories must contain levels 0 and 1 before the first update.
    const int J = cfg_.grid.J;
    if (cfg.boundary == Boundary1D::ExactDtbc) {
        left_.push(prev_[1]);
        right_.push(prev_[J]);
    } else if (cfg.boundary == Boundary1D::SoeDtbc) {
        left_even_.feed(prev_[1]);
        right_even_.feed(prev_[J]);
    }
    if (cfg.boundary != Boundary1D::Neumann) push_traces();
}

const soe::SoeBuild& Stepper1D::soe_build() const {
    if (!soe_build_) throw std::logic_error("Stepper1D: no SOE build for this boundary scheme");
    return *soe_build_;
}

void Stepper1D::push_traces() {
    const int J = cfg_.grid.J;
    if (cfg_.boundary == Boundary1D::ExactDtbc) {
        left_.push(curr_[1]);
        right_.push(curr_[J]);
    } else if (cfg_.boundary == Boundary1D::SoeDtbc) {
        // Level n_ feeds the bank of its own parity.
        if (n_ % 2 == 0) {
            left_even_.feed(curr_[1]);
            right_even_.feed(curr_[J]);
        } else {
            left_odd_.feed(curr_[1]);
            right_odd_.feed(curr_[J]);
        }
    }
}

std::array<double, 2> Stepper1D::closure_values() {
    const int J = cfg_.grid.J;
    switch (cfg_.boundary) {
        case Boundary1D::Neumann:
            return {curr_[1], curr_[J]};
        case Boundary1D::ExactDtbc:
            return {-left_.convolve_latest(s0_), right_.convolve_latest(s0_)};
        case Boundary1D::SoeDtbc: {
            // The latest pushed level is n_, so the bank of parity n_ % 2 holds
            // the convolution over levels n_, n_-2, ...
            const bool even_latest = (n_ % 2 == 0);
            const soe::ConvolutionChannelBank& lb = even_latest ? left_even_ : left_odd_;
            const soe::ConvolutionChannelBank& rb = even_latest ? right_even_ : right_odd_;
            return {-lb.total(), rb.total()};
        }
    }
    return {0.0, 0.0};
}

void Stepper1D::step() {
    leapfrog_interior_1d(prev_, curr_, next_, cfl_.mu_x);
    const auto t0 = clock_type::now();
    const auto bc = closure_values();
    next_[0] = bc[0];
    next_[cfg_.grid.J + 1] = bc[1];
    closure_seconds_ += seconds_since(t0);

    std::swap(prev_, curr_);
    std::swap(curr_, next_);
    ++n_;
    if (cfg_.boundary != Boundary1D::Neumann) {
        const auto t1 = clock_type::now();
        push_traces();
        closure_seconds_ += seconds_since(t1);
    }
}

RunReport1D run_1d(const Solver1DConfig& cfg) {
    const auto t0 = clock_type::now();
    Stepper1D stepper(cfg);
    const CflParams cfl = stepper.cfl();
    const int steps = static_cast<int>(std::ceil(cfg.final_time / cfl.dt - 1e-9));

    RunReport1D report;
    report.cfl = cfl;
    report.steps = steps;

    auto record = [&](int n) {
        const double t = n * cfl.dt;
        if (cfg.metrics_stride > 0 && n % cfg.metrics_stride == 0)
            report.metrics.push_back({static_cast<double>(n), t,
                                      l2_norm_1d(stepper.current(), cfg.grid.dx),
                                      max_abs(stepper.current())});
        if (cfg.field_dump_stride > 0 && n % cfg.field_dump_stride == 0)
            report.field_dump.emplace_back(
                n, std::vector<double>(stepper.current().begin(), stepper.current().end()));
        for (double ts : cfg.snapshot_times) {
            if (std::abs(t - ts) <= 0.5 * cfl.dt + 1e-12) {
                report.snapshots.emplace_back(
                    t, std::vector<double>(stepper.current().begin(), stepper.current().end()));
                break;
            }
        }
        if (t > cfg.exit_time)
            report.post_exit_residual = std::max(report.post_exit_residual, max_abs(stepper.current()));
    };

    record(stepper.level());
    while (stepper.level() < steps) {
        stepper.step();
        const double m = max_abs(stepper.current());
        if (!std::isfinite(m))
            throw std::runtime_error("run_1d: non-finite field at step " +
                                     std::to_string(stepper.level()));
        record(stepper.level());
    }
    report.final_state.assign(stepper.current().begin(), stepper.current().end());
    report.closure_seconds = stepper.closure_seconds();
    report.total_seconds = seconds_since(t0);
    return report;
}

} // namespace dtbc
