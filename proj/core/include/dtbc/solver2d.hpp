#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "dtbc/coefficients.hpp"
#include "dtbc/grid.hpp"
#include "dtbc/soe.hpp"
#include "dtbc/solver1d.hpp"

namespace dtbc {

enum class Side { Left = 0, Right = 1, Bottom = 2, Top = 3 };

enum class SideCondition { Dtbc0, Dtbc1, Dtbc2, Neumann };

const char* side_condition_name(SideCondition c);
SideCondition side_condition_from_name(const std::string& name);

struct SideSchemes {
    SideCondition left = SideCondition::Dtbc0;
    SideCondition right = SideCondition::Dtbc0;
    SideCondition bottom = SideCondition::Dtbc0;
    SideCondition top = SideCondition::Dtbc0;

    static SideSchemes all(SideCondition c) { return {c, c, c, c}; }
    /// The usual ladder: given tangential order on x-sides and y-sides.
    static SideSchemes orders(SideCondition x, SideCondition y) { return {x, x, y, y}; }
    SideCondition operator[](Side s) const {
        switch (s) {
            case Side::Left: return left;
            case Side::Right: return right;
            case Side::Bottom: return bottom;
            case Side::Top: return top;
        }
        return left;
    }
};

struct Solver2DConfig {
    Grid2D grid = Grid2D::make(-3.0, 3.0, -2.0, 2.0, 300, 200);
    Velocity velocity{1.0, 0.1};
    double cfl_cap = 0.5;
    double final_time = 8.0;
    SideSchemes sides;
    InitialKind init = InitialKind::Gaussian2D;
    bool soe_enabled = false; // replaces the s0/t0 sums of order-0/1 sides
    SoeParams soe{50, 20, 80};
    /// Order-2 closures on an x-side and a y-side couple at a corner and are
    /// known to blow up; requesting that coupling needs this flag.
    bool allow_unstable = false;
    std::vector<double> snapshot_times;
    double reflection_window_start = 5.0;
    int reflection_margin_cells = 10;
    double instability_factor = 1e3;
    int metrics_stride = 1;
};

/// Full traced line of one side at every past level (parity-split). x-sides
/// trace the adjacent column including its k=0 and k=K+1 entries, y-sides the
/// adjacent row including j=0 and j=J+1; those ends are boundary values
/// produced by the neighbouring sides at earlier levels, never corners.
class SideHistory {
public:
    SideHistory() = default;
    explicit SideHistory(int line_len) : len_(line_len) {}

    void push(std::span<const double> line);
    std::span<const double> at(int sigma) const;
    int levels() const { return count_; }
    int line_length() const { return len_; }

private:
    int len_ = 0;
    int count_ = 0;
    std::vector<double> even_, odd_;
};

Field2D lax_wendroff_first_step_2d(const Field2D& u0, double mu_x, double mu_y);

/// Interior update; never reads the four corners (dimensionally split stencil).
void leapfrog_interior_2d(const Field2D& prev, const Field2D& curr, Field2D& next, double mu_x,
                          double mu_y);

/// max |u| over points at least `margin_cells` away from every boundary.
double interior_max_abs(const Field2D& f, int margin_cells);

class Stepper2D {
public:
    explicit Stepper2D(const Solver2DConfig& cfg);

    void step();
    int level() const { return n_; }
    double time() const { return n_ * cfl_.dt; }
    const Field2D& current() const { return curr_; }
    Field2D& mutable_current() { return curr_; }
    Field2D& mutable_prev() { return prev_; }
    const CflParams& cfl() const { return cfl_; }
    int total_steps() const { return steps_; }
    double closure_seconds() const { return closure_seconds_; }

private:
    Solver2DConfig cfg_;
    CflParams cfl_;
    int steps_ = 0;
    Field2D prev_, curr_, next_;
    int n_ = 0;
    double closure_seconds_ = 0.0;

    // Kernel prefixes; zero-filled when the corresponding mu vanishes.
    std::vector<double> s0_, s1_, s2_, t0_, t1_, t2_;
    std::array<std::optional<SideHistory>, 4> hist_;
    std::array<std::array<std::optional<soe::ChannelBankArray>, 2>, 4> banks_; // [side][parity]
    std::vector<double> line_scratch_, acc_scratch_;

    bool side_needs_history(Side s) const;
    int side_order(Side s) const; // -1 for Neumann
    void push_level(const Field2D& f, int level);
    void extract_line(const Field2D& f, Side s, std::vector<double>& line) const;
    void apply_side_closure(Side s);
};

struct RunReport2D {
    CflParams cfl;
    int steps = 0;
    std::vector<std::pair<double, Field2D>> snapshots;
    std::vector<std::array<double, 3>> l2_series;         // n, t, l2
    std::vector<std::array<double, 3>> reflection_series; // n, t, interior max
    double reflection_magnitude = 0.0;
    double initial_l2 = 0.0;
    double max_l2 = 0.0;
    bool unstable = false;
    double growth_rate = 0.0;
    double closure_seconds = 0.0;
    double total_seconds = 0.0;
};

RunReport2D run_2d(const Solver2DConfig& cfg);

} // namespace dtbc
