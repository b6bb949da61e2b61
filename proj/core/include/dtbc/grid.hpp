#pragma once

#include <cassert>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace dtbc {

struct Velocity {
    double cx = 1.0;
    double cy = 0.0;

    bool is_zero() const { return cx == 0.0 && cy == 0.0; }
};

/// Uniform 1D grid on [xl, xr] with J interior points, so dx = (xr - xl)/(J + 1).
struct Grid1D {
    double xl = -3.0;
    double xr = 3.0;
    int J = 999;
    double dx = 0.0;

    static Grid1D make(double xl, double xr, int J);
    double x(int j) const { return xl + j * dx; }
    int points() const { return J + 2; }
};

/// Uniform rectangle grid, J x K interior points. The four corner indices
/// (0,0), (0,K+1), (J+1,0), (J+1,K+1) are not part of the index set.
struct Grid2D {
    double xl = -3.0, xr = 3.0;
    double yb = -2.0, yt = 2.0;
    int J = 300, K = 200;
    double dx = 0.0, dy = 0.0;

    static Grid2D make(double xl, double xr, double yb, double yt, int J, int K);
    double x(int j) const { return xl + j * dx; }
    double y(int k) const { return yb + k * dy; }
};

struct CflParams {
    double mu_x = 0.0;
    double mu_y = 0.0;
    double cfl_cap = 0.5;
    double dt = 0.0;
};

/// Fixes dt so that |mu_x| + |mu_y| equals cfl_cap exactly.
CflParams derive_timestep(const Velocity& c, const Grid2D& g, double cfl_cap);
CflParams derive_timestep_1d(double cx, double dx, double cfl_cap);

/// Dense (J+2) x (K+2) storage, k fastest. Corners hold a quiet 0 sentinel;
/// they are never read or written by the schemes (tests poison them to check).
class Field2D {
public:
    Field2D() = default;
    Field2D(int J, int K) : J_(J), K_(K), v_((J + 2) * (K + 2), 0.0) {}

    double& operator()(int j, int k) { return v_[j * (K_ + 2) + k]; }
    double operator()(int j, int k) const { return v_[j * (K_ + 2) + k]; }

    int J() const { return J_; }
    int K() const { return K_; }

    bool is_corner(int j, int k) const {
        return (j == 0 || j == J_ + 1) && (k == 0 || k == K_ + 1);
    }

    void fill(double value) { v_.assign(v_.size(), value); }
    void poison_corners(double value);
    bool has_non_finite_excluding_corners() const;

    /// Column j as a contiguous span of length K+2 (k = 0..K+1).
    std::span<const double> column(int j) const {
        return {v_.data() + j * (K_ + 2), static_cast<size_t>(K_ + 2)};
    }

    double max_abs_excluding_corners() const;
    /// sqrt(dx*dy * sum u^2) over all non-corner entries.
    double l2_norm(double dx, double dy) const;

private:
    int J_ = 0, K_ = 0;
    std::vector<double> v_;
};

/// Two consecutive time levels; curr holds the level with time index n.
struct State2D {
    Field2D prev;
    Field2D curr;
    int n = 0;

    State2D() = default;
    State2D(int J, int K) : prev(J, K), curr(J, K), n(0) {}

    void swap_levels() { std::swap(prev, curr); }
};

enum class InitialKind {
    Gaussian1D,        // exp(-10 x^2)
    Gaussian2D,        // exp(-5 (x^2 + y^2))
    Gaussian1DProfile, // exp(-10 x^2), constant in y (used by reduction tests)
};

/// Fills every non-corner index, boundary included; corners stay 0.
void gaussian_init(const Grid2D& g, InitialKind kind, Field2D& out);
std::vector<double> gaussian_init_1d(const Grid1D& g);

} // namespace dtbc
