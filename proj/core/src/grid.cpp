#include "dtbc/grid.hpp"

namespace dtbc {

Grid1D Grid1D::make(double xl, double xr, int J) {
    if (!(xl < xr)) throw std::invalid_argument("Grid1D: xl must be < xr");
    if (J < 2) throw std::invalid_argument("Grid1D: J must be >= 2");
    Grid1D g;
    g.xl = xl;
    g.xr = xr;
    g.J = J;
    g.dx = (xr - xl) / (J + 1);
    return g;
}

Grid2D Grid2D::make(double xl, double xr, double yb, double yt, int J, int K) {
    if (!(xl < xr) || !(yb < yt)) throw std::invalid_argument("Grid2D: degenerate bounds");
    if (J < 2 || K < 2) throw std::invalid_argument("Grid2D: J and K must be >= 2");
    Grid2D g;
    g.xl = xl;
    g.xr = xr;
    g.yb = yb;
    g.yt = yt;
    g.J = J;
    g.K = K;
    g.dx = (xr - xl) / (J + 1);
    g.dy = (yt - yb) / (K + 1);
    return g;
}

CflParams derive_timestep(const Velocity& c, const Grid2D& g, double cfl_cap) {
    if (c.is_zero()) throw std::invalid_argument("derive_timestep: zero velocity");
    if (!(cfl_cap > 0.0 && cfl_cap < 1.0))
        throw std::invalid_argument("derive_timestep: cfl_cap must lie in (0,1)");
    CflParams p;
    p.cfl_cap = cfl_cap;
    p.dt = cfl_cap / (std::abs(c.cx) / g.dx + std::abs(c.cy) / g.dy);
    p.mu_x = c.cx * p.dt / g.dx;
    p.mu_y = c.cy * p.dt / g.dy;
    return p;
}

CflParams derive_timestep_1d(double cx, double dx, double cfl_cap) {
    if (cx == 0.0) throw std::invalid_argument("derive_timestep_1d: zero velocity");
    if (!(cfl_cap > 0.0 && cfl_cap < 1.0))
        throw std::invalid_argument("derive_timestep_1d: cfl_cap must lie in (0,1)");
    CflParams p;
    p.cfl_cap = cfl_cap;
    p.dt = cfl_cap * dx / std::abs(cx);
    p.mu_x = cx * p.dt / dx;
    p.mu_y = 0.0;
    return p;
}

void Field2D::poison_corners(double value) {
    (*this)(0, 0) = value;
    (*this)(0, K_ + 1) = value;
    (*this)(J_ + 1, 0) = value;
    (*this)(J_ + 1, K_ + 1) = value;
}

bool Field2D::has_non_finite_excluding_corners() const {
    for (int j = 0; j <= J_ + 1; ++j)
        for (int k = 0; k <= K_ + 1; ++k) {
            if (is_corner(j, k)) continue;
            if (!std::isfinite((*this)(j, k))) return true;
        }
    return false;
}

double Field2D::max_abs_excluding_corners() const {
    double m = 0.0;
    for (int j = 0; j <= J_ + 1; ++j)
        for (int k = 0; k <= K_ + 1; ++k) {
            if (is_corner(j, k)) continue;
            m = std::max(m, std::abs((*this)(j, k)));
        }
    return m;
}

double Field2D::l2_norm(double dx, double dy) const {
    double s = 0.0;
    for (int j = 0; j <= J_ + 1; ++j)
        for (int k = 0; k <= K_ + 1; ++k) {
            if (is_corner(j, k)) continue;
            const double u = (*this)(j, k);
            s += u * u;
        }
    return std::sqrt(dx * dy * s);
}

void gaussian_init(const Grid2D& g, InitialKind kind, Field2D& out) {
    out = Field2D(g.J, g.K);
    for (int j = 0; j <= g.J + 1; ++j) {
        const double x = g.x(j);
        for (int k = 0; k <= g.K + 1; ++k) {
            if (out.is_corner(j, k)) continue;
            const double y = g.y(k);
            double u = 0.0;
            switch (kind) {
                case InitialKind::Gaussian1D:
                case InitialKind::Gaussian1DProfile:
                    u = std::exp(-10.0 * x * x);
                    break;
                case InitialKind::Gaussian2D:
                    u = std::exp(-5.0 * (x * x + y * y));
                    break;
            }
            out(j, k) = u;
        }
    }
}

std::vector<double> gaussian_init_1d(const Grid1D& g) {
    std::vector<double> u(g.points());
    for (int j = 0; j <= g.J + 1; ++j) {
        const double x = g.x(j);
        u[j] = std::exp(-10.0 * x * x);
    }
    return u;
}

} // namespace dtbc
