#include <doctest.h>

#include <cmath>

#include "dtbc/grid.hpp"

using namespace dtbc;

TEST_CASE("grid spacing and point layout") {
    const auto g = Grid2D::make(-3.0, 3.0, -2.0, 2.0, 300, 200);
    CHECK(g.dx == doctest::Approx(6.0 / 301).epsilon(1e-15));
    CHECK(g.dy == doctest::Approx(4.0 / 201).epsilon(1e-15));
    CHECK((g.J + 1) * g.dx == doctest::Approx(6.0).epsilon(1e-15));
    CHECK((g.K + 1) * g.dy == doctest::Approx(4.0).epsilon(1e-15));

    const auto g1 = Grid1D::make(-3.0, 3.0, 999);
    CHECK(g1.dx == doctest::Approx(6.0 / 1000).epsilon(1e-15));

    const auto g2 = Grid1D::make(0.0, 1.0, 4);
    CHECK(g2.dx == doctest::Approx(0.2).epsilon(1e-15));
    for (int j = 0; j <= 5; ++j) CHECK(g2.x(j) == doctest::Approx(0.2 * j).epsilon(1e-14));

    CHECK_THROWS(Grid2D::make(1.0, -1.0, 0.0, 1.0, 10, 10));
    CHECK_THROWS(Grid2D::make(-1.0, 1.0, 0.0, 1.0, 1, 10));
}

TEST_CASE("timestep derivation saturates the cfl cap") {
    const auto g = Grid2D::make(-3.0, 3.0, -2.0, 2.0, 300, 200);

    SUBCASE("1d") {
        const auto p = derive_timestep_1d(1.0, 6.0 / 1000, 5.0 / 6.0);
        CHECK(p.dt == doctest::Approx(5.0 / 1000).epsilon(1e-15));
        CHECK(p.mu_x == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    }
    SUBCASE("zero tangential velocity") {
        const auto p = derive_timestep(Velocity{1.0, 0.0}, g, 0.5);
        CHECK(p.mu_y == 0.0);
        CHECK(p.mu_x == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("generic pair saturates exactly") {
        const auto p = derive_timestep(Velocity{1.0, 0.1}, g, 0.5);
        CHECK(p.dt == doctest::Approx(0.5 / (301.0 / 6.0 + 0.1 * 201.0 / 4.0)).epsilon(1e-15));
        CHECK(p.mu_x + p.mu_y == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(p.mu_x + p.mu_y < 1.0);
    }
    SUBCASE("zero velocity rejected") {
        CHECK_THROWS(derive_timestep(Velocity{0.0, 0.0}, g, 0.5));
    }
}

TEST_CASE("gaussian initial data") {
    const auto g = Grid2D::make(-3.0, 3.0, -2.0, 2.0, 300, 200);
    Field2D u;
    gaussian_init(g, InitialKind::Gaussian2D, u);

    // Peak sits at the grid point closest to the origin.
    double best = 0.0;
    for (int j = 0; j <= g.J + 1; ++j)
        for (int k = 0; k <= g.K + 1; ++k)
            if (!u.is_corner(j, k)) best = std::max(best, u(j, k));
    CHECK(best == doctest::Approx(1.0).epsilon(1e-3));

    // Corner sentinels stay zero, boundary values are filled.
    CHECK(u(0, 0) == 0.0);
    CHECK(u(0, g.K + 1) == 0.0);
    CHECK(u(g.J + 1, 0) == 0.0);
    CHECK(u(g.J + 1, g.K + 1) == 0.0);
    CHECK(u(0, g.K / 2) > 0.0);

    const auto g1 = Grid1D::make(-3.0, 3.0, 999);
    const auto u1 = gaussian_init_1d(g1);
    CHECK(u1[0] == doctest::Approx(std::exp(-90.0)).epsilon(1e-12));
    CHECK(u1[0] < 1e-38);
}

TEST_CASE("level swap is an involution") {
    State2D s(4, 4);
    s.curr(1, 1) = 3.5;
    s.prev(2, 2) = -1.0;
    s.swap_levels();
    CHECK(s.prev(1, 1) == 3.5);
    s.swap_levels();
    CHECK(s.curr(1, 1) == 3.5);
    CHECK(s.prev(2, 2) == -1.0);
}
