#include <doctest.h>

#include <apmm/errors.hpp>
#include <apmm/operators.hpp>

#include "test_util.hpp"

using namespace apmm;
using apmm::test::pi;

namespace {

CoefficientTables tables_for(const DiffusionField& a, std::size_t nx, std::size_t ny)
{
    return sample_coefficient(a, make_spatial_mesh(nx), make_cell_mesh(ny));
}

double slice_dot(std::span<const double> u, std::span<const double> v)
{
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * v[j];
    return s;
}

MicroField zero_mean_random(std::size_t nx, std::size_t ny, std::uint32_t seed)
{
    return remove_mean(test::random_field(nx, ny, seed));
}

const DiffusionField smooth_xy{
    [](double x, double y) { return 1.5 + 0.5 * std::sin(2 * pi * y) * std::cos(pi * x); },
    1.0, 2.0, "smooth"};

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("projection")
{
    const auto xm = make_spatial_mesh(8);
    const auto ym = make_cell_mesh(16);
    for (double v : project_pi(MicroField(8, 16, 2.5)).values) CHECK(v == doctest::Approx(2.5));
    const auto s = test::sample(xm, ym, [](double, double y) { return std::sin(2 * pi * y); });
    for (double v : project_pi(s).values) CHECK(std::abs(v) <= 1e-14);
    const auto p = test::sample(xm, ym, [](double x, double y) { return std::sin(2 * pi * x) * std::cos(4 * pi * y); });
    for (double v : project_pi(p).values) CHECK(std::abs(v) <= 1e-13);
    const auto r = remove_mean(test::random_field(8, 16, 3));
    for (double v : project_pi(r).values) CHECK(std::abs(v) <= 1e-15);
}

TEST_CASE("L annihilates y-constants and telescopes")
{
    const auto t = tables_for(sine_coefficient(), 8, 16);
    const auto lifted = MicroField::lift(test::sample(make_spatial_mesh(8), [](double x) { return x * x + 1; }), 16);
    for (double v : test::values(apply_L(lifted, t))) CHECK(v == 0.0);
    for (std::uint32_t seed = 1; seed <= 5; ++seed) {
        const auto u = test::random_field(8, 16, seed);
        for (double v : project_pi(apply_L(u, t)).values) CHECK(std::abs(v) <= 1e-12);
    }
}

TEST_CASE("L is symmetric in the discrete inner product")
{
    const auto t = tables_for(smooth_xy, 6, 32);
    for (std::uint32_t seed = 10; seed < 15; ++seed) {
        const auto u = test::random_field(6, 32, seed);
        const auto v = test::random_field(6, 32, seed + 100);
        const auto Lu = apply_L(u, t);
        const auto Lv = apply_L(v, t);
        for (std::size_t i = 0; i < 6; ++i) {
            const double lhs = slice_dot(Lu.row(i), v.row(i)) * t.ymesh.dy();
            const double rhs = slice_dot(u.row(i), Lv.row(i)) * t.ymesh.dy();
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("L converges at second order on a smooth field")
{
    std::vector<double> h, e;
    double err16 = 0.0;
    for (std::size_t ny : {16u, 32u, 64u}) {
        const auto t = tables_for(constant_coefficient(1.0), 4, ny);
        const auto u = test::sample(t.xmesh, t.ymesh, [](double, double y) { return std::sin(2 * pi * y); });
        const auto Lu = apply_L(u, t);
        double m = 0.0;
        for (std::size_t j = 0; j < ny; ++j) m = std::max(m, std::abs(Lu(2, j) + 4 * pi * pi * std::sin(2 * pi * t.ymesh.node(j))));
        if (ny == 16) err16 = m;
        h.push_back(t.ymesh.dy());
        e.push_back(m);
    }
    CHECK(err16 <= 0.7);
    CHECK(e[0] / e[1] == doctest::Approx(4.0).epsilon(0.05));
    const double order = test::slope(h, e);
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);

    // Variable coefficient, analytic d/dy(a du/dy).
    h.clear();
    e.clear();
    for (std::size_t ny : {16u, 32u, 64u}) {
        const auto t = tables_for(sine_coefficient(), 4, ny);
        const auto u = test::sample(t.xmesh, t.ymesh, [](double, double y) { return std::cos(2 * pi * y); });
        const auto Lu = apply_L(u, t);
        double m = 0.0;
        for (std::size_t j = 0; j < ny; ++j) {
            const double y = t.ymesh.node(j);
            const double exact = 2 * pi * std::cos(2 * pi * y) * (-2 * pi * std::sin(2 * pi * y))
                                 + (1.1 + std::sin(2 * pi * y)) * (-4 * pi * pi * std::cos(2 * pi * y));
            m = std::max(m, std::abs(Lu(1, j) - exact));
        }
        h.push_back(t.ymesh.dy());
        e.push_back(m);
    }
    CHECK(test::slope(h, e) >= 1.8);
    CHECK(test::slope(h, e) <= 2.2);
}

TEST_CASE("solve_L inverts L on zero-mean data")
{
    const auto t = tables_for(sine_coefficient(), 8, 32);
    for (double v : test::values(solve_L(MicroField(8, 32), t))) CHECK(v == 0.0);

    for (std::uint32_t seed = 20; seed < 26; ++seed) {
        const auto r = zero_mean_random(8, 32, seed);
        const auto w = solve_L(r, t);
        const auto back = apply_L(w, t);
        CHECK(test::max_abs_diff(back.data(), r.data()) <= 1e-11 * test::max_abs(r.data()));
        for (double m : project_pi(w).values) CHECK(std::abs(m) <= 1e-12 * test::max_abs(w.data()));
    }

    const auto flat = tables_for(constant_coefficient(1.0), 4, 64);
    const auto r = test::sample(flat.xmesh, flat.ymesh, [](double, double y) { return std::sin(2 * pi * y); });
    const auto w = solve_L(r, flat);
    CHECK(test::max_abs_diff(apply_L(w, flat).data(), r.data()) <= 1e-12);
    double m = 0.0;
    for (std::size_t j = 0; j < 64; ++j) m = std::max(m, std::abs(w(0, j) + std::sin(2 * pi * flat.ymesh.node(j)) / (4 * pi * pi)));
    CHECK(m <= 1e-4);
}

TEST_CASE("solve_L rejects data with a mean")
{
    const auto t = tables_for(sine_coefficient(), 4, 8);
    MicroField r = zero_mean_random(4, 8, 1);
    r(2, 3) += 0.5;
    CHECK_THROWS_AS(solve_L(r, t), NumericalError);
}

TEST_CASE("shifted solve")
{
    const auto t = tables_for(sine_coefficient(), 6, 16);
    const auto constant = MicroField(6, 16, 1.75);
    for (double c : {1e-3, 1.0, 1e6, 1e12}) {
        for (double v : test::values(shifted_solve_L(constant, t, c))) CHECK(v == doctest::Approx(1.75).epsilon(1e-12));
    }
    const auto r = test::random_field(6, 16, 77);
    CHECK(test::max_abs_diff(shifted_solve_L(r, t, 1e-300).data(), r.data()) <= 1e-12);
    CHECK_THROWS_AS(shifted_solve_L(r, t, 0.0), NumericalError);

    // Mean preservation and residual for many shifts.
    for (double c : {1e-4, 0.1, 10.0, 1e8}) {
        for (std::uint32_t seed = 30; seed < 33; ++seed) {
            const auto rhs = test::random_field(6, 16, seed);
            const auto w = shifted_solve_L(rhs, t, c);
            const auto mw = project_pi(w);
            const auto mr = project_pi(rhs);
            CHECK(test::max_abs_diff(mw.values, mr.values) <= 1e-12);
            const auto Lw = apply_L(w, t);
            double res = 0.0;
            for (std::size_t k = 0; k < w.data().size(); ++k) res = std::max(res, std::abs(w.data()[k] - c * Lw.data()[k] - rhs.data()[k]));
            CHECK(res <= 1e-9 * std::max(1.0, c));
        }
    }
}

TEST_CASE("shifted solve matches a dense solve and the continuous eigenvalue")
{
    const std::size_t ny = 32;
    const auto t = tables_for(constant_coefficient(1.0), 4, ny);
    const auto rhs = test::sample(t.xmesh, t.ymesh, [](double, double y) { return std::sin(2 * pi * y); });
    const auto w = shifted_solve_L(rhs, t, 1.0);

    const double inv_dy2 = 1.0 / (t.ymesh.dy() * t.ymesh.dy());
    std::vector<std::vector<double>> a(ny, std::vector<double>(ny, 0.0));
    for (std::size_t j = 0; j < ny; ++j) {
        a[j][j] = 1.0 + 2.0 * inv_dy2;
        a[j][t.ymesh.next(j)] -= inv_dy2;
        a[j][t.ymesh.prev(j)] -= inv_dy2;
    }
    const auto oracle = test::dense_solve(a, std::vector<double>(rhs.row(1).begin(), rhs.row(1).end()));
    CHECK(test::max_abs_diff(std::vector<double>(w.row(1).begin(), w.row(1).end()), oracle) <= 1e-13);

    // Eigenvalue error 4 pi^2 (pi dy)^2 / 3 gives |w - exact| ~ (4 pi^4 / 3) dy^2 / (1 + 4 pi^2)^2.
    std::vector<double> h, e;
    for (std::size_t n : {32u, 64u, 128u}) {
        const auto tn = tables_for(constant_coefficient(1.0), 4, n);
        const auto r = test::sample(tn.xmesh, tn.ymesh, [](double, double y) { return std::sin(2 * pi * y); });
        const auto wn = shifted_solve_L(r, tn, 1.0);
        double m = 0.0;
        for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(wn(1, j) - std::sin(2 * pi * tn.ymesh.node(j)) / (1 + 4 * pi * pi)));
        const double dy = tn.ymesh.dy();
        CHECK(m <= 0.1 * dy * dy);
        h.push_back(dy);
        e.push_back(m);
    }
    CHECK(test::slope(h, e) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("D on simple fields")
{
    const auto t = tables_for(constant_coefficient(1.0), 64, 4);
    for (double v : test::values(apply_D(MacroField(64), t))) CHECK(v == 0.0);

    const auto s = test::sample(t.xmesh, [](double x) { return std::sin(pi * x); });
    const auto Ds = apply_D(s, t);
    for (std::size_t i = 1; i + 1 < 64; ++i) {
        CHECK(std::abs(Ds(i, 0) + pi * pi * s[i]) <= 5e-3);
    }

    const auto lin = test::sample(t.xmesh, [](double x) { return 2.0 * x - 0.3; });
    const auto Dl = apply_D(lin, t);
    for (std::size_t i = 1; i + 1 < 64; ++i) CHECK(std::abs(Dl(i, 2)) <= 1e-12);
    const auto Dl_walls = apply_D(lin, t, MacroBoundary{-0.3, 1.7});
    for (double v : Dl_walls.data()) CHECK(std::abs(v) <= 1e-10);
}

TEST_CASE("D converges at second order with variable coefficient")
{
    std::vector<double> h, e;
    for (std::size_t nx : {32u, 64u, 128u}) {
        const auto t = tables_for(smooth_xy, nx, 8);
        const auto u = test::sample(t.xmesh, t.ymesh, [](double x, double y) { return std::sin(pi * x) * (1 + 0.3 * std::cos(2 * pi * y)); });
        const auto Du = apply_D(u, t);
        double m = 0.0;
        for (std::size_t i = 0; i < nx; ++i) {
            for (std::size_t j = 0; j < 8; ++j) {
                const double x = t.xmesh.center(i), y = t.ymesh.node(j);
                const double g = 1 + 0.3 * std::cos(2 * pi * y);
                const double a = 1.5 + 0.5 * std::sin(2 * pi * y) * std::cos(pi * x);
                const double ax = -0.5 * pi * std::sin(2 * pi * y) * std::sin(pi * x);
                const double exact = g * (ax * pi * std::cos(pi * x) - a * pi * pi * std::sin(pi * x));
                m = std::max(m, std::abs(Du(i, j) - exact));
            }
        }
        h.push_back(t.xmesh.dx());
        e.push_back(m);
    }
    const double order = test::slope(h, e);
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
}

TEST_CASE("B on simple fields")
{
    const std::size_t nx = 64, ny = 32;
    const auto t = tables_for(sine_coefficient(), nx, ny);

    // u = u(x): B u = a'(y) du/dx.
    const auto ux = test::sample(t.xmesh, [](double x) { return std::sin(2 * pi * x); });
    const auto Bu = apply_B(ux, t);
    for (std::size_t i = 4; i + 4 < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const double exact = 2 * pi * std::cos(2 * pi * t.ymesh.node(j)) * 2 * pi * std::cos(2 * pi * t.xmesh.center(i));
            CHECK(std::abs(Bu(i, j) - exact) <= 0.05 * 4 * pi * pi);
        }
    }
    for (double v : project_pi(Bu).values) CHECK(std::abs(v) <= 1e-12);

    // u = u(y), a independent of x: both terms vanish.
    const auto uy = test::sample(t.xmesh, t.ymesh, [](double, double y) { return std::cos(2 * pi * y) + 0.2 * std::sin(6 * pi * y); });
    MicroBoundary walls{std::vector<double>(uy.row(0).begin(), uy.row(0).end()),
                        std::vector<double>(uy.row(nx - 1).begin(), uy.row(nx - 1).end())};
    for (double v : test::values(apply_B(uy, t, walls))) CHECK(std::abs(v) <= 1e-12);

    for (std::uint32_t seed = 40; seed < 44; ++seed) {
        MacroField f(nx);
        const auto rnd = test::random_field(nx, 1, seed);
        for (std::size_t i = 0; i < nx; ++i) f[i] = rnd(i, 0);
        for (double v : project_pi(apply_B(f, t, MacroBoundary{0.3, -0.2})).values) CHECK(std::abs(v) <= 1e-12);
    }
}

TEST_CASE("B converges at second order")
{
    std::vector<double> h, e;
    for (std::size_t n : {16u, 32u, 64u}) {
        const auto t = tables_for(smooth_xy, n, n);
        const auto exact_u = [](double x, double y) { return std::sin(pi * x) * std::cos(2 * pi * y); };
        const auto u = test::sample(t.xmesh, t.ymesh, exact_u);
        MicroBoundary walls{std::vector<double>(n), std::vector<double>(n)};
        for (std::size_t j = 0; j < n; ++j) {
            walls.left[j] = exact_u(0.0, t.ymesh.node(j));
            walls.right[j] = exact_u(1.0, t.ymesh.node(j));
        }
        const auto Bu = apply_B(u, t, walls);
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double x = t.xmesh.center(i), y = t.ymesh.node(j);
                const double a = 1.5 + 0.5 * std::sin(2 * pi * y) * std::cos(pi * x);
                const double ax = -0.5 * pi * std::sin(2 * pi * y) * std::sin(pi * x);
                const double ay = pi * std::cos(2 * pi * y) * std::cos(pi * x);
                const double ux = pi * std::cos(pi * x) * std::cos(2 * pi * y);
                const double uy = -2 * pi * std::sin(pi * x) * std::sin(2 * pi * y);
                const double uxy = -2 * pi * pi * std::cos(pi * x) * std::sin(2 * pi * y);
                const double exact = ax * uy + ay * ux + 2 * a * uxy;
                m = std::max(m, std::abs(Bu(i, j) - exact));
            }
        }
        h.push_back(1.0 / n);
        e.push_back(m);
    }
    const double order = test::slope(h, e);
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
}

TEST_CASE("homogenized operator")
{
    const auto xm = make_spatial_mesh(32);
    const auto ym = make_cell_mesh(16);

    SUBCASE("constant coefficient reduces to the second difference")
    {
        const auto t = sample_coefficient(constant_coefficient(2.0), xm, ym);
        const auto hom = build_homogenized(constant_coefficient(2.0), xm, ym);
        const auto F = test::sample(xm, [](double x) { return x * (1 - x) * std::exp(x); });
        const auto d = apply_Dbar(F, t, hom);
        std::vector<double> expected(32);
        std::vector<double> faces(33, 2.0);
        apply_diffusion_1d(F.values, faces, xm.dx(), {}, expected);
        CHECK(test::max_abs_diff(d.values, expected) <= 1e-10);
    }

    SUBCASE("zero in, zero out")
    {
        const auto t = sample_coefficient(sine_coefficient(), xm, ym);
        const auto hom = build_homogenized(sine_coefficient(), xm, ym);
        for (double v : apply_Dbar(MacroField(32), t, hom).values) CHECK(v == 0.0);
    }
}

TEST_CASE("homogenized operator approaches the harmonic-mean diffusion")
{
    std::vector<double> h, e;
    for (std::size_t n : {32u, 64u, 128u}) {
        const auto xm = make_spatial_mesh(n);
        const auto ym = make_cell_mesh(n);
        const auto t = sample_coefficient(sine_coefficient(), xm, ym);
        const auto hom = build_homogenized(sine_coefficient(), xm, ym);
        const auto F = test::sample(xm, [](double x) { return std::sin(2 * pi * x); });
        const auto d = apply_Dbar(F, t, hom);
        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double exact = -std::sqrt(0.21) * 4 * pi * pi * F[i];
            err = std::max(err, std::abs(d[i] - exact));
            scale = std::max(scale, std::abs(exact));
        }
        if (n == 64) CHECK(err / scale <= 2e-2);
        h.push_back(1.0 / n);
        e.push_back(err / scale);
    }
    CHECK(test::slope(h, e) >= 1.8);
}

TEST_CASE("cached cell solver matches the free functions")
{
    const auto t = tables_for(sine_coefficient(), 8, 16);
    const CellSolver solver(t, 0.37);
    CHECK(solver.shift() == 0.37);
    const auto r = zero_mean_random(8, 16, 5);
    CHECK(solver.solve_L(r).data() == solve_L(r, t).data());
    const auto rhs = test::random_field(8, 16, 6);
    CHECK(solver.shifted_solve(rhs).data() == shifted_solve_L(rhs, t, 0.37).data());
    CHECK_THROWS(CellSolver(t, -1.0));
}

TEST_CASE("shape mismatches are rejected")
{
    const auto t = tables_for(sine_coefficient(), 8, 16);
    CHECK_THROWS_AS(apply_L(MicroField(8, 8), t), ConfigError);
    CHECK_THROWS_AS(apply_D(MicroField(7, 16), t), ConfigError);
    CHECK_THROWS_AS(apply_B(MicroField(8, 4), t), ConfigError);
}

}
