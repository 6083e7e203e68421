#include <doctest.h>

#include <apmm/errors.hpp>
#include <apmm/mesh.hpp>

#include "test_util.hpp"

using namespace apmm;

TEST_SUITE("mesh") {

TEST_CASE("four cells have centers at odd eighths")
{
    const auto m = make_spatial_mesh(4);
    const std::vector<double> expected{0.125, 0.375, 0.625, 0.875};
    CHECK(m.centers() == expected);
    CHECK(m.face(0) == 0.0);
    CHECK(m.face(4) == 1.0);
}

TEST_CASE("spacing of the 64-cell mesh")
{
    const auto m = make_spatial_mesh(64);
    CHECK(m.dx() == 1.0 / 64.0);
    CHECK(m.size() == 64);
}

TEST_CASE("too few cells are rejected")
{
    CHECK_THROWS_AS(make_spatial_mesh(3), ConfigError);
    CHECK_THROWS_AS(make_spatial_mesh(0), ConfigError);
}

TEST_CASE("cell nodes and periodic neighbours")
{
    const auto m = make_cell_mesh(16);
    const auto nodes = m.nodes();
    REQUIRE(nodes.size() == 16);
    for (std::size_t j = 0; j < 16; ++j) CHECK(nodes[j] == doctest::Approx(j / 16.0).epsilon(1e-15));
    CHECK(m.next(15) == 0);
    CHECK(m.prev(0) == 15);
    CHECK(m.half_node(0) == doctest::Approx(1.0 / 32.0));

    const std::vector<double> four{0.0, 0.25, 0.5, 0.75};
    CHECK(make_cell_mesh(4).nodes() == four);
}

TEST_CASE("odd or tiny cell meshes are rejected")
{
    CHECK_THROWS_AS(make_cell_mesh(5), ConfigError);
    CHECK_THROWS_AS(make_cell_mesh(2), ConfigError);
    CHECK_THROWS_AS(make_cell_mesh(17), ConfigError);
}

TEST_CASE("refinement sizes")
{
    const auto m = make_spatial_mesh(64);
    CHECK(refine(m, 16).size() == 1024);
    CHECK(refine(m, 1) == m);
    CHECK(refine(m, 64).size() == 4096);
    CHECK_THROWS_AS(refine(m, 0), ConfigError);
}

TEST_CASE("widths sum to one and centers are increasing inside the domain")
{
    for (std::size_t n : {4u, 5u, 7u, 64u, 1000u, 4096u}) {
        const auto m = make_spatial_mesh(n);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += m.face(i + 1) - m.face(i);
        CHECK(std::abs(total - 1.0) <= 1e-14);
        CHECK(std::abs(m.dx() * n - 1.0) <= 1e-15);
        const auto c = m.centers();
        CHECK(c.front() > 0.0);
        CHECK(c.back() < 1.0);
        CHECK(std::is_sorted(c.begin(), c.end(), std::less_equal<>{}) == true);
    }
    for (std::size_t n : {4u, 6u, 16u, 256u}) {
        CHECK(std::abs(make_cell_mesh(n).dy() * n - 1.0) <= 1e-15);
    }
}

TEST_CASE("refinement composes")
{
    const auto base = make_spatial_mesh(6);
    for (std::size_t a : {1u, 2u, 3u}) {
        for (std::size_t b : {1u, 4u, 5u}) {
            const auto once = refine(base, a * b);
            const auto twice = refine(refine(base, a), b);
            REQUIRE(once.size() == twice.size());
            CHECK(test::max_abs_diff(once.centers(), twice.centers()) <= 1e-14);
        }
    }
}

}
