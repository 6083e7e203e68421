#include <doctest.h>

#include <sstream>

#include <apmm/config.hpp>
#include <apmm/errors.hpp>

using namespace apmm;

namespace {

RunConfig parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_config(in);
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults when the file is empty")
{
    const auto cfg = parse("");
    CHECK(cfg.epsilon == 1.0);
    CHECK(cfg.nx == 64);
    CHECK(cfg.ny == 16);
    CHECK(cfg.scheme == Scheme::emm);
    CHECK(cfg.coeff == "sine");
    CHECK(cfg.bc == BoundaryMode::dirichlet_corrector);
    CHECK_FALSE(cfg.dt_factor.has_value());
    CHECK(cfg.output == "apmm");
}

TEST_CASE("every key is read, comments and blank lines are skipped")
{
    const auto cfg = parse(
        "# a run\n"
        "epsilon = 0.1\n"
        "\n"
        "nx=128   # macro cells\n"
        "ny=32\r\n"
        "t_end=0.02\n"
        "scheme=hmm\n"
        "coeff=constant:2.5\n"
        "bc=dirichlet_homogeneous\n"
        "dt_factor=0.1\n"
        "output=out/run1\n");
    CHECK(cfg.epsilon == 0.1);
    CHECK(cfg.nx == 128);
    CHECK(cfg.ny == 32);
    CHECK(cfg.t_end == 0.02);
    CHECK(cfg.scheme == Scheme::hmm);
    CHECK(cfg.coeff == "constant:2.5");
    CHECK(cfg.bc == BoundaryMode::dirichlet_homogeneous);
    CHECK(cfg.dt_factor.value() == 0.1);
    CHECK(cfg.output == "out/run1");

    const auto spec = make_problem(cfg);
    CHECK(spec.coefficient(0.3, 0.7) == 2.5);
    CHECK(spec.t_end == 0.02);
    const auto sc = make_solver_config(cfg);
    CHECK(sc.n_x == 128);
    CHECK(sc.dt_factor == 0.1);
    CHECK(sc.scheme == Scheme::hmm);
}

TEST_CASE("malformed files are config errors")
{
    CHECK_THROWS_AS(parse("unknown=1\n"), ConfigError);
    CHECK_THROWS_AS(parse("nx=64\nnx=32\n"), ConfigError);
    CHECK_THROWS_AS(parse("nx\n"), ConfigError);
    CHECK_THROWS_AS(parse("nx=-3\n"), ConfigError);
    CHECK_THROWS_AS(parse("nx=6.5\n"), ConfigError);
    CHECK_THROWS_AS(parse("epsilon=abc\n"), ConfigError);
    CHECK_THROWS_AS(parse("epsilon=0.1x\n"), ConfigError);
    CHECK_THROWS_AS(parse("scheme=rk4\n"), ConfigError);
    CHECK_THROWS_AS(parse("coeff=random\n"), ConfigError);
    CHECK_THROWS_AS(parse("coeff=constant:-1\n"), ConfigError);
    CHECK_THROWS_AS(parse("bc=periodic\n"), ConfigError);
    CHECK_THROWS_AS(parse("output=\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/apmm.cfg"), ConfigError);
}

TEST_CASE("out-of-range values are rejected when the problem is built")
{
    CHECK_THROWS_AS(make_problem(parse("epsilon=2\n")), ConfigError);
    CHECK_THROWS_AS(make_problem(parse("epsilon=0\n")), ConfigError);
    CHECK_THROWS_AS(make_problem(parse("t_end=-1\n")), ConfigError);
}

TEST_CASE("scheme names round trip")
{
    for (auto s : {Scheme::ref, Scheme::hmm, Scheme::emm}) CHECK(parse_scheme(to_string(s)) == s);
}

}
