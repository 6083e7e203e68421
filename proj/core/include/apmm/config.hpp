#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "apmm/problem.hpp"
#include "apmm/solvers.hpp"

namespace apmm {

/// Contents of a `key=value` run configuration file.
struct RunConfig {
    double epsilon = 1.0;
    std::size_t nx = 64;
    std::size_t ny = 16;
    double t_end = 1.0;
    Scheme scheme = Scheme::emm;
    std::string coeff = "sine";
    BoundaryMode bc = BoundaryMode::dirichlet_corrector;
    std::optional<double> dt_factor;
    std::string output = "apmm";
};

/// Parses `key=value` lines; `#` starts a comment, blank lines are skipped.
/// Unknown keys, duplicate keys and malformed values raise ConfigError.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// The sin(2 pi x) / zero-source problem with the configured coefficient, epsilon, T and bc.
ProblemSpec make_problem(const RunConfig& cfg);
SolverConfig make_solver_config(const RunConfig& cfg);
DiffusionField parse_coefficient(const std::string& text);

}  // namespace apmm
