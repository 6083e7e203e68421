#include "apmm/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "apmm/errors.hpp"

namespace apmm {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& value)
{
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
    }
    if (used != value.size()) {
        throw ConfigError("key '" + key + "': trailing characters in '" + value + "'");
    }
    return out;
}

std::size_t to_size(const std::string& key, const std::string& value)
{
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError("key '" + key + "': expected a positive integer, got '" + value + "'");
    }
    return out;
}

}  // namespace

DiffusionField parse_coefficient(const std::string& text)
{
    if (text == "sine") return sine_coefficient();
    constexpr std::string_view prefix = "constant:";
    if (text.starts_with(prefix)) {
        return constant_coefficient(to_double("coeff", text.substr(prefix.size())));
    }
    throw ConfigError("unknown coefficient '" + text + "' (expected sine or constant:<value>)");
}

RunConfig parse_config(std::istream& in)
{
    RunConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");

        if (key == "epsilon") {
            cfg.epsilon = to_double(key, value);
        } else if (key == "nx") {
            cfg.nx = to_size(key, value);
        } else if (key == "ny") {
            cfg.ny = to_size(key, value);
        } else if (key == "t_end") {
            cfg.t_end = to_double(key, value);
        } else if (key == "scheme") {
            cfg.scheme = parse_scheme(value);
        } else if (key == "coeff") {
            parse_coefficient(value);
            cfg.coeff = value;
        } else if (key == "bc") {
            cfg.bc = parse_boundary_mode(value);
        } else if (key == "dt_factor") {
            cfg.dt_factor = to_double(key, value);
        } else if (key == "output") {
            if (value.empty()) throw ConfigError("output prefix must not be empty");
            cfg.output = value;
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_config(in);
}

ProblemSpec make_problem(const RunConfig& cfg)
{
    ProblemSpec spec = model_problem(cfg.epsilon);
    spec.coefficient = parse_coefficient(cfg.coeff);
    spec.t_end = cfg.t_end;
    spec.bc_mode = cfg.bc;
    validate(spec);
    return spec;
}

SolverConfig make_solver_config(const RunConfig& cfg)
{
    SolverConfig sc = default_solver_config(cfg.scheme, cfg.epsilon, cfg.t_end);
    sc.n_x = cfg.nx;
    sc.n_y = cfg.ny;
    if (cfg.dt_factor) sc.dt_factor = *cfg.dt_factor;
    return sc;
}

}  // namespace apmm
