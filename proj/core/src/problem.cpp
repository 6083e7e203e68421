#include "apmm/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "apmm/errors.hpp"
#include "apmm/fields.hpp"

namespace apmm {

bool all_finite(std::span<const double> values)
{
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

std::string_view to_string(BoundaryMode mode)
{
    switch (mode) {
    case BoundaryMode::dirichlet_corrector: return "dirichlet_corrector";
    case BoundaryMode::dirichlet_homogeneous: return "dirichlet_homogeneous";
    }
    return "unknown";
}

BoundaryMode parse_boundary_mode(std::string_view text)
{
    if (text == "dirichlet_corrector") return BoundaryMode::dirichlet_corrector;
    if (text == "dirichlet_homogeneous") return BoundaryMode::dirichlet_homogeneous;
    throw ConfigError("unknown boundary mode '" + std::string(text) + "'");
}

double ProblemSpec::oscillating_coefficient(double x) const
{
    double y = x / epsilon;
    y -= std::floor(y);
    return coefficient(x, y);
}

void validate(const ProblemSpec& spec)
{
    if (!(spec.epsilon > 0.0 && spec.epsilon <= 1.0)) {
        std::ostringstream msg;
        msg << "epsilon must lie in (0,1], got " << spec.epsilon;
        throw ConfigError(msg.str());
    }
    if (!(spec.t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (!spec.coefficient.evaluate || !spec.source || !spec.initial) {
        throw ConfigError("problem is missing coefficient, source or initial data");
    }
    if (!(spec.coefficient.a_min > 0.0) || spec.coefficient.a_max < spec.coefficient.a_min) {
        throw ConfigError("coefficient bounds must satisfy 0 < a_min <= a_max");
    }
    if (std::abs(spec.initial(0.0)) > 1e-12 || std::abs(spec.initial(1.0)) > 1e-12) {
        throw ConfigError("initial data must vanish at x=0 and x=1 for Dirichlet boundaries");
    }
}

DiffusionField sine_coefficient()
{
    return DiffusionField{
        [](double, double y) { return 1.1 + std::sin(2.0 * std::numbers::pi * y); },
        0.1, 2.1, "sine"};
}

DiffusionField constant_coefficient(double value)
{
    if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError("constant coefficient must be positive and finite");
    std::ostringstream name;
    name << "constant:" << value;
    return DiffusionField{[value](double, double) { return value; }, value, value, name.str()};
}

ProblemSpec model_problem(double epsilon)
{
    ProblemSpec spec;
    spec.coefficient = sine_coefficient();
    spec.source = [](double, double) { return 0.0; };
    spec.initial = [](double x) { return std::sin(2.0 * std::numbers::pi * x); };
    spec.epsilon = epsilon;
    spec.bc_mode = BoundaryMode::dirichlet_corrector;
    spec.t_end = 1.0;
    validate(spec);
    return spec;
}

double CoefficientTables::min_value() const
{
    double m = *std::min_element(center_values.begin(), center_values.end());
    m = std::min(m, *std::min_element(x_face_values.begin(), x_face_values.end()));
    m = std::min(m, *std::min_element(y_face_values.begin(), y_face_values.end()));
    for (const auto& wall : wall_y_face) m = std::min(m, *std::min_element(wall.begin(), wall.end()));
    return m;
}

namespace {

double checked_sample(const DiffusionField& a, double x, double y)
{
    const double v = a(x, y);
    const double slack = 1e-12 * std::max(1.0, std::abs(a.a_max));
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << "ellipticity violated: a(" << x << ", " << y << ") = " << v;
        throw ConfigError(msg.str());
    }
    if (v < a.a_min - slack || v > a.a_max + slack) {
        std::ostringstream msg;
        msg << "a(" << x << ", " << y << ") = " << v << " outside declared bounds [" << a.a_min
            << ", " << a.a_max << "]";
        throw ConfigError(msg.str());
    }
    return v;
}

}  // namespace

CoefficientTables sample_coefficient(const DiffusionField& a, const SpatialMesh& xmesh,
                                     const CellMesh& ymesh)
{
    const std::size_t nx = xmesh.size();
    const std::size_t ny = ymesh.size();
    CoefficientTables t{xmesh, ymesh, {}, {}, {}, {}};
    t.center_values.resize(nx * ny);
    t.x_face_values.resize((nx + 1) * ny);
    t.y_face_values.resize(nx * ny);

    for (std::size_t i = 0; i < nx; ++i) {
        const double x = xmesh.center(i);
        const double gap = std::abs(a(x, 0.0) - a(x, 1.0));
        if (gap > 1e-14 * std::max(1.0, std::abs(a(x, 0.0)))) {
            std::ostringstream msg;
            msg << "coefficient is not 1-periodic in y at x = " << x;
            throw ConfigError(msg.str());
        }
        for (std::size_t j = 0; j < ny; ++j) {
            t.center_values[i * ny + j] = checked_sample(a, x, ymesh.node(j));
            t.y_face_values[i * ny + j] = checked_sample(a, x, ymesh.half_node(j));
        }
    }
    for (std::size_t i = 0; i <= nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            t.x_face_values[i * ny + j] = checked_sample(a, xmesh.face(i), ymesh.node(j));
        }
    }
    for (int w = 0; w < 2; ++w) {
        t.wall_y_face[w].resize(ny);
        for (std::size_t j = 0; j < ny; ++j) {
            t.wall_y_face[w][j] = checked_sample(a, static_cast<double>(w), ymesh.half_node(j));
        }
    }
    return t;
}

}  // namespace apmm
