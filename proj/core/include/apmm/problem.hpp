#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "apmm/mesh.hpp"

namespace apmm {

/// Diffusion coefficient a(x, y), 1-periodic in y, with declared ellipticity bounds.
struct DiffusionField {
    std::function<double(double, double)> evaluate;
    double a_min = 0.0;
    double a_max = 0.0;
    std::string name;

    double operator()(double x, double y) const { return evaluate(x, y); }
};

enum class BoundaryMode { dirichlet_corrector, dirichlet_homogeneous };

std::string_view to_string(BoundaryMode mode);
BoundaryMode parse_boundary_mode(std::string_view text);

struct ProblemSpec {
    DiffusionField coefficient;
    std::function<double(double, double)> source;  // f(t, x)
    std::function<double(double)> initial;         // g(x)
    double epsilon = 1.0;
    BoundaryMode bc_mode = BoundaryMode::dirichlet_corrector;
    double t_end = 1.0;

    /// Coefficient seen by the original problem, a(x, x/eps mod 1).
    double oscillating_coefficient(double x) const;
};

/// Throws ConfigError if epsilon, t_end or the boundary compatibility of g are violated.
void validate(const ProblemSpec& spec);

/// a(x, y) = 1.1 + sin(2 pi y): the 1.1 + sin(x/eps) test coefficient on the unit cell.
DiffusionField sine_coefficient();
DiffusionField constant_coefficient(double value);

/// f = 0, g = sin(2 pi x), T = 1, corrector boundary data.
ProblemSpec model_problem(double epsilon);

/// Coefficient samples needed by the finite-volume operators.
///
/// `center(i, j)` = a(x_i, y_j); `x_face(i, j)` = a(i dx, y_j) for i = 0..N_x, so cell i
/// is bounded by faces i and i+1;
/// `y_face(i, j)` = a(x_i, y_{j+1/2}); `wall_y_face[0|1][j]` = a(0|1, y_{j+1/2}).
/// All interface values come from direct evaluation.
struct CoefficientTables {
    SpatialMesh xmesh;
    CellMesh ymesh;
    std::vector<double> center_values;
    std::vector<double> x_face_values;
    std::vector<double> y_face_values;
    std::vector<double> wall_y_face[2];

    double center(std::size_t i, std::size_t j) const { return center_values[i * ymesh.size() + j]; }
    double x_face(std::size_t i, std::size_t j) const { return x_face_values[i * ymesh.size() + j]; }
    double y_face(std::size_t i, std::size_t j) const { return y_face_values[i * ymesh.size() + j]; }

    double min_value() const;
};

CoefficientTables sample_coefficient(const DiffusionField& a, const SpatialMesh& xmesh,
                                     const CellMesh& ymesh);

}  // namespace apmm
