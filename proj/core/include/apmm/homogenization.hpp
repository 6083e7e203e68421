#pragma once

#include <array>
#include <vector>

#include "apmm/fields.hpp"
#include "apmm/mesh.hpp"
#include "apmm/problem.hpp"

namespace apmm {

/// Homogenized coefficient and cell corrector sampled on a pair of meshes.
struct HomogenizedData {
    SpatialMesh xmesh;
    CellMesh ymesh;
    std::vector<double> a0;        // at cell centers
    std::vector<double> a0_faces;  // at x-interfaces, N_x + 1 values
    MicroField chi;                // chi(x_i, y_j), zero mean in y
    std::array<std::vector<double>, 2> chi_wall;  // chi(0, y_j), chi(1, y_j)
};

/// Harmonic y-average of a(x, .). The periodic trapezoid rule is applied on the
/// half-node grid y_{j+1/2}, the same samples the discrete cell operator uses.
double harmonic_a0(const DiffusionField& a, double x, const CellMesh& ymesh);

/// Zero-mean corrector chi(x, .) solving d/dy(a (1 + d chi/dy)) = 0 in closed form:
/// chi(y) = a0 * int_0^y 1/a - y, accumulated cell by cell with midpoint values, then
/// shifted to zero mean. This coincides with the discrete periodic cell operator solution.
std::vector<double> solve_cell_problem(const DiffusionField& a, double x, const CellMesh& ymesh);

HomogenizedData build_homogenized(const DiffusionField& a, const SpatialMesh& xmesh,
                                  const CellMesh& ymesh);

/// Second-order derivative of a cell-centered field at cell centers: centered inside,
/// one-sided three-point at the first and last cell.
std::vector<double> center_gradient(const MacroField& u, double dx);

/// Derivative at the walls x=0 and x=1: quadratic extrapolation of the centered differences
/// at the three cells next to the first one. Needs at least 5 cells.
std::array<double, 2> wall_gradient(const MacroField& u, double dx);

/// u1(x_i, y_j) = chi(x_i, y_j) * du/dx(x_i).
MicroField corrector_u1(const HomogenizedData& hom, const MacroField& macro);

/// u1 traces at the two walls: chi(wall, y_j) * du/dx(wall).
std::array<std::vector<double>, 2> wall_corrector_u1(const HomogenizedData& hom,
                                                     const MacroField& macro);

}  // namespace apmm
