#pragma once

#include <cstddef>
#include <vector>

namespace apmm {

/// Uniform finite-volume mesh of the macro domain (0,1), unknowns at cell centers.
class SpatialMesh {
public:
    explicit SpatialMesh(std::size_t n_cells);

    std::size_t size() const { return n_cells_; }
    double dx() const { return dx_; }

    double center(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dx_; }
    /// Interface i sits at x = i*dx, i = 0..n_cells (0 and n_cells are the walls).
    double face(std::size_t i) const { return static_cast<double>(i) * dx_; }

    std::vector<double> centers() const;

    friend bool operator==(const SpatialMesh&, const SpatialMesh&) = default;

private:
    std::size_t n_cells_;
    double dx_;
};

/// Uniform periodic nodes y_j = j*dy on the unit cell, index N_y wraps to 0.
class CellMesh {
public:
    explicit CellMesh(std::size_t n_points);

    std::size_t size() const { return n_points_; }
    double dy() const { return dy_; }

    double node(std::size_t j) const { return static_cast<double>(j) * dy_; }
    double half_node(std::size_t j) const { return (static_cast<double>(j) + 0.5) * dy_; }

    std::size_t next(std::size_t j) const { return j + 1 == n_points_ ? 0 : j + 1; }
    std::size_t prev(std::size_t j) const { return j == 0 ? n_points_ - 1 : j - 1; }

    std::vector<double> nodes() const;

    friend bool operator==(const CellMesh&, const CellMesh&) = default;

private:
    std::size_t n_points_;
    double dy_;
};

SpatialMesh make_spatial_mesh(std::size_t n_cells);
CellMesh make_cell_mesh(std::size_t n_points);
SpatialMesh refine(const SpatialMesh& mesh, std::size_t factor);

}  // namespace apmm
