#include "apmm/mesh.hpp"

#include <string>

#include "apmm/errors.hpp"

namespace apmm {

SpatialMesh::SpatialMesh(std::size_t n_cells) : n_cells_(n_cells), dx_(0.0)
{
    if (n_cells < 4) {
        throw ConfigError("spatial mesh needs at least 4 cells, got " + std::to_string(n_cells));
    }
    dx_ = 1.0 / static_cast<double>(n_cells);
}

std::vector<double> SpatialMesh::centers() const
{
    std::vector<double> out(n_cells_);
    for (std::size_t i = 0; i < n_cells_; ++i) out[i] = center(i);
    return out;
}

CellMesh::CellMesh(std::size_t n_points) : n_points_(n_points), dy_(0.0)
{
    if (n_points < 4 || n_points % 2 != 0) {
        throw ConfigError("cell mesh needs an even number of points >= 4, got "
                          + std::to_string(n_points));
    }
    dy_ = 1.0 / static_cast<double>(n_points);
}

std::vector<double> CellMesh::nodes() const
{
    std::vector<double> out(n_points_);
    for (std::size_t j = 0; j < n_points_; ++j) out[j] = node(j);
    return out;
}

SpatialMesh make_spatial_mesh(std::size_t n_cells) { return SpatialMesh(n_cells); }

CellMesh make_cell_mesh(std::size_t n_points) { return CellMesh(n_points); }

SpatialMesh refine(const SpatialMesh& mesh, std::size_t factor)
{
    if (factor < 1) throw ConfigError("refinement factor must be >= 1");
    return SpatialMesh(mesh.size() * factor);
}

}  // namespace apmm
