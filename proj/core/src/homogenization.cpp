#include "apmm/homogenization.hpp"

#include <sstream>

#include "apmm/errors.hpp"

namespace apmm {

namespace {

std::vector<double> inverse_half_node_samples(const DiffusionField& a, double x,
                                              const CellMesh& ymesh)
{
    std::vector<double> inv(ymesh.size());
    for (std::size_t j = 0; j < ymesh.size(); ++j) {
        const double v = a(x, ymesh.half_node(j));
        if (!(v > 0.0)) {
            std::ostringstream msg;
            msg << "cell problem: a(" << x << ", " << ymesh.half_node(j) << ") = " << v
                << " is not positive";
            throw ConfigError(msg.str());
        }
        inv[j] = 1.0 / v;
    }
    return inv;
}

double harmonic_from_inverse(const std::vector<double>& inv)
{
    double sum = 0.0;
    for (double v : inv) sum += v;
    return static_cast<double>(inv.size()) / sum;
}

std::vector<double> chi_from_inverse(const std::vector<double>& inv, double a0, double dy)
{
    const std::size_t n = inv.size();
    std::vector<double> chi(n);
    chi[0] = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        chi[j + 1] = chi[j] + dy * (a0 * inv[j] - 1.0);
    }
    double mean = 0.0;
    for (double v : chi) mean += v;
    mean /= static_cast<double>(n);
    for (double& v : chi) v -= mean;
    return chi;
}

}  // namespace

double harmonic_a0(const DiffusionField& a, double x, const CellMesh& ymesh)
{
    return harmonic_from_inverse(inverse_half_node_samples(a, x, ymesh));
}

std::vector<double> solve_cell_problem(const DiffusionField& a, double x, const CellMesh& ymesh)
{
    const auto inv = inverse_half_node_samples(a, x, ymesh);
    return chi_from_inverse(inv, harmonic_from_inverse(inv), ymesh.dy());
}

HomogenizedData build_homogenized(const DiffusionField& a, const SpatialMesh& xmesh,
                                  const CellMesh& ymesh)
{
    const std::size_t nx = xmesh.size();
    const std::size_t ny = ymesh.size();
    HomogenizedData hom{xmesh, ymesh, std::vector<double>(nx), std::vector<double>(nx + 1),
                        MicroField(nx, ny), {}};

    // Each x slice is independent and writes only its own row.
    for (std::size_t i = 0; i < nx; ++i) {
        const auto inv = inverse_half_node_samples(a, xmesh.center(i), ymesh);
        hom.a0[i] = harmonic_from_inverse(inv);
        const auto chi = chi_from_inverse(inv, hom.a0[i], ymesh.dy());
        std::copy(chi.begin(), chi.end(), hom.chi.row(i).begin());
    }
    for (std::size_t i = 0; i <= nx; ++i) hom.a0_faces[i] = harmonic_a0(a, xmesh.face(i), ymesh);
    for (int w = 0; w < 2; ++w) hom.chi_wall[w] = solve_cell_problem(a, static_cast<double>(w), ymesh);
    return hom;
}

std::vector<double> center_gradient(const MacroField& u, double dx)
{
    const std::size_t n = u.size();
    if (n < 3) throw ConfigError("center_gradient needs at least 3 cells");
    std::vector<double> g(n);
    g[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
    for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (u[i + 1] - u[i - 1]) / (2.0 * dx);
    g[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * dx);
    return g;
}

std::array<double, 2> wall_gradient(const MacroField& u, double dx)
{
    const std::size_t n = u.size();
    if (n < 5) throw ConfigError("wall_gradient needs at least 5 cells");
    // Quadratic extrapolation of the centered differences at cells 1..3.
    const auto extrapolated = [](double u0, double u1, double u2, double u3, double u4) {
        return (-4.375 * u0 + 5.25 * u1 + 2.5 * u2 - 5.25 * u3 + 1.875 * u4) / 2.0;
    };
    return {extrapolated(u[0], u[1], u[2], u[3], u[4]) / dx,
            -extrapolated(u[n - 1], u[n - 2], u[n - 3], u[n - 4], u[n - 5]) / dx};
}

MicroField corrector_u1(const HomogenizedData& hom, const MacroField& macro)
{
    if (macro.size() != hom.xmesh.size()) throw ConfigError("corrector_u1: mesh mismatch");
    const auto grad = center_gradient(macro, hom.xmesh.dx());
    MicroField u1(hom.chi.nx(), hom.chi.ny());
    for (std::size_t i = 0; i < u1.nx(); ++i) {
        for (std::size_t j = 0; j < u1.ny(); ++j) u1(i, j) = hom.chi(i, j) * grad[i];
    }
    return u1;
}

std::array<std::vector<double>, 2> wall_corrector_u1(const HomogenizedData& hom,
                                                     const MacroField& macro)
{
    if (macro.size() != hom.xmesh.size()) throw ConfigError("wall_corrector_u1: mesh mismatch");
    const auto grad = wall_gradient(macro, hom.xmesh.dx());
    std::array<std::vector<double>, 2> out;
    for (int w = 0; w < 2; ++w) {
        out[w] = hom.chi_wall[w];
        for (double& v : out[w]) v *= grad[w];
    }
    return out;
}

}  // namespace apmm
