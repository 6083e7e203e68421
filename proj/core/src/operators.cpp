#include "apmm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "apmm/errors.hpp"

namespace apmm {

namespace {

double slice_mean(std::span<const double> row)
{
    double s = 0.0;
    for (double v : row) s += v;
    return s / static_cast<double>(row.size());
}

void check_shape(const MicroField& u, const CoefficientTables& t, const char* where)
{
    if (u.nx() != t.xmesh.size() || u.ny() != t.ymesh.size()) {
        throw ConfigError(std::string(where) + ": field does not match coefficient tables");
    }
}

double trace(const std::vector<double>& wall, std::size_t j)
{
    return wall.empty() ? 0.0 : wall[j];
}

// Bands of the periodic operator L on slice i (row j couples to j-1 and j+1).
struct SliceBands {
    std::vector<double> sub, diag, sup;
};

SliceBands l_bands(const CoefficientTables& t, std::size_t i)
{
    const std::size_t ny = t.ymesh.size();
    const double inv_dy2 = 1.0 / (t.ymesh.dy() * t.ymesh.dy());
    SliceBands b{std::vector<double>(ny), std::vector<double>(ny), std::vector<double>(ny)};
    for (std::size_t j = 0; j < ny; ++j) {
        const double up = t.y_face(i, j) * inv_dy2;
        const double down = t.y_face(i, t.ymesh.prev(j)) * inv_dy2;
        b.sub[j] = down;
        b.sup[j] = up;
        b.diag[j] = -(up + down);
    }
    return b;
}

// q = a * du/dy at y nodes, averaged from the two adjacent half-node fluxes.
void y_flux_at_nodes(std::span<const double> u, std::span<const double> a_half, const CellMesh& ym,
                     std::span<double> q)
{
    const double inv = 1.0 / (2.0 * ym.dy());
    for (std::size_t j = 0; j < ym.size(); ++j) {
        const std::size_t jp = ym.next(j);
        const std::size_t jm = ym.prev(j);
        q[j] = (a_half[j] * (u[jp] - u[j]) + a_half[jm] * (u[j] - u[jm])) * inv;
    }
}

}  // namespace

MacroField project_pi(const MicroField& u)
{
    MacroField out(u.nx());
    for (std::size_t i = 0; i < u.nx(); ++i) out[i] = slice_mean(u.row(i));
    return out;
}

MicroField remove_mean(const MicroField& u)
{
    MicroField out = u;
    for (std::size_t i = 0; i < u.nx(); ++i) {
        auto row = out.row(i);
        const double m = slice_mean(row);
        for (double& v : row) v -= m;
    }
    return out;
}

MicroField apply_L(const MicroField& u, const CoefficientTables& t)
{
    check_shape(u, t, "apply_L");
    const auto& ym = t.ymesh;
    const double inv_dy2 = 1.0 / (ym.dy() * ym.dy());
    MicroField out(u.nx(), u.ny());
    for (std::size_t i = 0; i < u.nx(); ++i) {
        for (std::size_t j = 0; j < u.ny(); ++j) {
            const std::size_t jp = ym.next(j);
            const std::size_t jm = ym.prev(j);
            out(i, j) = (t.y_face(i, j) * (u(i, jp) - u(i, j))
                         - t.y_face(i, jm) * (u(i, j) - u(i, jm)))
                        * inv_dy2;
        }
    }
    return out;
}

CellSolver::CellSolver(const CoefficientTables& t, double shift) : shift_(shift)
{
    if (shift < 0.0) throw NumericalError("CellSolver: shift must be nonnegative");
    const std::size_t nx = t.xmesh.size();
    zero_mean_.reserve(nx);
    if (shift > 0.0) shifted_.reserve(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        auto b = l_bands(t, i);
        // Bordered system [L 1; 1^T 0] with the multiplier eliminated: L + sigma 1 1^T,
        // sigma < 0 so the constant mode joins the negative spectrum of L.
        double scale = 0.0;
        for (double d : b.diag) scale += std::abs(d);
        const double sigma = -scale / static_cast<double>(b.diag.size() * b.diag.size());
        zero_mean_.emplace_back(b.sub, b.diag, b.sup, sigma);

        if (shift > 0.0) {
            for (std::size_t j = 0; j < b.diag.size(); ++j) {
                b.sub[j] *= -shift;
                b.sup[j] *= -shift;
                b.diag[j] = 1.0 - shift * b.diag[j];
            }
            shifted_.emplace_back(b.sub, b.diag, b.sup);
        }
    }
}

MicroField CellSolver::solve_L(const MicroField& r) const
{
    if (r.nx() != zero_mean_.size()) throw ConfigError("solve_L: field does not match solver");
    MicroField w = r;
    for (std::size_t i = 0; i < r.nx(); ++i) {
        auto row = w.row(i);
        double max_abs = 0.0;
        for (double v : row) max_abs = std::max(max_abs, std::abs(v));
        const double mean = slice_mean(row);
        if (std::abs(mean) > 1e-10 * max_abs) {
            std::ostringstream msg;
            msg << "solve_L: right-hand side slice " << i << " has mean " << mean
                << " (max |r| = " << max_abs << "); L is only invertible on zero-mean data";
            throw NumericalError(msg.str());
        }
        // Lagrange multiplier of the bordered system absorbs the roundoff mean.
        for (double& v : row) v -= mean;
        zero_mean_[i].solve_in_place(row);
        const double drift = slice_mean(row);
        for (double& v : row) v -= drift;
    }
    return w;
}

MicroField CellSolver::shifted_solve(const MicroField& rhs) const
{
    if (shift_ == 0.0) return rhs;
    if (rhs.nx() != shifted_.size()) throw ConfigError("shifted_solve: field does not match solver");
    MicroField w = rhs;
    for (std::size_t i = 0; i < rhs.nx(); ++i) {
        auto row = w.row(i);
        // The mean is an eigenvector with eigenvalue 1; solve for the fluctuation only, since
        // for large c the near-singular constant mode would otherwise pick up roundoff.
        const double mean = slice_mean(row);
        for (double& v : row) v -= mean;
        shifted_[i].solve_in_place(row);
        const double drift = slice_mean(row);
        for (double& v : row) v += mean - drift;
    }
    return w;
}

MicroField solve_L(const MicroField& r, const CoefficientTables& t)
{
    check_shape(r, t, "solve_L");
    return CellSolver(t).solve_L(r);
}

MicroField shifted_solve_L(const MicroField& rhs, const CoefficientTables& t, double c)
{
    check_shape(rhs, t, "shifted_solve_L");
    if (!(c > 0.0)) throw NumericalError("shifted_solve_L: c must be positive");
    return CellSolver(t, c).shifted_solve(rhs);
}

MicroField apply_D(const MicroField& u, const CoefficientTables& t, const MicroBoundary& bc)
{
    check_shape(u, t, "apply_D");
    const std::size_t nx = u.nx();
    const std::size_t ny = u.ny();
    const double inv_dx2 = 1.0 / (t.xmesh.dx() * t.xmesh.dx());
    MicroField out(nx, ny);
    for (std::size_t j = 0; j < ny; ++j) {
        const double ghost_left = 2.0 * trace(bc.left, j) - u(0, j);
        const double ghost_right = 2.0 * trace(bc.right, j) - u(nx - 1, j);
        double flux_left = t.x_face(0, j) * (u(0, j) - ghost_left);
        for (std::size_t i = 0; i < nx; ++i) {
            const double next = i + 1 < nx ? u(i + 1, j) : ghost_right;
            const double flux_right = t.x_face(i + 1, j) * (next - u(i, j));
            out(i, j) = (flux_right - flux_left) * inv_dx2;
            flux_left = flux_right;
        }
    }
    return out;
}

MicroField apply_D(const MacroField& u, const CoefficientTables& t, const MacroBoundary& bc)
{
    const std::size_t ny = t.ymesh.size();
    return apply_D(MicroField::lift(u, ny), t,
                   MicroBoundary{std::vector<double>(ny, bc.left), std::vector<double>(ny, bc.right)});
}

namespace {

// Centered in the interior. Next to a wall the one-sided stencil reproduces the centered
// stencil's leading error term, so composed derivatives stay second order.
double x_derivative(const MicroField& u, std::size_t i, std::size_t j, double left, double right,
                    double dx)
{
    const std::size_t n = u.nx();
    if (i == 0) return (1.5 * (u(0, j) - left) + 0.1 * (u(2, j) - left)) / dx;
    if (i + 1 == n) return -(1.5 * (u(n - 1, j) - right) + 0.1 * (u(n - 3, j) - right)) / dx;
    return (u(i + 1, j) - u(i - 1, j)) / (2.0 * dx);
}

}  // namespace

MicroField apply_B(const MicroField& u, const CoefficientTables& t, const MicroBoundary& bc)
{
    check_shape(u, t, "apply_B");
    const std::size_t nx = u.nx();
    const std::size_t ny = u.ny();
    const auto& ym = t.ymesh;
    const double dx = t.xmesh.dx();

    std::vector<double> left(ny), right(ny);
    for (std::size_t j = 0; j < ny; ++j) {
        left[j] = trace(bc.left, j);
        right[j] = trace(bc.right, j);
    }

    // Term 1: d/dx of q = a du/dy.
    MicroField q(nx, ny);
    for (std::size_t i = 0; i < nx; ++i) {
        y_flux_at_nodes(u.row(i), std::span(t.y_face_values).subspan(i * ny, ny), ym, q.row(i));
    }
    std::vector<double> q_left(ny), q_right(ny);
    y_flux_at_nodes(left, t.wall_y_face[0], ym, q_left);
    y_flux_at_nodes(right, t.wall_y_face[1], ym, q_right);

    // Term 2 needs the centered x-gradient of u at every (i, j).
    MicroField gx(nx, ny);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            gx(i, j) = x_derivative(u, i, j, left[j], right[j], dx);
        }
    }

    MicroField out(nx, ny);
    const double inv_dy = 1.0 / ym.dy();
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const double term1 = x_derivative(q, i, j, q_left[j], q_right[j], dx);

            const std::size_t jp = ym.next(j);
            const std::size_t jm = ym.prev(j);
            const double p_up = t.y_face(i, j) * 0.5 * (gx(i, j) + gx(i, jp));
            const double p_down = t.y_face(i, jm) * 0.5 * (gx(i, jm) + gx(i, j));
            out(i, j) = term1 + (p_up - p_down) * inv_dy;
        }
    }
    return out;
}

MicroField apply_B(const MacroField& u, const CoefficientTables& t, const MacroBoundary& bc)
{
    const std::size_t ny = t.ymesh.size();
    return apply_B(MicroField::lift(u, ny), t,
                   MicroBoundary{std::vector<double>(ny, bc.left), std::vector<double>(ny, bc.right)});
}

MacroField apply_Dbar(const MacroField& F, const CoefficientTables& t, const HomogenizedData& hom,
                      const MacroBoundary& bc)
{
    return apply_Dbar(F, t, hom, CellSolver(t), bc);
}

MacroField apply_Dbar(const MacroField& F, const CoefficientTables& t, const HomogenizedData& hom,
                      const CellSolver& solver, const MacroBoundary& bc)
{
    if (F.size() != t.xmesh.size()) throw ConfigError("apply_Dbar: mesh mismatch");
    const MicroField w = solver.solve_L(remove_mean(apply_B(F, t, bc)));
    auto w_wall = wall_corrector_u1(hom, F);
    for (auto& side : w_wall) {
        for (double& v : side) v = -v;
    }
    MacroField out = project_pi(apply_D(F, t, bc));
    const MacroField coupling = project_pi(apply_B(w, t, MicroBoundary{w_wall[0], w_wall[1]}));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= coupling[i];
    return out;
}

void apply_diffusion_1d(std::span<const double> u, std::span<const double> face_coeff, double dx,
                        MacroBoundary bc, std::span<double> out)
{
    const std::size_t n = u.size();
    const double inv_dx2 = 1.0 / (dx * dx);
    double flux_left = face_coeff[0] * (u[0] - (2.0 * bc.left - u[0]));
    for (std::size_t i = 0; i < n; ++i) {
        const double next = i + 1 < n ? u[i + 1] : 2.0 * bc.right - u[n - 1];
        const double flux_right = face_coeff[i + 1] * (next - u[i]);
        out[i] = (flux_right - flux_left) * inv_dx2;
        flux_left = flux_right;
    }
}

}  // namespace apmm
