#include "apmm/tridiagonal.hpp"

#include <cmath>
#include <numeric>

#include "apmm/errors.hpp"

namespace apmm {

TridiagonalFactor::TridiagonalFactor(std::span<const double> sub, std::span<const double> diag,
                                     std::span<const double> sup)
    : sub_(sub.begin(), sub.end()), sup_scaled_(diag.size()), inv_pivot_(diag.size())
{
    const std::size_t n = diag.size();
    if (n == 0 || sub.size() != n || sup.size() != n) {
        throw ConfigError("tridiagonal factor: inconsistent band sizes");
    }
    double pivot = diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) pivot = diag[i] - sub[i] * sup_scaled_[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw NumericalError("tridiagonal factor: zero pivot");
        }
        inv_pivot_[i] = 1.0 / pivot;
        sup_scaled_[i] = sup[i] * inv_pivot_[i];
    }
}

void TridiagonalFactor::solve_in_place(std::span<double> x) const
{
    const std::size_t n = size();
    x[0] *= inv_pivot_[0];
    for (std::size_t i = 1; i < n; ++i) {
        x[i] = (x[i] - sub_[i] * x[i - 1]) * inv_pivot_[i];
    }
    for (std::size_t i = n - 1; i > 0; --i) {
        x[i - 1] -= sup_scaled_[i - 1] * x[i];
    }
}

CyclicTridiagonal::CyclicTridiagonal(std::span<const double> sub, std::span<const double> diag,
                                     std::span<const double> sup, double rank_one_shift)
{
    const std::size_t n = diag.size();
    if (n < 3 || sub.size() != n || sup.size() != n) {
        throw ConfigError("cyclic tridiagonal: need n >= 3 and matching bands");
    }
    const double gamma = -diag[0];
    const double corner_top = sub[0];      // A[0][n-1]
    const double corner_bottom = sup[n - 1];  // A[n-1][0]

    std::vector<double> d(diag.begin(), diag.end());
    d[0] -= gamma;
    d[n - 1] -= corner_top * corner_bottom / gamma;
    base_ = TridiagonalFactor(sub, d, sup);

    // A = T + u v^T with u = (gamma, 0.., corner_bottom), v = (1, 0.., corner_top/gamma).
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = corner_bottom;
    v_[0].assign(n, 0.0);
    v_[0][0] = 1.0;
    v_[0][n - 1] = corner_top / gamma;
    z_[0] = u;
    base_.solve_in_place(z_[0]);
    rank_ = 1;

    if (rank_one_shift != 0.0) {
        z_[1].assign(n, rank_one_shift);
        base_.solve_in_place(z_[1]);
        v_[1].assign(n, 1.0);
        rank_ = 2;
    }

    // Capacitance matrix C = I + V^T Z, inverted explicitly (k <= 2).
    std::array<std::array<double, 2>, 2> c{{{1.0, 0.0}, {0.0, 1.0}}};
    for (std::size_t r = 0; r < rank_; ++r) {
        for (std::size_t k = 0; k < rank_; ++k) {
            c[r][k] += std::inner_product(v_[r].begin(), v_[r].end(), z_[k].begin(), 0.0);
        }
    }
    if (rank_ == 1) {
        if (c[0][0] == 0.0) throw NumericalError("cyclic tridiagonal: singular matrix");
        capacitance_inv_[0][0] = 1.0 / c[0][0];
    } else {
        const double det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
        if (det == 0.0 || !std::isfinite(det)) {
            throw NumericalError("cyclic tridiagonal: singular bordered matrix");
        }
        capacitance_inv_ = {{{c[1][1] / det, -c[0][1] / det}, {-c[1][0] / det, c[0][0] / det}}};
    }
}

void CyclicTridiagonal::solve_in_place(std::span<double> x) const
{
    base_.solve_in_place(x);
    std::array<double, 2> proj{0.0, 0.0};
    for (std::size_t r = 0; r < rank_; ++r) {
        proj[r] = std::inner_product(v_[r].begin(), v_[r].end(), x.begin(), 0.0);
    }
    for (std::size_t k = 0; k < rank_; ++k) {
        double coef = 0.0;
        for (std::size_t r = 0; r < rank_; ++r) coef += capacitance_inv_[k][r] * proj[r];
        const auto& z = z_[k];
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= coef * z[i];
    }
}

std::vector<double> CyclicTridiagonal::solve(std::span<const double> rhs) const
{
    std::vector<double> x(rhs.begin(), rhs.end());
    solve_in_place(x);
    return x;
}

}  // namespace apmm
