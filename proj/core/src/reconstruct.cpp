#include "apmm/reconstruct.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "apmm/errors.hpp"
#include "apmm/homogenization.hpp"

namespace apmm {

TrigInterpolant::TrigInterpolant(std::span<const double> samples)
{
    const std::size_t n = samples.size();
    if (n < 2 || n % 2 != 0) throw ConfigError("trig_interp needs an even number of samples");
    const std::size_t half = n / 2;
    cos_coef_.assign(half + 1, 0.0);
    sin_coef_.assign(half + 1, 0.0);
    const double two_pi_n = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k <= half; ++k) {
        double c = 0.0;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            // Reduce k*j mod n first so the angle stays in [0, 2 pi).
            const double angle = two_pi_n * static_cast<double>((k * j) % n);
            c += samples[j] * std::cos(angle);
            s += samples[j] * std::sin(angle);
        }
        const double w = (k == 0 || k == half) ? 1.0 / static_cast<double>(n)
                                               : 2.0 / static_cast<double>(n);
        cos_coef_[k] = w * c;
        sin_coef_[k] = (k == 0 || k == half) ? 0.0 : w * s;
    }
}

double TrigInterpolant::operator()(double y) const
{
    y -= std::floor(y);
    const double angle = 2.0 * std::numbers::pi * y;
    const std::size_t half = cos_coef_.size() - 1;
    double value = cos_coef_[0];
    for (std::size_t k = 1; k <= half; ++k) {
        const double ak = static_cast<double>(k) * angle;
        value += cos_coef_[k] * std::cos(ak) + sin_coef_[k] * std::sin(ak);
    }
    return value;
}

double trig_interp(std::span<const double> samples, double y_star)
{
    return TrigInterpolant(samples)(y_star);
}

MacroField reconstruct_solution(const MacroField& F, const MicroField& G, double epsilon,
                                const SpatialMesh& coarse, const SpatialMesh& fine,
                                const std::optional<WallTraces>& walls)
{
    const std::size_t nx = coarse.size();
    if (F.size() != nx || G.nx() != nx) throw ConfigError("reconstruct: coarse shape mismatch");
    if (!(epsilon > 0.0)) throw ConfigError("reconstruct: epsilon must be positive");

    std::vector<TrigInterpolant> rows;
    rows.reserve(nx);
    for (std::size_t i = 0; i < nx; ++i) rows.emplace_back(G.row(i));

    std::array<std::optional<TrigInterpolant>, 2> wall_rows;
    if (walls) {
        for (int w = 0; w < 2; ++w) {
            if (!walls->micro[w].empty()) {
                if (walls->micro[w].size() != G.ny()) {
                    throw ConfigError("reconstruct: wall trace has wrong length");
                }
                wall_rows[w].emplace(walls->micro[w]);
            }
        }
    }
    auto wall_value = [&](int w, double y) {
        return walls->macro[w] + (wall_rows[w] ? (*wall_rows[w])(y) : 0.0);
    };

    const double dx = coarse.dx();
    MacroField out(fine.size());
    for (std::size_t p = 0; p < fine.size(); ++p) {
        const double x = fine.center(p);
        const double y = x / epsilon;
        const double s = x / dx - 0.5;
        if (s < 0.0) {
            const double near = F[0] + rows[0](y);
            if (!walls) {
                out[p] = near;
            } else {
                const double theta = x / (0.5 * dx);
                out[p] = (1.0 - theta) * wall_value(0, y) + theta * near;
            }
        } else if (s >= static_cast<double>(nx - 1)) {
            const double near = F[nx - 1] + rows[nx - 1](y);
            if (!walls) {
                out[p] = near;
            } else {
                const double theta = (1.0 - x) / (0.5 * dx);
                out[p] = (1.0 - theta) * wall_value(1, y) + theta * near;
            }
        } else {
            const auto i = static_cast<std::size_t>(s);
            const double theta = s - static_cast<double>(i);
            out[p] = (1.0 - theta) * (F[i] + rows[i](y)) + theta * (F[i + 1] + rows[i + 1](y));
        }
    }
    return out;
}

MacroField reconstruct_hmm(const MacroField& u0, const MicroField& u1, double epsilon,
                           const SpatialMesh& coarse, const SpatialMesh& fine,
                           const std::optional<std::array<std::vector<double>, 2>>& u1_walls)
{
    MicroField scaled = u1;
    for (double& v : scaled.data()) v *= epsilon;
    std::optional<WallTraces> walls;
    if (u1_walls) {
        walls.emplace();
        for (int w = 0; w < 2; ++w) {
            walls->micro[w] = (*u1_walls)[w];
            for (double& v : walls->micro[w]) v *= epsilon;
        }
    }
    return reconstruct_solution(u0, scaled, epsilon, coarse, fine, walls);
}

MacroField derivative_on_fine(const MacroField& u, const SpatialMesh& fine)
{
    if (u.size() != fine.size()) throw ConfigError("derivative_on_fine: mesh mismatch");
    if (fine.size() < 8) throw ConfigError("derivative_on_fine needs at least 8 cells");
    return MacroField(center_gradient(u, fine.dx()));
}

}  // namespace apmm
