#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "apmm/fields.hpp"
#include "apmm/mesh.hpp"

namespace apmm {

/// Balanced trigonometric interpolant of N (even) samples on y_j = j/N.
///
/// p(y) = a_0 + sum_{k<N/2} (a_k cos 2 pi k y + b_k sin 2 pi k y) + a_{N/2} cos(pi N y);
/// the Nyquist mode is kept as a pure cosine so real samples give a real interpolant.
class TrigInterpolant {
public:
    explicit TrigInterpolant(std::span<const double> samples);

    double operator()(double y) const;

private:
    std::vector<double> cos_coef_;  // a_0 .. a_{N/2}
    std::vector<double> sin_coef_;  // b_0 .. b_{N/2}, ends unused
};

double trig_interp(std::span<const double> samples, double y_star);

/// Wall states used to fill the half cells between a wall and the first/last center.
struct WallTraces {
    std::array<double, 2> macro{0.0, 0.0};
    std::array<std::vector<double>, 2> micro;
};

/// u(x) ~ blend of F(x_i) + G(x_i, x/eps) and F(x_{i+1}) + G(x_{i+1}, x/eps), linear in x.
///
/// Between a wall and the nearest center the blend uses the wall trace when given;
/// otherwise the nearest center's value is held constant.
MacroField reconstruct_solution(const MacroField& F, const MicroField& G, double epsilon,
                                const SpatialMesh& coarse, const SpatialMesh& fine,
                                const std::optional<WallTraces>& walls = std::nullopt);

/// Same reconstruction with (F, G) = (u0, eps * u1); `u1_walls` are the wall traces of u1
/// (u0 vanishes on the walls).
MacroField reconstruct_hmm(const MacroField& u0, const MicroField& u1, double epsilon,
                           const SpatialMesh& coarse, const SpatialMesh& fine,
                           const std::optional<std::array<std::vector<double>, 2>>& u1_walls
                           = std::nullopt);

/// Centered second-order differences, one-sided second order in the two end cells.
MacroField derivative_on_fine(const MacroField& u, const SpatialMesh& fine);

}  // namespace apmm
