#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apmm/fields.hpp"
#include "apmm/homogenization.hpp"
#include "apmm/mesh.hpp"
#include "apmm/operators.hpp"
#include "apmm/problem.hpp"

namespace apmm {

enum class Scheme { ref, hmm, emm };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);

struct SolverConfig {
    Scheme scheme = Scheme::emm;
    double dt_factor = 0.2;  // dt = dt_factor * dx^2
    std::size_t n_x = 64;
    std::size_t n_y = 16;
    double t_end = 1.0;
    double epsilon = 1.0;
    std::vector<double> output_times;

    double dx() const { return 1.0 / static_cast<double>(n_x); }
    double dt() const { return dt_factor * dx() * dx(); }
};

/// dt_factor 0.05 for REF, 0.2 for HMM and EMM; N_x = 64, N_y = 16.
SolverConfig default_solver_config(Scheme scheme, double epsilon, double t_end);

/// Checks dt_factor against the explicit x-diffusion limit 1/(2 a_max) and mesh sizes.
void validate(const SolverConfig& cfg, const ProblemSpec& spec);

/// ceil(T/dt) steps, the last one shortened to land exactly on T.
struct TimeGrid {
    std::size_t steps = 0;
    double dt = 0.0;
    double t_end = 0.0;

    double step_size(std::size_t n) const { return n + 1 == steps ? t_end - static_cast<double>(n) * dt : dt; }
    double time_after(std::size_t n) const { return n + 1 == steps ? t_end : static_cast<double>(n + 1) * dt; }
};

TimeGrid make_time_grid(double t_end, double dt);

struct Snapshot {
    double t = 0.0;
    std::size_t step = 0;
    MacroField macro;
    MicroField micro;
};

/// Called after every completed step with (step count, time, macro values).
using StepObserver = std::function<void(std::size_t, double, std::span<const double>)>;

struct RefResult {
    SpatialMesh mesh;
    MacroField u;
    std::size_t steps = 0;
    std::vector<Snapshot> snapshots;
    std::vector<std::string> warnings;
};

/// Explicit Euler, flux form, a(x, x/eps) evaluated at the interfaces, homogeneous Dirichlet.
RefResult run_ref(const ProblemSpec& spec, const SolverConfig& cfg,
                  const StepObserver& observer = {});

struct HmmResult {
    SpatialMesh mesh;
    MacroField u0;
    MicroField u1;                           // corrector at T
    std::array<std::vector<double>, 2> u1_wall;  // corrector traces at x = 0, 1
    std::size_t steps = 0;
    std::vector<Snapshot> snapshots;
};

/// Explicit Euler for du0/dt = d/dx(a0 du0/dx) + f, then u1 = chi du0/dx at T.
HmmResult run_hmm(const ProblemSpec& spec, const SolverConfig& cfg, const HomogenizedData& hom);

struct EmmState {
    MacroField F;
    MicroField G;
    /// Homogenized solution advanced alongside (F, G); its gradient feeds the corrector
    /// u1 = chi du0/dx in the wall data. Deriving u1 from F instead turns the wall
    /// condition into a feedback U = eps chi dU/dx, which is unstable for eps ~ 1.
    MacroField u0;
    double t = 0.0;
    std::size_t step = 0;
    MacroBoundary F_wall;  // wall values of F at time t
    MicroBoundary G_wall;  // wall traces of G at time t
};

/// Micro-macro AP integrator; holds the coefficient tables and cached cell factorizations.
class EmmSolver {
public:
    EmmSolver(const ProblemSpec& spec, const SolverConfig& cfg, const HomogenizedData& hom);

    const CoefficientTables& tables() const { return tables_; }
    const HomogenizedData& homogenized() const { return hom_; }
    const CellSolver& cell_solver() const { return zero_mean_; }

    /// F = u0 = g at the centers, G = 0, t = 0.
    EmmState initial() const;

    /// Wall data for F and G from the homogenized solution u0 under the active boundary mode.
    std::pair<MacroBoundary, MicroBoundary> wall_data(const MacroField& u0) const;

    /// One step of size dt: G first (implicit in L), then F using the new G.
    EmmState step(const EmmState& state, double dt) const;

    /// Homogenized explicit step F + dt Dbar F + dt f with homogeneous walls.
    MacroField homogenized_step(const MacroField& F, double t, double dt) const;

private:
    const CellSolver& shifted_for(double dt, std::optional<CellSolver>& scratch) const;

    ProblemSpec spec_;
    SolverConfig cfg_;
    HomogenizedData hom_;
    CoefficientTables tables_;
    CellSolver zero_mean_;
    CellSolver shifted_;  // I - (dt/eps^2) L for the configured dt
};

EmmState emm_initial(const ProblemSpec& spec, const SpatialMesh& xmesh, const CellMesh& ymesh);
EmmState emm_step(const EmmState& state, const EmmSolver& solver, double dt);

struct EmmResult {
    EmmState final_state;
    std::size_t steps = 0;
    std::vector<Snapshot> snapshots;
};

EmmResult run_emm(const ProblemSpec& spec, const SolverConfig& cfg, const HomogenizedData& hom,
                  const std::function<void(const EmmState&)>& observer = {});

}  // namespace apmm
