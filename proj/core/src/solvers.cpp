#include "apmm/solvers.hpp"

#include <cmath>
#include <sstream>

#include "apmm/errors.hpp"
#include "apmm/reconstruct.hpp"

namespace apmm {

std::string_view to_string(Scheme scheme)
{
    switch (scheme) {
    case Scheme::ref: return "ref";
    case Scheme::hmm: return "hmm";
    case Scheme::emm: return "emm";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view text)
{
    if (text == "ref") return Scheme::ref;
    if (text == "hmm") return Scheme::hmm;
    if (text == "emm") return Scheme::emm;
    throw ConfigError("unknown scheme '" + std::string(text) + "' (expected ref, emm or hmm)");
}

SolverConfig default_solver_config(Scheme scheme, double epsilon, double t_end)
{
    SolverConfig cfg;
    cfg.scheme = scheme;
    cfg.dt_factor = scheme == Scheme::ref ? 0.05 : 0.2;
    cfg.epsilon = epsilon;
    cfg.t_end = t_end;
    return cfg;
}

void validate(const SolverConfig& cfg, const ProblemSpec& spec)
{
    if (!(cfg.dt_factor > 0.0)) throw ConfigError("dt_factor must be positive");
    const double limit = 1.0 / (2.0 * spec.coefficient.a_max);
    if (cfg.dt_factor > limit * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "dt_factor " << cfg.dt_factor << " exceeds the explicit stability limit 1/(2 a_max) = "
            << limit;
        throw ConfigError(msg.str());
    }
    if (!(cfg.t_end > 0.0)) throw ConfigError("t_end must be positive");
    make_spatial_mesh(cfg.n_x);
    if (cfg.scheme != Scheme::ref) {
        if (cfg.n_x < 5) throw ConfigError("HMM and EMM need at least 5 macro cells");
        make_cell_mesh(cfg.n_y);
    }
}

TimeGrid make_time_grid(double t_end, double dt)
{
    if (!(dt > 0.0) || !(t_end > 0.0)) throw ConfigError("time grid needs positive T and dt");
    const double ratio = t_end / dt;
    auto steps = static_cast<std::size_t>(std::ceil(ratio));
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
        steps = static_cast<std::size_t>(nearest);
    }
    if (steps == 0) steps = 1;
    return TimeGrid{steps, dt, t_end};
}

namespace {

// Step indices at which snapshots are taken: each requested time snaps to the nearest step.
std::vector<std::size_t> snapshot_steps(const TimeGrid& grid, const std::vector<double>& times)
{
    std::vector<std::size_t> out;
    for (double t : times) {
        double k = std::round(t / grid.dt);
        k = std::clamp(k, 0.0, static_cast<double>(grid.steps));
        out.push_back(static_cast<std::size_t>(k));
    }
    return out;
}

void check_finite(std::span<const double> values, const char* scheme, std::size_t step, double t)
{
    if (!all_finite(values)) {
        std::ostringstream msg;
        msg << scheme << ": non-finite values after step " << step << " (t = " << t
            << "); the time step likely violates the stability limit";
        throw NumericalError(msg.str());
    }
}

// Shared explicit Euler loop for 1D diffusion with face coefficients and zero walls.
std::size_t explicit_diffusion(const ProblemSpec& spec, const SpatialMesh& mesh,
                               std::span<const double> faces, const TimeGrid& grid,
                               const std::vector<double>& output_times, const char* name,
                               MacroField& u, std::vector<Snapshot>& snapshots,
                               const StepObserver& observer)
{
    const auto wanted = snapshot_steps(grid, output_times);
    auto record = [&](std::size_t step, double t) {
        for (std::size_t k : wanted) {
            if (k == step) snapshots.push_back(Snapshot{t, step, u, {}});
        }
    };
    record(0, 0.0);

    std::vector<double> rhs(u.size());
    double t = 0.0;
    for (std::size_t n = 0; n < grid.steps; ++n) {
        const double dt = grid.step_size(n);
        apply_diffusion_1d(u.values, faces, mesh.dx(), MacroBoundary{}, rhs);
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] += dt * (rhs[i] + spec.source(t, mesh.center(i)));
        }
        t = grid.time_after(n);
        check_finite(u.values, name, n + 1, t);
        record(n + 1, t);
        if (observer) observer(n + 1, t, u.values);
    }
    return grid.steps;
}

MacroField sample_initial(const ProblemSpec& spec, const SpatialMesh& mesh)
{
    MacroField u(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i) u[i] = spec.initial(mesh.center(i));
    return u;
}

}  // namespace

RefResult run_ref(const ProblemSpec& spec, const SolverConfig& cfg, const StepObserver& observer)
{
    validate(spec);
    validate(cfg, spec);
    RefResult result{make_spatial_mesh(cfg.n_x), {}, 0, {}, {}};
    const auto& mesh = result.mesh;
    if (static_cast<double>(cfg.n_x) < 16.0 / spec.epsilon) {
        std::ostringstream msg;
        msg << "REF mesh N_x = " << cfg.n_x << " under-resolves eps = " << spec.epsilon
            << " (recommended N_x >= " << std::ceil(16.0 / spec.epsilon) << ")";
        result.warnings.push_back(msg.str());
    }

    std::vector<double> faces(mesh.size() + 1);
    for (std::size_t i = 0; i <= mesh.size(); ++i) {
        faces[i] = spec.oscillating_coefficient(mesh.face(i));
        if (!(faces[i] > 0.0)) throw ConfigError("REF: coefficient is not positive");
    }

    result.u = sample_initial(spec, mesh);
    const auto grid = make_time_grid(cfg.t_end, cfg.dt());
    result.steps = explicit_diffusion(spec, mesh, faces, grid, cfg.output_times, "REF", result.u,
                                      result.snapshots, observer);
    return result;
}

HmmResult run_hmm(const ProblemSpec& spec, const SolverConfig& cfg, const HomogenizedData& hom)
{
    validate(spec);
    validate(cfg, spec);
    if (hom.xmesh.size() != cfg.n_x || hom.ymesh.size() != cfg.n_y) {
        throw ConfigError("HMM: homogenized data built on different meshes");
    }
    HmmResult result{hom.xmesh, sample_initial(spec, hom.xmesh), {}, {}, 0, {}};
    const auto grid = make_time_grid(cfg.t_end, cfg.dt());
    result.steps = explicit_diffusion(spec, hom.xmesh, hom.a0_faces, grid, cfg.output_times, "HMM",
                                      result.u0, result.snapshots, {});
    result.u1 = corrector_u1(hom, result.u0);
    result.u1_wall = wall_corrector_u1(hom, result.u0);
    return result;
}

EmmSolver::EmmSolver(const ProblemSpec& spec, const SolverConfig& cfg, const HomogenizedData& hom)
    : spec_(spec),
      cfg_(cfg),
      hom_(hom),
      tables_(sample_coefficient(spec.coefficient, hom.xmesh, hom.ymesh)),
      zero_mean_(tables_),
      shifted_(tables_, cfg.dt() / (spec.epsilon * spec.epsilon))
{
    validate(spec_);
    validate(cfg_, spec_);
    if (hom.xmesh.size() != cfg.n_x || hom.ymesh.size() != cfg.n_y) {
        throw ConfigError("EMM: homogenized data built on different meshes");
    }
}

EmmState EmmSolver::initial() const
{
    EmmState s = emm_initial(spec_, hom_.xmesh, hom_.ymesh);
    std::tie(s.F_wall, s.G_wall) = wall_data(s.u0);
    return s;
}

std::pair<MacroBoundary, MicroBoundary> EmmSolver::wall_data(const MacroField& u0) const
{
    const std::size_t ny = hom_.ymesh.size();
    if (spec_.bc_mode == BoundaryMode::dirichlet_homogeneous) {
        return {MacroBoundary{}, MicroBoundary{std::vector<double>(ny, 0.0), std::vector<double>(ny, 0.0)}};
    }
    // U = eps (u1(x, y) - u1(x, x/eps)) on the walls: G takes eps u1(wall, y), F the constant rest.
    const double eps = spec_.epsilon;
    auto u1 = wall_corrector_u1(hom_, u0);
    std::array<double, 2> diagonal{};
    for (int w = 0; w < 2; ++w) {
        diagonal[w] = trig_interp(u1[w], static_cast<double>(w) / eps);
        for (double& v : u1[w]) v *= eps;
    }
    return {MacroBoundary{-eps * diagonal[0], -eps * diagonal[1]},
            MicroBoundary{std::move(u1[0]), std::move(u1[1])}};
}

const CellSolver& EmmSolver::shifted_for(double dt, std::optional<CellSolver>& scratch) const
{
    const double c = dt / (spec_.epsilon * spec_.epsilon);
    if (c == shifted_.shift()) return shifted_;
    scratch.emplace(tables_, c);
    return *scratch;
}

EmmState EmmSolver::step(const EmmState& s, double dt) const
{
    const double eps = spec_.epsilon;
    const double decay = std::exp(-dt / (eps * eps));  // underflows to 0 for tiny eps
    const auto& t = tables_;
    const auto& xmesh = hom_.xmesh;
    std::optional<CellSolver> scratch;
    const CellSolver& implicit = shifted_for(dt, scratch);

    const MacroBoundary& F_wall = s.F_wall;
    const MicroBoundary& G_wall = s.G_wall;

    const MicroField BF = apply_B(s.F, t, F_wall);
    const MicroField BG = apply_B(s.G, t, G_wall);
    const MicroField DF = apply_D(s.F, t, F_wall);
    const MicroField DG = apply_D(s.G, t, G_wall);

    // G^{n+1} = (I - dt/eps^2 L)^{-1} [G^n + dt/eps (I - Pi)(B + eps D)(F^n + G^n)]
    MicroField forcing(s.G.nx(), s.G.ny());
    for (std::size_t k = 0; k < forcing.data().size(); ++k) {
        forcing.data()[k] = BF.data()[k] + BG.data()[k] + eps * (DF.data()[k] + DG.data()[k]);
    }
    forcing = remove_mean(forcing);
    MicroField rhs = s.G;
    for (std::size_t k = 0; k < rhs.data().size(); ++k) rhs.data()[k] += dt / eps * forcing.data()[k];

    EmmState next;
    next.G = remove_mean(implicit.shifted_solve(remove_mean(rhs)));

    next.u0 = s.u0;
    std::vector<double> diffusion(s.u0.size());
    apply_diffusion_1d(s.u0.values, hom_.a0_faces, xmesh.dx(), MacroBoundary{}, diffusion);
    for (std::size_t i = 0; i < next.u0.size(); ++i) {
        next.u0[i] += dt * (diffusion[i] + spec_.source(s.t, xmesh.center(i)));
    }
    std::tie(next.F_wall, next.G_wall) = wall_data(next.u0);

    // F^{n+1} = F + dt(1-e) Dbar F + dt e Pi D F + (dt e / eps) Pi B G^n + dt Pi D G^{n+1} + dt f
    const MacroField dbar = apply_Dbar(s.F, t, hom_, zero_mean_, F_wall);
    const MacroField pi_DF = project_pi(DF);
    const MacroField pi_BG = project_pi(BG);
    const MacroField pi_DG1 = project_pi(apply_D(next.G, t, next.G_wall));

    next.F = s.F;
    for (std::size_t i = 0; i < next.F.size(); ++i) {
        double incr = dt * (1.0 - decay) * dbar[i] + dt * decay * pi_DF[i] + dt * pi_DG1[i]
                      + dt * spec_.source(s.t, xmesh.center(i));
        if (decay != 0.0) incr += dt * decay / eps * pi_BG[i];
        next.F[i] += incr;
    }
    next.step = s.step + 1;
    next.t = s.t + dt;

    if (!all_finite(next.F.values) || !all_finite(next.G.data())) {
        std::ostringstream msg;
        msg << "EMM: non-finite values after step " << next.step << " (t = " << next.t
            << ", dt = " << dt << ", eps = " << eps << ")";
        throw NumericalError(msg.str());
    }
    return next;
}

MacroField EmmSolver::homogenized_step(const MacroField& F, double time, double dt) const
{
    const MacroField dbar = apply_Dbar(F, tables_, hom_, zero_mean_);
    MacroField out = F;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += dt * (dbar[i] + spec_.source(time, hom_.xmesh.center(i)));
    }
    return out;
}

EmmState emm_initial(const ProblemSpec& spec, const SpatialMesh& xmesh, const CellMesh& ymesh)
{
    EmmState s;
    s.F = sample_initial(spec, xmesh);
    s.G = MicroField(xmesh.size(), ymesh.size());
    s.u0 = s.F;
    return s;
}

EmmState emm_step(const EmmState& state, const EmmSolver& solver, double dt)
{
    return solver.step(state, dt);
}

EmmResult run_emm(const ProblemSpec& spec, const SolverConfig& cfg, const HomogenizedData& hom,
                  const std::function<void(const EmmState&)>& observer)
{
    const EmmSolver solver(spec, cfg, hom);
    const auto grid = make_time_grid(cfg.t_end, cfg.dt());
    const auto wanted = snapshot_steps(grid, cfg.output_times);

    EmmResult result;
    EmmState state = solver.initial();
    auto record = [&](const EmmState& s) {
        for (std::size_t k : wanted) {
            if (k == s.step) result.snapshots.push_back(Snapshot{s.t, s.step, s.F, s.G});
        }
    };
    record(state);
    for (std::size_t n = 0; n < grid.steps; ++n) {
        state = solver.step(state, grid.step_size(n));
        state.t = grid.time_after(n);
        record(state);
        if (observer) observer(state);
    }
    result.steps = grid.steps;
    result.final_state = std::move(state);
    return result;
}

}  // namespace apmm
