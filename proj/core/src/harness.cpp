#include "apmm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "apmm/errors.hpp"
#include "apmm/homogenization.hpp"
#include "apmm/reconstruct.hpp"

namespace apmm {

ErrorNorms error_norms(const MacroField& u, const MacroField& v, const SpatialMesh& mesh)
{
    if (u.size() != v.size() || u.size() != mesh.size()) {
        throw ConfigError("error_norms: fields and mesh differ in size");
    }
    ErrorNorms n;
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = std::abs(u[i] - v[i]);
        n.linf = std::max(n.linf, d);
        sum += d * d;
    }
    n.l2 = std::sqrt(mesh.dx() * sum);
    return n;
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     std::initializer_list<std::string_view> header)
    : path_(path), out_(std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc))
{
    if (!*out_) throw ConfigError("cannot open " + path.string() + " for writing");
    bool first = true;
    for (auto h : header) {
        *out_ << (first ? "" : ",") << h;
        first = false;
    }
    *out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values)
{
    bool first = true;
    for (double v : values) {
        *out_ << (first ? "" : ",") << format_double(v);
        first = false;
    }
    *out_ << '\n';
    if (!*out_) throw NumericalError("write failed on " + path_.string());
}

void CsvWriter::row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

void CsvWriter::flush()
{
    out_->flush();
    if (!*out_) throw NumericalError("write failed on " + path_.string());
}

std::size_t default_ref_cells(double epsilon) { return epsilon >= 0.1 ? 1024 : 4096; }

namespace {

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double max_abs(const MacroField& u)
{
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

std::string eps_tag(double eps)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", eps);
    return buf;
}

}  // namespace

RegimeRecord run_regime(double epsilon, const Figure1Options& options, RegimeFields* fields)
{
    ProblemSpec spec = model_problem(epsilon);
    spec.t_end = options.t_end;
    spec.bc_mode = options.bc;

    RegimeRecord rec;
    rec.epsilon = epsilon;
    rec.nx = options.nx;
    rec.ny = options.ny;
    rec.ref_nx = options.ref_cells ? options.ref_cells(epsilon) : default_ref_cells(epsilon);
    rec.t_end = options.t_end;

    auto start = std::chrono::steady_clock::now();
    SolverConfig ref_cfg = default_solver_config(Scheme::ref, epsilon, options.t_end);
    ref_cfg.n_x = rec.ref_nx;
    const RefResult ref = run_ref(spec, ref_cfg);
    rec.wall_time_ref = seconds_since(start);
    const SpatialMesh& fine = ref.mesh;

    const SpatialMesh coarse = make_spatial_mesh(options.nx);
    const CellMesh cell = make_cell_mesh(options.ny);
    const HomogenizedData hom = build_homogenized(spec.coefficient, coarse, cell);

    start = std::chrono::steady_clock::now();
    SolverConfig emm_cfg = default_solver_config(Scheme::emm, epsilon, options.t_end);
    emm_cfg.n_x = options.nx;
    emm_cfg.n_y = options.ny;
    const EmmResult emm = run_emm(spec, emm_cfg, hom);
    rec.wall_time_emm = seconds_since(start);

    start = std::chrono::steady_clock::now();
    SolverConfig hmm_cfg = emm_cfg;
    hmm_cfg.scheme = Scheme::hmm;
    const HmmResult hmm = run_hmm(spec, hmm_cfg, hom);
    rec.wall_time_hmm = seconds_since(start);

    const auto& fs = emm.final_state;
    WallTraces emm_walls;
    emm_walls.macro = {fs.F_wall.left, fs.F_wall.right};
    emm_walls.micro = {fs.G_wall.left, fs.G_wall.right};

    RegimeFields local;
    RegimeFields& f = fields ? *fields : local;
    f.fine = fine;
    f.u_ref = ref.u;
    f.u_emm = reconstruct_solution(fs.F, fs.G, epsilon, coarse, fine, emm_walls);
    f.u_hmm = reconstruct_hmm(hmm.u0, hmm.u1, epsilon, coarse, fine, hmm.u1_wall);
    f.du_ref = derivative_on_fine(f.u_ref, fine);
    f.du_emm = derivative_on_fine(f.u_emm, fine);
    f.du_hmm = derivative_on_fine(f.u_hmm, fine);

    rec.emm_u = error_norms(f.u_ref, f.u_emm, fine);
    rec.hmm_u = error_norms(f.u_ref, f.u_hmm, fine);
    rec.emm_du = error_norms(f.du_ref, f.du_emm, fine);
    rec.hmm_du = error_norms(f.du_ref, f.du_hmm, fine);
    rec.ref_u_max = max_abs(f.u_ref);
    rec.ref_du_max = max_abs(f.du_ref);

    if (!options.out_dir.empty()) {
        const auto path = options.out_dir / ("figure1_eps" + eps_tag(epsilon) + ".csv");
        CsvWriter csv(path, {"x", "u_ref", "u_emm", "u_hmm", "du_ref", "du_emm", "du_hmm"});
        for (std::size_t p = 0; p < fine.size(); ++p) {
            csv.row({fine.center(p), f.u_ref[p], f.u_emm[p], f.u_hmm[p], f.du_ref[p], f.du_emm[p],
                     f.du_hmm[p]});
        }
        rec.csv_path = path.string();
    }
    return rec;
}

RunReport figure1_experiment(const Figure1Options& options)
{
    RunReport report;
    if (options.eps_list.empty()) return report;
    if (!options.out_dir.empty()) std::filesystem::create_directories(options.out_dir);

    std::unique_ptr<CsvWriter> summary;
    if (!options.out_dir.empty()) {
        const auto path = options.out_dir / "figure1_summary.csv";
        summary = std::make_unique<CsvWriter>(
            path, std::initializer_list<std::string_view>{
                      "epsilon", "nx", "ny", "ref_nx", "t_end", "emm_u_inf", "emm_u_l2",
                      "emm_du_inf", "emm_du_l2", "hmm_u_inf", "hmm_u_l2", "hmm_du_inf",
                      "hmm_du_l2", "ref_u_max", "ref_du_max"});
        report.summary_path = path.string();
    }
    for (double eps : options.eps_list) {
        RegimeRecord rec = run_regime(eps, options);
        if (summary) {
            // Flushed row by row so completed regimes survive a later failure.
            summary->row({rec.epsilon, static_cast<double>(rec.nx), static_cast<double>(rec.ny),
                          static_cast<double>(rec.ref_nx), rec.t_end, rec.emm_u.linf, rec.emm_u.l2,
                          rec.emm_du.linf, rec.emm_du.l2, rec.hmm_u.linf, rec.hmm_u.l2,
                          rec.hmm_du.linf, rec.hmm_du.l2, rec.ref_u_max, rec.ref_du_max});
            summary->flush();
        }
        report.regimes.push_back(std::move(rec));
    }
    return report;
}

std::vector<ApRecord> ap_degeneracy_study(const ApStudyOptions& options)
{
    const SpatialMesh xmesh = make_spatial_mesh(options.nx);
    const CellMesh ymesh = make_cell_mesh(options.ny);
    std::vector<ApRecord> out;
    for (double eps : options.eps_list) {
        ProblemSpec spec = model_problem(eps);
        SolverConfig cfg = default_solver_config(Scheme::emm, eps, 1.0);
        cfg.n_x = options.nx;
        cfg.n_y = options.ny;
        cfg.dt_factor = options.dt_factor;
        const HomogenizedData hom = build_homogenized(spec.coefficient, xmesh, ymesh);
        const EmmSolver solver(spec, cfg, hom);
        const double dt = cfg.dt();

        EmmState state = solver.initial();
        MacroField hom_F = state.F;
        for (std::size_t n = 0; n < options.steps; ++n) {
            hom_F = solver.homogenized_step(hom_F, state.t, dt);
            state = solver.step(state, dt);
        }
        double dev = 0.0;
        for (std::size_t i = 0; i < hom_F.size(); ++i) {
            dev = std::max(dev, std::abs(state.F[i] - hom_F[i]));
        }
        out.push_back({eps, dev});
    }
    return out;
}

void write_ap_csv(const std::filesystem::path& path, const std::vector<ApRecord>& records)
{
    CsvWriter csv(path, {"epsilon", "deviation"});
    for (const auto& r : records) csv.row({r.epsilon, r.deviation});
}

double least_squares_slope(const std::vector<double>& h, const std::vector<double>& errors)
{
    if (h.size() != errors.size() || h.size() < 2) {
        throw ConfigError("least_squares_slope needs matching samples, at least 2");
    }
    const double n = static_cast<double>(h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (!(h[k] > 0.0) || !(errors[k] > 0.0)) {
            throw NumericalError("least_squares_slope: nonpositive sample");
        }
        const double x = std::log(h[k]);
        const double y = std::log(errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceResult spatial_convergence(Scheme scheme, const std::vector<std::size_t>& nx_levels,
                                      double t_end)
{
    if (nx_levels.size() < 3) throw ConfigError("convergence study needs at least 3 levels");
    if (scheme == Scheme::emm) {
        throw ConfigError("spatial convergence is defined for ref and hmm; use the temporal study for emm");
    }
    ProblemSpec spec = model_problem(1.0);
    spec.t_end = t_end;
    double a_eff = 1.0;
    if (scheme == Scheme::ref) {
        spec.coefficient = constant_coefficient(1.0);
    } else {
        a_eff = std::sqrt(0.21);
    }
    const double k2 = 4.0 * std::numbers::pi * std::numbers::pi;
    const double amplitude = std::exp(-a_eff * k2 * t_end);

    ConvergenceResult result;
    result.label = std::string(to_string(scheme)) + " spatial";
    for (std::size_t nx : nx_levels) {
        SolverConfig cfg = default_solver_config(scheme, 1.0, t_end);
        cfg.n_x = nx;
        MacroField u;
        SpatialMesh mesh = make_spatial_mesh(nx);
        if (scheme == Scheme::ref) {
            u = run_ref(spec, cfg).u;
        } else {
            const HomogenizedData hom = build_homogenized(spec.coefficient, mesh, make_cell_mesh(cfg.n_y));
            u = run_hmm(spec, cfg, hom).u0;
        }
        double err = 0.0;
        for (std::size_t i = 0; i < nx; ++i) {
            const double exact = amplitude * std::sin(2.0 * std::numbers::pi * mesh.center(i));
            err = std::max(err, std::abs(u[i] - exact));
        }
        result.h.push_back(mesh.dx());
        result.errors.push_back(err);
    }
    result.order = least_squares_slope(result.h, result.errors);
    return result;
}

ConvergenceResult temporal_convergence_emm(double epsilon, const std::vector<double>& dt_factors,
                                           std::size_t nx, std::size_t ny, double t_end)
{
    if (dt_factors.size() < 4) {
        throw ConfigError("temporal self-convergence needs at least 4 time steps (3 differences)");
    }
    ProblemSpec spec = model_problem(epsilon);
    spec.t_end = t_end;
    const HomogenizedData hom =
        build_homogenized(spec.coefficient, make_spatial_mesh(nx), make_cell_mesh(ny));

    std::vector<MacroField> finals;
    std::vector<double> dts;
    for (double factor : dt_factors) {
        SolverConfig cfg = default_solver_config(Scheme::emm, epsilon, t_end);
        cfg.n_x = nx;
        cfg.n_y = ny;
        cfg.dt_factor = factor;
        finals.push_back(run_emm(spec, cfg, hom).final_state.F);
        dts.push_back(cfg.dt());
    }
    ConvergenceResult result;
    result.label = "emm temporal";
    for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
        double diff = 0.0;
        for (std::size_t i = 0; i < nx; ++i) {
            diff = std::max(diff, std::abs(finals[k][i] - finals[k + 1][i]));
        }
        result.h.push_back(dts[k]);
        result.errors.push_back(diff);
    }
    result.order = least_squares_slope(result.h, result.errors);
    return result;
}

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceResult& result)
{
    CsvWriter csv(path, {"h", "error"});
    for (std::size_t k = 0; k < result.h.size(); ++k) csv.row({result.h[k], result.errors[k]});
}

}  // namespace apmm
