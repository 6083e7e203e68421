#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <apmm/config.hpp>
#include <apmm/errors.hpp>
#include <apmm/harness.hpp>
#include <apmm/homogenization.hpp>
#include <apmm/solvers.hpp>

namespace {

using namespace apmm;

void write_outputs(const RunConfig& rc, const SolverConfig& sc, const SpatialMesh& mesh,
                   const CellMesh& ymesh, const MacroField& F, const MicroField* G,
                   std::size_t steps, double seconds)
{
    {
        CsvWriter csv(rc.output + "_F.csv", {"x", "F"});
        for (std::size_t i = 0; i < mesh.size(); ++i) csv.row({mesh.center(i), F[i]});
    }
    {
        CsvWriter csv(rc.output + "_G.csv", {"x", "y", "G"});
        if (G) {
            for (std::size_t i = 0; i < G->nx(); ++i) {
                for (std::size_t j = 0; j < G->ny(); ++j) csv.row({mesh.center(i), ymesh.node(j), (*G)(i, j)});
            }
        }
    }
    std::ofstream meta(rc.output + "_meta.txt", std::ios::binary);
    if (!meta) throw ConfigError("cannot open " + rc.output + "_meta.txt for writing");
    meta << "scheme=" << to_string(rc.scheme) << '\n'
         << "epsilon=" << format_double(rc.epsilon) << '\n'
         << "nx=" << rc.nx << '\n'
         << "ny=" << rc.ny << '\n'
         << "t_end=" << format_double(rc.t_end) << '\n'
         << "coeff=" << rc.coeff << '\n'
         << "bc=" << to_string(rc.bc) << '\n'
         << "dt_factor=" << format_double(sc.dt_factor) << '\n'
         << "dt=" << format_double(sc.dt()) << '\n'
         << "steps=" << steps << '\n'
         << "output=" << rc.output << '\n'
         << "wall_time=" << format_double(seconds) << '\n';
}

int cmd_run(const std::string& path)
{
    const RunConfig rc = load_config(path);
    const ProblemSpec spec = make_problem(rc);
    const SolverConfig sc = make_solver_config(rc);
    validate(sc, spec);

    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    const CellMesh ymesh = make_cell_mesh(rc.ny);
    switch (rc.scheme) {
    case Scheme::ref: {
        const auto res = run_ref(spec, sc);
        for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
        write_outputs(rc, sc, res.mesh, ymesh, res.u, nullptr, res.steps, elapsed());
        break;
    }
    case Scheme::hmm: {
        const auto hom = build_homogenized(spec.coefficient, make_spatial_mesh(rc.nx), ymesh);
        const auto res = run_hmm(spec, sc, hom);
        MicroField g = res.u1;
        for (double& v : g.data()) v *= rc.epsilon;
        write_outputs(rc, sc, res.mesh, ymesh, res.u0, &g, res.steps, elapsed());
        break;
    }
    case Scheme::emm: {
        const auto hom = build_homogenized(spec.coefficient, make_spatial_mesh(rc.nx), ymesh);
        const auto res = run_emm(spec, sc, hom);
        write_outputs(rc, sc, hom.xmesh, ymesh, res.final_state.F, &res.final_state.G, res.steps,
                      elapsed());
        break;
    }
    }
    std::cout << "wrote " << rc.output << "_F.csv, " << rc.output << "_G.csv, " << rc.output
              << "_meta.txt\n";
    return 0;
}

int cmd_figure1(const Figure1Options& opts)
{
    const auto report = figure1_experiment(opts);
    std::printf("%-8s %-8s %-12s %-12s %-12s %-12s\n", "eps", "ref_nx", "emm_u_inf", "hmm_u_inf",
                "emm_du_inf", "hmm_du_inf");
    for (const auto& r : report.regimes) {
        std::printf("%-8g %-8zu %-12.4e %-12.4e %-12.4e %-12.4e\n", r.epsilon, r.ref_nx, r.emm_u.linf,
                    r.hmm_u.linf, r.emm_du.linf, r.hmm_du.linf);
    }
    if (!report.summary_path.empty()) std::cout << "summary: " << report.summary_path << '\n';
    return 0;
}

int cmd_ap_study(const ApStudyOptions& opts, const std::string& out)
{
    const auto recs = ap_degeneracy_study(opts);
    std::printf("%-10s %s\n", "eps", "deviation");
    for (const auto& r : recs) std::printf("%-10g %.6e\n", r.epsilon, r.deviation);
    if (!out.empty()) write_ap_csv(out, recs);
    return 0;
}

int cmd_converge(const std::string& scheme_text, double t_end, double eps, const std::string& out)
{
    const Scheme scheme = parse_scheme(scheme_text);
    const ConvergenceResult res = scheme == Scheme::emm
        ? temporal_convergence_emm(eps, {0.2, 0.1, 0.05, 0.025, 0.0125}, 64, 16, t_end)
        : spatial_convergence(scheme, {16, 32, 64, 128}, t_end);
    std::printf("%s\n%-12s %s\n", res.label.c_str(), "h", "error");
    for (std::size_t k = 0; k < res.h.size(); ++k) std::printf("%-12.4e %.6e\n", res.h[k], res.errors[k]);
    std::printf("order %.4f\n", res.order);
    if (!out.empty()) write_convergence_csv(out, res);
    return 0;
}

int cmd_cell(const std::string& coeff, double x, std::size_t ny, const std::string& out)
{
    const auto a = parse_coefficient(coeff);
    const auto ymesh = make_cell_mesh(ny);
    const double a0 = harmonic_a0(a, x, ymesh);
    const auto chi = solve_cell_problem(a, x, ymesh);
    std::cout << "a0=" << format_double(a0) << '\n';
    if (out.empty()) {
        std::cout << "y,chi\n";
        for (std::size_t j = 0; j < ny; ++j) std::cout << format_double(ymesh.node(j)) << ',' << format_double(chi[j]) << '\n';
    } else {
        CsvWriter csv(out, {"y", "chi"});
        for (std::size_t j = 0; j < ny; ++j) csv.row({ymesh.node(j), chi[j]});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Asymptotic-preserving micro-macro solver for oscillatory diffusion"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run one solver from a key=value config file");
    std::string config_path;
    run->add_option("--config", config_path, "Config file")->required();

    auto* fig = app.add_subcommand("figure1", "REF/EMM/HMM regime comparison");
    Figure1Options fig_opts;
    std::string fig_out = "figure1_out";
    std::string fig_bc = "dirichlet_corrector";
    fig->add_option("--t-end", fig_opts.t_end, "Final time")->capture_default_str();
    fig->add_option("--out", fig_out, "Output directory")->capture_default_str();
    fig->add_option("--eps", fig_opts.eps_list, "Epsilon values")->capture_default_str();
    fig->add_option("--nx", fig_opts.nx, "Macro cells")->capture_default_str();
    fig->add_option("--ny", fig_opts.ny, "Cell points")->capture_default_str();
    fig->add_option("--bc", fig_bc, "dirichlet_corrector or dirichlet_homogeneous")->capture_default_str();

    auto* ap = app.add_subcommand("ap-study", "Distance between EMM and the homogenized scheme as eps -> 0");
    ApStudyOptions ap_opts;
    std::string ap_out = "ap_study.csv";
    ap->add_option("--steps", ap_opts.steps, "Time steps")->capture_default_str();
    ap->add_option("--out", ap_out, "CSV output (empty to skip)")->capture_default_str();

    auto* conv = app.add_subcommand("converge", "Convergence order study");
    std::string conv_scheme;
    double conv_t = 0.02;
    double conv_eps = 0.5;
    std::string conv_out;
    conv->add_option("--scheme", conv_scheme, "ref, hmm (spatial) or emm (temporal)")->required();
    conv->add_option("--t-end", conv_t, "Final time")->capture_default_str();
    conv->add_option("--eps", conv_eps, "Epsilon for the emm study")->capture_default_str();
    conv->add_option("--out", conv_out, "CSV output");

    auto* cell = app.add_subcommand("cell", "Print a0 and dump the cell corrector");
    std::string cell_coeff = "sine";
    double cell_x = 0.5;
    std::size_t cell_ny = 16;
    std::string cell_out;
    cell->add_option("--coeff", cell_coeff, "sine or constant:<value>")->capture_default_str();
    cell->add_option("--x", cell_x, "Macro position")->capture_default_str();
    cell->add_option("--ny", cell_ny, "Cell points")->capture_default_str();
    cell->add_option("--out", cell_out, "CSV output (stdout if empty)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) return cmd_run(config_path);
        if (*fig) {
            fig_opts.out_dir = fig_out;
            fig_opts.bc = parse_boundary_mode(fig_bc);
            return cmd_figure1(fig_opts);
        }
        if (*ap) return cmd_ap_study(ap_opts, ap_out);
        if (*conv) return cmd_converge(conv_scheme, conv_t, conv_eps, conv_out);
        if (*cell) return cmd_cell(cell_coeff, cell_x, cell_ny, cell_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
