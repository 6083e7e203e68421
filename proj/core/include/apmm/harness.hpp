#pragma once

#include <filesystem>
#include <functional>
#include <initializer_list>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "apmm/fields.hpp"
#include "apmm/mesh.hpp"
#include "apmm/problem.hpp"
#include "apmm/solvers.hpp"

namespace apmm {

struct ErrorNorms {
    double linf = 0.0;
    double l2 = 0.0;  // sqrt(dx * sum (u - v)^2)
};

ErrorNorms error_norms(const MacroField& u, const MacroField& v, const SpatialMesh& mesh);

/// Formats a double with 17 significant digits (round-trippable, locale independent).
std::string format_double(double v);

/// Comma-separated output with a header row and `\n` line endings.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);
    void row(std::initializer_list<double> values);
    void row(const std::vector<double>& values);
    void flush();

private:
    std::filesystem::path path_;
    std::unique_ptr<std::ofstream> out_;
};

struct Figure1Options {
    std::vector<double> eps_list{1.0, 0.1, 0.01};
    double t_end = 1.0;
    std::filesystem::path out_dir;  // empty: no files written
    std::size_t nx = 64;
    std::size_t ny = 16;
    BoundaryMode bc = BoundaryMode::dirichlet_corrector;
    /// REF resolution per epsilon; defaults to 1024 for eps >= 0.1 and 4096 below.
    std::function<std::size_t(double)> ref_cells;
};

std::size_t default_ref_cells(double epsilon);

struct RegimeRecord {
    double epsilon = 0.0;
    std::size_t nx = 0, ny = 0, ref_nx = 0;
    double t_end = 0.0;
    ErrorNorms emm_u, emm_du, hmm_u, hmm_du;
    double ref_u_max = 0.0;
    double ref_du_max = 0.0;
    double wall_time_ref = 0.0, wall_time_emm = 0.0, wall_time_hmm = 0.0;
    std::string csv_path;
};

/// REF, EMM and HMM solutions reconstructed on the REF mesh, with derivatives.
struct RegimeFields {
    SpatialMesh fine{4};
    MacroField u_ref, u_emm, u_hmm;
    MacroField du_ref, du_emm, du_hmm;
};

struct RunReport {
    std::vector<RegimeRecord> regimes;
    std::string summary_path;
};

/// Runs the three solvers for one epsilon and compares EMM/HMM against REF on the REF mesh.
RegimeRecord run_regime(double epsilon, const Figure1Options& options,
                        RegimeFields* fields = nullptr);

/// One regime per epsilon, reported in the order given. Writes figure1_eps<eps>.csv
/// (x,u_ref,u_emm,u_hmm,du_ref,du_emm,du_hmm) and figure1_summary.csv when out_dir is set.
RunReport figure1_experiment(const Figure1Options& options);

struct ApStudyOptions {
    std::vector<double> eps_list{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    std::size_t steps = 100;
    std::size_t nx = 64;
    std::size_t ny = 16;
    double dt_factor = 0.2;
};

struct ApRecord {
    double epsilon = 0.0;
    double deviation = 0.0;  // max |F_EMM - F_hom| after `steps` steps
};

/// Distance between EMM and the explicit homogenized scheme (apply_Dbar) after a fixed
/// number of steps of the same size, on the model problem.
std::vector<ApRecord> ap_degeneracy_study(const ApStudyOptions& options);
void write_ap_csv(const std::filesystem::path& path, const std::vector<ApRecord>& records);

struct ConvergenceResult {
    std::string label;
    std::vector<double> h;       // dx (spatial) or dt (temporal)
    std::vector<double> errors;
    double order = 0.0;          // least-squares slope of log(error) vs log(h)
};

double least_squares_slope(const std::vector<double>& h, const std::vector<double>& errors);

/// REF with a = 1 or HMM with the sine coefficient against the analytic
/// exp(-a 4 pi^2 T) sin(2 pi x) solution, max norm over cell centers.
ConvergenceResult spatial_convergence(Scheme scheme, const std::vector<std::size_t>& nx_levels,
                                      double t_end);

/// EMM self-convergence in dt at fixed meshes: the error of level k is the max-norm
/// distance between F(T) at dt_k and at dt_{k+1}. Needs at least 4 dt factors (3 errors).
ConvergenceResult temporal_convergence_emm(double epsilon, const std::vector<double>& dt_factors,
                                           std::size_t nx, std::size_t ny, double t_end);

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceResult& result);

}  // namespace apmm
