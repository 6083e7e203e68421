#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include <apmm/homogenization.hpp>
#include <apmm/operators.hpp>
#include <apmm/reconstruct.hpp>
#include <apmm/solvers.hpp>

using namespace apmm;

namespace {

MicroField wavy(std::size_t nx, std::size_t ny)
{
    MicroField u(nx, ny);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) u(i, j) = std::sin(0.1 * i + 0.7 * j);
    }
    return u;
}

void BM_CellSolveL(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto t = sample_coefficient(sine_coefficient(), make_spatial_mesh(64), make_cell_mesh(n));
    const CellSolver solver(t);
    const auto r = remove_mean(wavy(64, n));
    for (auto _ : state) benchmark::DoNotOptimize(solver.solve_L(r));
    state.SetItemsProcessed(state.iterations() * 64 * static_cast<int64_t>(n));
}
BENCHMARK(BM_CellSolveL)->Arg(16)->Arg(64)->Arg(256);

void BM_MixedOperator(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto t = sample_coefficient(sine_coefficient(), make_spatial_mesh(n), make_cell_mesh(16));
    const auto u = wavy(n, 16);
    for (auto _ : state) benchmark::DoNotOptimize(apply_B(u, t));
}
BENCHMARK(BM_MixedOperator)->Arg(64)->Arg(256)->Arg(1024);

void BM_HomogenizedOperator(benchmark::State& state)
{
    const auto t = sample_coefficient(sine_coefficient(), make_spatial_mesh(64), make_cell_mesh(16));
    const auto hom = build_homogenized(sine_coefficient(), t.xmesh, t.ymesh);
    const CellSolver solver(t);
    MacroField F(64);
    for (std::size_t i = 0; i < 64; ++i) F[i] = std::sin(2.0 * std::numbers::pi * t.xmesh.center(i));
    for (auto _ : state) benchmark::DoNotOptimize(apply_Dbar(F, t, hom, solver));
}
BENCHMARK(BM_HomogenizedOperator);

void BM_EmmStep(benchmark::State& state)
{
    const double eps = 1.0 / static_cast<double>(state.range(0));
    auto spec = model_problem(eps);
    const auto cfg = default_solver_config(Scheme::emm, eps, 1.0);
    const auto hom = build_homogenized(spec.coefficient, make_spatial_mesh(cfg.n_x), make_cell_mesh(cfg.n_y));
    const EmmSolver solver(spec, cfg, hom);
    const auto s0 = solver.initial();
    for (auto _ : state) benchmark::DoNotOptimize(solver.step(s0, cfg.dt()));
}
BENCHMARK(BM_EmmStep)->Arg(1)->Arg(100)->Arg(1000000);

void BM_RefRun(benchmark::State& state)
{
    auto spec = model_problem(0.1);
    spec.t_end = 1e-3;
    auto cfg = default_solver_config(Scheme::ref, 0.1, 1e-3);
    cfg.n_x = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_ref(spec, cfg));
}
BENCHMARK(BM_RefRun)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state)
{
    const auto coarse = make_spatial_mesh(64);
    const auto fine = make_spatial_mesh(static_cast<std::size_t>(state.range(0)));
    const auto G = remove_mean(wavy(64, 16));
    const MacroField F(64, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct_solution(F, G, 0.01, coarse, fine));
}
BENCHMARK(BM_Reconstruct)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
