#include <benchmark/benchmark.h>

#include "polylab/gallery.hpp"
#include "polylab/geometry.hpp"
#include "polylab/solvers.hpp"
#include "polylab/sweep.hpp"

using namespace polylab;

namespace {

sweep::Policy policy_of(const benchmark::State& st)
{
    return st.range(0) == 0 ? sweep::Policy::serial : sweep::Policy::parallel;
}

void BM_curvature_grid(benchmark::State& st)
{
    const auto e = gallery(6);
    const auto pts = sweep::grid_points(0.05, 4, 64, -3, 3, 64);
    for (auto _ : st) {
        auto v = sweep::map_points(pts, [&](double x, double y) { return gauss_curvature(*e.potential, x, y); },
                                   policy_of(st));
        benchmark::DoNotOptimize(v.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(pts.size()));
}

void BM_halfplane_solve(benchmark::State& st)
{
    BoundaryTrace step = BoundaryTrace::from_function([](double s) { return s > 0 ? 1.0 : 0.0; });
    step.breaks = {0.0};
    std::vector<QueryPoint> pts;
    for (const auto& p : sweep::grid_points(0.1, 3, 20, -3, 3, 20)) pts.push_back({p[0], p[1]});
    for (auto _ : st) {
        auto v = solve_points(pts, [&](double x, double y) { return halfplane_solve(step, x, y, 1e-9); }, policy_of(st));
        benchmark::DoNotOptimize(v.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(pts.size()));
}

void BM_series_eval(benchmark::State& st)
{
    const auto one = BoundaryTrace::from_function([](double t) { return 1 + 0.5 * std::cos(3 * t); });
    const auto sol = series_solve_quad({one, one, one}, 60);
    std::vector<QueryPoint> pts;
    for (const auto& p : sweep::grid_points(0.05, 0.95, 64, -0.95, 0.95, 64)) pts.push_back({p[0], p[1]});
    for (auto _ : st) {
        auto v = solve_points(pts, [&](double x, double y) { return sol.eval(x, y); }, policy_of(st));
        benchmark::DoNotOptimize(v.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(pts.size()));
}

}  // namespace

// Arg 0: serial reference, Arg 1: OpenMP
BENCHMARK(BM_curvature_grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_halfplane_solve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_series_eval)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
