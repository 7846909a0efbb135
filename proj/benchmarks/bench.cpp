#include <benchmark/benchmark.h>

#include <shadowlab/construction.hpp>
#include <shadowlab/distributions.hpp>
#include <shadowlab/lp.hpp>
#include <shadowlab/rng.hpp>
#include <shadowlab/shadow.hpp>
#include <shadowlab/smoothed2d.hpp>

using namespace shadowlab;

namespace {

HPolytope instance(int k) {
    return shift_and_normalize(build_primal({k}), center_point(k));
}

void bm_support_lp_cold(benchmark::State& state) {
    const HPolytope h = instance(6);
    const Plane2D plane = Plane2D::coordinate_frame(h.dim());
    double angle = 0.0;
    for (auto _ : state) {
        angle += 0.01;
        benchmark::DoNotOptimize(support_point(h.A, plane.direction(angle)));
    }
}
BENCHMARK(bm_support_lp_cold);

void bm_support_lp_warm(benchmark::State& state) {
    const HPolytope h = instance(6);
    const Plane2D plane = Plane2D::coordinate_frame(h.dim());
    ActiveSetSolver solver(h.A, h.rhs);
    solver.solve(plane.direction(0.0));
    double angle = 0.0;
    for (auto _ : state) {
        angle += 0.01;
        benchmark::DoNotOptimize(solver.reoptimize(plane.direction(angle)));
    }
}
BENCHMARK(bm_support_lp_warm);

void bm_sweep_k6(benchmark::State& state) {
    const HPolytope h = instance(6);
    const Plane2D plane = Plane2D::coordinate_frame(h.dim());
    SweepConfig cfg;
    cfg.num_angles = 1 << 11;
    for (auto _ : state) benchmark::DoNotOptimize(sweep_count(h, plane, cfg).count);
}
BENCHMARK(bm_sweep_k6)->Unit(benchmark::kMillisecond);

void bm_hull_10k(benchmark::State& state) {
    SeededRng rng(1);
    std::vector<Vector2> pts;
    pts.reserve(10000);
    for (int i = 0; i < 10000; ++i)
        pts.emplace_back(rng.next_gaussian(), rng.next_gaussian());
    for (auto _ : state)
        benchmark::DoNotOptimize(convex_hull_2d(pts).vertices.size());
}
BENCHMARK(bm_hull_10k)->Unit(benchmark::kMillisecond);

void bm_lg_sampler(benchmark::State& state) {
    const LaplaceGaussianSpec spec{Vector::Zero(10), 1.0, 2.0};
    SeededRng rng(2);
    for (auto _ : state) benchmark::DoNotOptimize(sample_laplace_gaussian(spec, rng));
}
BENCHMARK(bm_lg_sampler);

}  // namespace

BENCHMARK_MAIN();
