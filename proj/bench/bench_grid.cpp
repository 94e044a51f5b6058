// Serial vs OpenMP evaluation of screen grids.

#include "sorkin/kappa.hpp"

#include <benchmark/benchmark.h>

using namespace sorkin;

namespace {

struct Fixture
{
    GaussSum classical{2}, nonclassical{2};

    Fixture()
    {
        SpdcParams p;
        p.sigma = 11.4e-3;
        p.omega = omega_from_negativity(p.sigma, 2.0);
        p.lambda = 8.1e-4;
        p.T = 600.0;
        p.tau = 600.0;
        const auto a = triple_slit_amplitudes(p, SlitArray::triple_slit(0.1, 0.03));
        classical = a.classical;
        nonclassical = a.nonclassical;
    }
};

const Fixture& fixture()
{
    static const Fixture f;
    return f;
}

PointSet surface(int n)
{
    const auto xs = PointSet::linspace(-4.0, 4.0, n);
    return PointSet::surface(xs, xs);
}

void BM_EvaluateSerial(benchmark::State& state)
{
    const auto pts = surface(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_serial(fixture().nonclassical, pts, 0.0));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}

void BM_EvaluateParallel(benchmark::State& state)
{
    const auto pts = surface(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_parallel(fixture().nonclassical, pts, 0.0));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}

void BM_KappaSurface(benchmark::State& state)
{
    const auto pts = surface(static_cast<int>(state.range(0)));
    const Exec exec = state.range(1) ? Exec::parallel : Exec::serial;
    for (auto _ : state)
        benchmark::DoNotOptimize(kappa_exact(fixture().classical, fixture().nonclassical, pts, Normalization::total0, exec));
    state.SetLabel(exec == Exec::parallel ? "parallel" : "serial");
}

} // namespace

BENCHMARK(BM_EvaluateSerial)->Arg(101)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Arg(101)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_KappaSurface)->Args({201, 0})->Args({201, 1})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
