// Microbenchmarks for the hot paths: the error function under the
// collection-fraction windows, quadrature construction, the turbulence
// integrals, one full sweep point and the Monte Carlo samplers.

#include <benchmark/benchmark.h>

#include "orislink/config.hpp"
#include "orislink/montecarlo.hpp"
#include "orislink/numerics.hpp"
#include "orislink/pipeline.hpp"

namespace {

using namespace orislink;

constexpr double kDegToRad = 0.017453292519943295;

const Scenario& shared_scenario() {
    static const Scenario sc = build_scenario(ScenarioConfig{});
    return sc;
}

void BM_ErfAccurate(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-6;
        benchmark::DoNotOptimize(erf_accurate(1.0 + x));
    }
}
BENCHMARK(BM_ErfAccurate);

void BM_GaussLaguerre180(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauss_laguerre(180, -0.5));
    }
}
BENCHMARK(BM_GaussLaguerre180);

void BM_RytovSlantLeg(benchmark::State& state) {
    const Scenario& sc = shared_scenario();
    PathSegment leg{50.0, 20000.0, 30.0 * kDegToRad};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            rytov_variance(leg, sc.atm, sc.tx.k, sc.v_rms));
    }
}
BENCHMARK(BM_RytovSlantLeg);

void BM_EvaluatePoint(benchmark::State& state) {
    const Scenario& sc = shared_scenario();
    const PhaseProfile lps{ProfileKind::LPS, 0.0, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_point(sc, 30.0 * kDegToRad, lps));
    }
}
BENCHMARK(BM_EvaluatePoint);

void BM_PlobAverageGl(benchmark::State& state) {
    const Scenario& sc = shared_scenario();
    ChannelBudget budget{0.5, 0.7, 0.01, 0.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(plob_average_gl(budget, sc.rule));
    }
}
BENCHMARK(BM_PlobAverageGl);

void BM_FocusRate(benchmark::State& state) {
    const Scenario& sc = shared_scenario();
    const FocusScenario fs = focus_scenario(sc, 30.0 * kDegToRad);
    double f = fs.geom.d2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(focus_rate(fs, f));
    }
}
BENCHMARK(BM_FocusRate);

void BM_McAverageGml(benchmark::State& state) {
    const Scenario& sc = shared_scenario();
    const PointResult pt = evaluate_point(
        sc, 30.0 * kDegToRad, PhaseProfile{ProfileKind::LPS, 0.0, 0.0});
    const HoverStats hover{0.3, 0.2, 0.2, 0.1};
    const long long n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            mc_average_gml(pt.rx, hover, 0.045, n, 12345));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_McAverageGml)->Arg(10000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
