#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "qmem/bessel.hpp"
#include "qmem/hysteresis.hpp"
#include "qmem/loop_geometry.hpp"
#include "qmem/memristor.hpp"
#include "qmem/states.hpp"

namespace {

void BM_BesselJ2(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(qmem::bessel_j2(x));
}
BENCHMARK(BM_BesselJ2)->Arg(5)->Arg(75)->Arg(250)->Arg(490);

void BM_RunScenario(benchmark::State& state) {
    const auto kind = static_cast<qmem::DriveKind>(state.range(0));
    const qmem::DriveSignal drive{kind, kind == qmem::DriveKind::squeezed_var ? 0.5 : 1.0, 2.0};
    const qmem::FeedbackLaw law{qmem::matching_law(kind)};
    for (auto _ : state) benchmark::DoNotOptimize(qmem::run_scenario(drive, law, 1, 4096));
}
BENCHMARK(BM_RunScenario)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_DecomposeLoop(benchmark::State& state) {
    const qmem::Trajectory t = qmem::run_scenario({qmem::DriveKind::coherent_x, 1.0, 0.3 / std::numbers::pi},
                                                  {qmem::FeedbackKind::linear}, 1,
                                                  static_cast<int>(state.range(0)));
    const qmem::PlanarCurve curve = qmem::extract_loop(t);
    for (auto _ : state) benchmark::DoNotOptimize(qmem::decompose_loop(curve));
}
BENCHMARK(BM_DecomposeLoop)->Arg(1024)->Arg(8192)->Arg(65536)->Unit(benchmark::kMillisecond);

void BM_ApplyBsFock(benchmark::State& state) {
    const int cutoff = static_cast<int>(state.range(0));
    qmem::FockTwoMode in(cutoff);
    for (int a = 0; a <= cutoff; ++a) {
        for (int b = 0; a + b <= cutoff; ++b) in.amp(a, b) = 1.0 / (1.0 + a + b);
    }
    for (auto _ : state) benchmark::DoNotOptimize(qmem::apply_bs_fock(in, {1.0, 0.2, -0.3}));
}
BENCHMARK(BM_ApplyBsFock)->Arg(6)->Arg(25)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
