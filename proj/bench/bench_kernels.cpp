#include <benchmark/benchmark.h>

#include <numbers>

#include "qpverify/kernels.hpp"
#include "qpverify/verifier.hpp"

using namespace qpv;

namespace {

const Lattice& lattice() {
  static const Lattice lat = Lattice::make(1.0, cplx(0.3, 0.9));
  return lat;
}

void product(benchmark::State& state, Execution ex) {
  const cplx z(0.31, 0.17);
  for (auto _ : state) benchmark::DoNotOptimize(sigma_product(z, lattice(), 60, ex));
}

void residuals(benchmark::State& state, Execution ex) {
  const auto catalog = builtin_catalog();
  const CatalogEntry& e = find_builtin(catalog, "weierstrass-fundamental");
  VerifyParams p;
  p.samples = static_cast<int>(state.range(0));
  p.execution = ex;
  for (auto _ : state) benchmark::DoNotOptimize(verify(e, lattice(), p).residuals.max_rel);
}

}  // namespace

BENCHMARK_CAPTURE(product, serial, Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(product, parallel, Execution::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(residuals, serial, Execution::serial)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(residuals, parallel, Execution::parallel)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
