#include <benchmark/benchmark.h>

#include "descentlab/gadam.hpp"
#include "descentlab/objectives.hpp"
#include "descentlab/supervised.hpp"
#include "descentlab/synthetic.hpp"

namespace dl = descentlab;

namespace {

// One optimizer step on a 1000-dimensional Rastrigin, per kind.
void BM_OptimizerStep(benchmark::State& state) {
  const auto kind = dl::kAllOptimizerKinds[static_cast<std::size_t>(state.range(0))];
  const auto f = dl::rastrigin(1000);
  dl::OptimizerConfig config;
  config.kind = kind;
  dl::Optimizer opt(config, f->dim());
  dl::Prng rng(1);
  dl::ParamVector theta = dl::init_normal(f->dim(), 1.0, rng);
  const auto oracle = [&](const dl::ParamVector& x) { return f->evaluate(x, {}); };
  for (auto _ : state) {
    theta = opt.step(theta, oracle).theta;
    benchmark::DoNotOptimize(theta);
  }
  state.SetLabel(std::string(dl::to_string(kind)));
}
BENCHMARK(BM_OptimizerStep)->DenseRange(0, 9);

void BM_MlpEvaluate(benchmark::State& state) {
  const auto data = dl::gaussian_blobs({.n = static_cast<std::size_t>(state.range(0)),
                                        .d_x = 8, .classes = 4, .seed = 1});
  const auto net = dl::mlp({8, 32, 4});
  dl::Prng rng(2);
  const auto theta = dl::init_normal(net->dim(), 0.3, rng);
  const auto batch = dl::Batch::all(data);
  for (auto _ : state) benchmark::DoNotOptimize(net->evaluate(theta, batch));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MlpEvaluate)->Arg(32)->Arg(256);

// A single Gadam generation on Rastrigin d = 10 with g = 8.
void BM_GadamGeneration(benchmark::State& state) {
  const auto f = dl::rastrigin(10);
  dl::GadamConfig config;
  config.population = 8;
  config.max_generations = 1;
  config.epochs_per_generation = 100;
  config.workers = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(dl::run_gadam(config, *f, nullptr, ++seed));
}
BENCHMARK(BM_GadamGeneration)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
