#include <benchmark/benchmark.h>

#include "qevo/ansatz.hpp"
#include "qevo/landscape.hpp"
#include "qevo/models.hpp"
#include "qevo/simulator.hpp"
#include "qevo/synth.hpp"

using namespace qevo;

namespace {

ParameterVector seeded_params(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(0.0, 6.283185307179586);
  return ParameterVector(v);
}

void BM_ApplyGate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector s(n);
  const Gate rot = Gate::rot_y(n / 2, 0);
  const Gate cx = Gate::cnot(0, n - 1);
  const Gate cry = Gate::cry(n - 1, 0, 0);
  for (auto _ : state) {
    apply_gate(s, rot, 0.3);
    apply_gate(s, cx);
    apply_gate(s, cry, 0.7);
    benchmark::DoNotOptimize(s[0]);
  }
  state.SetItemsProcessed(state.iterations() * 3);
}
BENCHMARK(BM_ApplyGate)->DenseRange(10, 20, 5);

void BM_Expectation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Hamiltonian h = build_heisenberg({n, random_regular_graph(n, 3, 1), 1.0, 1.0});
  const Circuit c = build_ansatz({n, 2, Entangler::CnotChain});
  const StateVector s = run_circuit(c, seeded_params(c.n_params(), 2));
  for (auto _ : state) benchmark::DoNotOptimize(expectation(s, h));
}
BENCHMARK(BM_Expectation)->Arg(10)->Arg(14)->Arg(16);

void BM_Iterate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Hamiltonian h = build_heisenberg({n, random_regular_graph(n, 3, 3), 1.0, 1.0});
  const Circuit c = build_ansatz({n, 10, Entangler::CnotChain});
  const VqeObjective obj(c, h);
  CostFunction f(obj);
  ParameterVector p = seeded_params(c.n_params(), 4);
  double cost = f(p);
  CounterRng rng(5);
  for (auto _ : state) {
    IterationResult r = iterate(f, p, cost, {16, 32, 16}, rng);
    p = std::move(r.params);
    cost = r.cost;
  }
  state.counters["evals/iter"] = benchmark::Counter(static_cast<double>(f.evaluations()) / static_cast<double>(state.iterations()));
}
BENCHMARK(BM_Iterate)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_FrobeniusObjective(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TargetUnitary target = TargetUnitary::identity(n);
  const Circuit c = build_ansatz({n, 3, Entangler::CryChain, true});
  const SynthesisObjective obj(target, c);
  const ParameterVector p = seeded_params(c.n_params(), 6);
  for (auto _ : state) benchmark::DoNotOptimize(obj.evaluate(p.values()));
}
BENCHMARK(BM_FrobeniusObjective)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
