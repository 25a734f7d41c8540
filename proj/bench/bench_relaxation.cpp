#include <benchmark/benchmark.h>

#include "crosshull/extremal.hpp"

using namespace crosshull;

namespace {

struct Problem {
  relax::Stencil stencil;
  std::vector<double> initial;
};

Problem problem(int n) {
  GridSpec g;
  g.nx = g.ny = n;
  Problem p;
  p.stencil = detail::field_stencil(make_pair(interval(-1, 1), make_disc({0, 0}, 1)), g, p.initial);
  return p;
}

template <auto Sweep>
void sweeps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Problem p = problem(n);
  std::vector<double> u = p.initial;
  const double omega = relax::optimal_omega(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Sweep(p.stencil, u, 0, omega));
    benchmark::DoNotOptimize(Sweep(p.stencil, u, 1, omega));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n) * n);
  state.counters["threads"] = relax::openmp_threads();
}

template <auto Solve>
void solves(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Problem p = problem(n);
  relax::Options opt;
  opt.omega = relax::optimal_omega(n);
  opt.tol = 1e-10;
  long total = 0;
  for (auto _ : state) {
    std::vector<double> u = p.initial;
    total += Solve(p.stencil, u, opt).sweeps;
    benchmark::DoNotOptimize(u.data());
  }
  state.counters["sweeps"] = static_cast<double>(total) / state.iterations();
  state.counters["threads"] = relax::openmp_threads();
}

}  // namespace

BENCHMARK(sweeps<relax::sweep_serial>)->Name("sweep/serial")->Arg(129)->Arg(257)->Arg(513);
BENCHMARK(sweeps<relax::sweep_openmp>)->Name("sweep/openmp")->Arg(129)->Arg(257)->Arg(513);
BENCHMARK(solves<relax::solve_serial>)->Name("solve/serial")->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);
BENCHMARK(solves<relax::solve_openmp>)->Name("solve/openmp")->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
