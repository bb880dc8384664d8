// Serial reference kernels against their OpenMP counterparts on the 3D
// director field. Run with OMP_NUM_THREADS set to compare scaling.

#include <benchmark/benchmark.h>

#include "qflow/field_kernels.hpp"
#include "qflow/semigroup.hpp"

namespace {

using namespace qflow;

const ModelParams kModel{1.0, -1.0, 1.0, 2.5, 3};

TensorField director(int n) { return ic_director(PeriodicGrid(3, n), InitialCondition::paper3d); }

template <bool Parallel>
void BM_MapTaylor(benchmark::State& state) {
  const TensorField q = director(static_cast<int>(state.range(0)));
  TensorField out(q.grid());
  for (auto _ : state) {
    if constexpr (Parallel) kernels::map_taylor(q, kModel, 0.03, 4.5e-4, 1.0, out);
    else kernels::reference::map_taylor(q, kModel, 0.03, 4.5e-4, 1.0, out);
    benchmark::DoNotOptimize(out.raw().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(q.num_points()));
}

template <bool Parallel>
void BM_Lincomb(benchmark::State& state) {
  const TensorField a = director(static_cast<int>(state.range(0)));
  const TensorField b = a;
  TensorField out(a.grid());
  const double coeffs[] = {1.0, 0.5};
  const TensorField* fields[] = {&a, &b};
  for (auto _ : state) {
    if constexpr (Parallel) kernels::lincomb(coeffs, fields, out);
    else kernels::reference::lincomb(coeffs, fields, out);
    benchmark::DoNotOptimize(out.raw().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.num_points()));
}

template <bool Parallel>
void BM_FieldReduce(benchmark::State& state) {
  const TensorField q = director(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    FieldNorms n = Parallel ? kernels::field_reduce(q) : kernels::reference::field_reduce(q);
    benchmark::DoNotOptimize(n);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(q.num_points()));
}

template <bool Parallel>
void BM_Energy(benchmark::State& state) {
  const TensorField q = director(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double e = Parallel ? kernels::elastic_energy(q, 1.0) + kernels::bulk_energy(q, kModel)
                        : kernels::reference::elastic_energy(q, 1.0) + kernels::reference::bulk_energy(q, kModel);
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(q.num_points()));
}

void BM_Propagator(benchmark::State& state) {
  const TensorField q = director(static_cast<int>(state.range(0)));
  const Propagator prop(q.grid(), 1.0, 0.0625);
  for (auto _ : state) {
    TensorField out = prop.apply(q);
    benchmark::DoNotOptimize(out.raw().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(q.num_points()));
}

}  // namespace

BENCHMARK(BM_MapTaylor<false>)->Name("map_taylor/serial")->Arg(32)->Arg(64);
BENCHMARK(BM_MapTaylor<true>)->Name("map_taylor/omp")->Arg(32)->Arg(64);
BENCHMARK(BM_Lincomb<false>)->Name("lincomb/serial")->Arg(32)->Arg(64);
BENCHMARK(BM_Lincomb<true>)->Name("lincomb/omp")->Arg(32)->Arg(64);
BENCHMARK(BM_FieldReduce<false>)->Name("field_reduce/serial")->Arg(32)->Arg(64);
BENCHMARK(BM_FieldReduce<true>)->Name("field_reduce/omp")->Arg(32)->Arg(64);
BENCHMARK(BM_Energy<false>)->Name("energy/serial")->Arg(32)->Arg(64);
BENCHMARK(BM_Energy<true>)->Name("energy/omp")->Arg(32)->Arg(64);
BENCHMARK(BM_Propagator)->Name("propagator/omp")->Arg(32)->Arg(64);

BENCHMARK_MAIN();
