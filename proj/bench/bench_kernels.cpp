// Serial reference kernels against the production paths.

#include <benchmark/benchmark.h>

#include "otoclab/chaoskit/rpr.hpp"
#include "otoclab/kernels/conjugation.hpp"
#include "otoclab/kernels/reference.hpp"
#include "otoclab/qmap/quantize.hpp"
#include "otoclab/qmap/schwinger.hpp"
#include "otoclab/spinchain/chain.hpp"

using namespace otoclab;

namespace {

qmap::QuantizedMap cat(int n) { return qmap::quantize({qmap::MapKind::cat, 0.25, {}}, n); }

void BM_ConjugateReference(benchmark::State& st) {
  const auto qm = cat(static_cast<int>(st.range(0)));
  const CMatrix w = qmap::schwinger_ops(qm.N).Q;
  for (auto _ : st) benchmark::DoNotOptimize(kernels::reference::conjugate(w, qm.U));
}

void BM_ConjugateDense(benchmark::State& st) {
  const auto qm = cat(static_cast<int>(st.range(0)));
  CMatrix w = qmap::schwinger_ops(qm.N).Q, scratch;
  for (auto _ : st) {
    kernels::conjugate_dense(w, qm.U, scratch);
    benchmark::DoNotOptimize(w.data());
  }
}

void BM_ConjugateSplitStep(benchmark::State& st) {
  const auto qm = cat(static_cast<int>(st.range(0)));
  const kernels::SplitStepConjugator conj(qm.factors);
  CMatrix w = qmap::schwinger_ops(qm.N).Q;
  for (auto _ : st) {
    conj.heisenberg(w);
    benchmark::DoNotOptimize(w.data());
  }
}

void BM_CorrelatorReference(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto ops = qmap::schwinger_ops(n);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::reference::correlator_traces(ops.Q, ops.P));
}

void BM_CorrelatorDense(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto ops = qmap::schwinger_ops(n);
  CMatrix a, b;
  for (auto _ : st) benchmark::DoNotOptimize(kernels::correlator_traces_dense(ops.Q, ops.P, a, b));
}

void BM_RprApplySerial(benchmark::State& st) {
  const auto qm = qmap::quantize({qmap::MapKind::cat, 0.25, {}}, 1024, false);
  const chaoskit::CoarseGrainedPropagator p(qm.factors, 0.02, static_cast<int>(st.range(0)));
  CVector x = CVector::Ones(p.dimension()), y;
  for (auto _ : st) {
    p.apply_serial(x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_RprApply(benchmark::State& st) {
  const auto qm = qmap::quantize({qmap::MapKind::cat, 0.25, {}}, 1024, false);
  const chaoskit::CoarseGrainedPropagator p(qm.factors, 0.02, static_cast<int>(st.range(0)));
  CVector x = CVector::Ones(p.dimension()), y;
  for (auto _ : st) {
    p.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_ChainOtoc(benchmark::State& st) {
  const auto m = spinchain::make_model(static_cast<int>(st.range(0)), static_cast<int>(st.range(0)) / 2, 1.0, 1);
  const auto eig = spinchain::diagonalize(spinchain::build_hamiltonian(m));
  const std::vector<int> seps = {1};
  const auto times = spinchain::time_grid(0.0, 10.0, 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(spinchain::chain_otoc(m, eig, seps, times).C.data());
}

}  // namespace

BENCHMARK(BM_ConjugateReference)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConjugateDense)->Arg(64)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConjugateSplitStep)->Arg(64)->Arg(128)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorrelatorReference)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorrelatorDense)->Arg(64)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RprApplySerial)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RprApply)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ChainOtoc)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
