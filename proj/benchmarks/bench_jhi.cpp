#include <benchmark/benchmark.h>

#include <algorithm>

#include "jhi/diagnostics.hpp"
#include "jhi/generating.hpp"
#include "jhi/integrator.hpp"
#include "jhi/jets.hpp"
#include "jhi/models.hpp"

namespace {

using S = jhi::Series<double>;

template <class Model>
jhi::Vec<double, Model::M> start(const Model& m) {
  jhi::Vec<double, Model::M> s{};
  const auto x0 = m.default_x0();
  std::copy(x0.begin(), x0.end(), s.begin());
  s[Model::M - 1] = 1.0;
  return s;
}

void BM_SeriesProduct(benchmark::State& st) {
  const S a = S::of(1.0, 0.3, -0.2, 0.1, 0.05), b = S::of(0.7, -0.1, 0.4, 0.2, -0.3);
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesProduct);

void BM_SeriesExpLog(benchmark::State& st) {
  const S a = S::of(1.2, 0.3, -0.2, 0.1, 0.05);
  for (auto _ : st) benchmark::DoNotOptimize(log(exp(a)));
}
BENCHMARK(BM_SeriesExpLog);

// S3 through the series recursion versus the closed form.
void BM_S3Recursion(benchmark::State& st) {
  jhi::GeneratingOptions o;
  o.use_closed_forms = st.range(0) != 0;
  const jhi::Jacobi3DModel m;
  const jhi::GeneratingCoefficients<jhi::Jacobi3DModel> c(m, 3, o);
  const auto s = start(m);
  for (auto _ : st) benchmark::DoNotOptimize(c.value(3, s));
}
BENCHMARK(BM_S3Recursion)->Arg(0)->Arg(1);

template <class Model>
void BM_JhiStep(benchmark::State& st) {
  const Model m;
  const int order = static_cast<int>(st.range(0));
  const jhi::GeneratingCoefficients<Model> c(m, order);
  jhi::StepConfig cfg;
  cfg.order = order;
  const auto s = start(m);
  for (auto _ : st) benchmark::DoNotOptimize(jhi::jhi_step(c, cfg, 1e-2, s));
}
BENCHMARK_TEMPLATE(BM_JhiStep, jhi::ContactModel)->Arg(1)->Arg(3);
BENCHMARK_TEMPLATE(BM_JhiStep, jhi::DampedModel)->Arg(1)->Arg(3);
BENCHMARK_TEMPLATE(BM_JhiStep, jhi::Jacobi2DModel)->Arg(1)->Arg(3);
BENCHMARK_TEMPLATE(BM_JhiStep, jhi::Jacobi3DModel)->Arg(1)->Arg(3);
BENCHMARK_TEMPLATE(BM_JhiStep, jhi::Jacobi4DModel)->Arg(1)->Arg(3);
BENCHMARK_TEMPLATE(BM_JhiStep, jhi::LotkaVolterraModel)->Arg(1)->Arg(3);
BENCHMARK_TEMPLATE(BM_JhiStep, jhi::RigidBodyModel)->Arg(1)->Arg(3);

void BM_Rk4Step(benchmark::State& st) {
  const jhi::Jacobi3DModel m;
  const auto s = start(m);
  for (auto _ : st) benchmark::DoNotOptimize(jhi::rk4_step(m, 1e-2, s));
}
BENCHMARK(BM_Rk4Step);

void BM_OrderStudy(benchmark::State& st) {
  const jhi::Jacobi3DModel m;
  const auto s0 = start(m);
  const auto ref = jhi::reference_solution(m, 0.0, 0.9, 1025, s0);
  const auto method = jhi::MethodSpec::parse("jhi1");
  for (auto _ : st)
    benchmark::DoNotOptimize(jhi::estimate_order(m, method, 0.0, 0.9, {32, 64, 128}, ref, s0));
}
BENCHMARK(BM_OrderStudy)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
