#include <benchmark/benchmark.h>

#include "cpc/contact_pair.hpp"
#include "cpc/curvature_tensors.hpp"
#include "cpc/jet.hpp"
#include "cpc/zoo.hpp"

namespace {

void BM_EvalJet2(benchmark::State& state) {
  const cpc::Expr e = cpc::parse("sin(x0)^2*cos(x1) + exp(x2*x3)/(2 + sin(x0*x1))", 4);
  const std::vector<double> x{0.3, -0.7, 0.2, 1.1};
  for (auto _ : state) benchmark::DoNotOptimize(cpc::eval_jet2(e, {x.data(), x.size()}));
}
BENCHMARK(BM_EvalJet2);

void BM_CurvatureAt(benchmark::State& state, const char* name) {
  const cpc::ZooEntry e = cpc::builtin(name);
  cpc::Sampler s(42);
  const cpc::Vector x = s.point_in_box(*e.manifold);
  for (auto _ : state)
    benchmark::DoNotOptimize(cpc::curvature_at(*e.manifold, {x.data(), static_cast<std::size_t>(x.size())}));
}
BENCHMARK_CAPTURE(BM_CurvatureAt, sphere4, "sphere4");
BENCHMARK_CAPTURE(BM_CurvatureAt, s3_x_s3, "s3_x_s3");

void BM_ConformalTensor(benchmark::State& state) {
  const cpc::ZooEntry e = cpc::builtin("s3_x_s1");
  cpc::Sampler s(42);
  const cpc::Vector x = s.point_in_box(*e.manifold);
  const cpc::CurvatureBundle b = cpc::curvature_at(*e.manifold, {x.data(), static_cast<std::size_t>(x.size())});
  for (auto _ : state) benchmark::DoNotOptimize(cpc::conformal_at(b));
}
BENCHMARK(BM_ConformalTensor);

void BM_VerifyStructure(benchmark::State& state) {
  const cpc::ZooEntry e = cpc::builtin("s3_x_s3");
  cpc::SamplingOptions o;
  o.samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cpc::verify_structure(*e.pair, o));
}
BENCHMARK(BM_VerifyStructure)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
