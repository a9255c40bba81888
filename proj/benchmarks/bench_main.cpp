#include <benchmark/benchmark.h>

#include <vector>

#include "satolab/measures.hpp"
#include "satolab/rng.hpp"
#include "satolab/sampler.hpp"

using namespace satolab;

namespace {

const RootSystem& group(int which) {
  static const std::vector<RootSystem> all = [] {
    std::vector<RootSystem> v;
    for (const char* name : {"C2", "G2", "B3"}) v.push_back(build_root_system(GroupType::parse(name)));
    return v;
  }();
  return all[static_cast<std::size_t>(which)];
}

void BM_CharValueWeyl(benchmark::State& state) {
  const RootSystem& rs = group(static_cast<int>(state.range(0)));
  const Weight lambda = rs.fundamental_weights()[0].scaled(2);
  const TorusPoint t = torus_point(rs, std::vector<double>(static_cast<std::size_t>(rs.rank()), 0.37));
  for (auto _ : state) benchmark::DoNotOptimize(char_value(rs, lambda, t));
}
BENCHMARK(BM_CharValueWeyl)->DenseRange(0, 2);

void BM_CharacterPolynomial(benchmark::State& state) {
  const RootSystem& rs = group(static_cast<int>(state.range(0)));
  const CharacterPolynomial p(rs, CharExpansion::single(rs.fundamental_weights()[0].scaled(2)));
  const std::vector<double> th(static_cast<std::size_t>(rs.rank()), 0.37);
  for (auto _ : state) benchmark::DoNotOptimize(p(th));
}
BENCHMARK(BM_CharacterPolynomial)->DenseRange(0, 2);

void BM_GramMatrix(benchmark::State& state) {
  const RootSystem& rs = group(static_cast<int>(state.range(0)));
  const auto& fw = rs.fundamental_weights();
  std::vector<Weight> ws(fw.begin(), fw.end());
  int bw = 0;
  for (const auto& w : ws) bw = std::max(bw, character_bandwidth(rs, w));
  const auto q = TorusQuadrature::for_bandwidth(rs, 2 * bw + density_bandwidth(rs));
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(rs, q, ws));
}
BENCHMARK(BM_GramMatrix)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_SamplerDraw(benchmark::State& state) {
  const RootSystem& rs = group(static_cast<int>(state.range(0)));
  const auto q = TorusQuadrature::for_bandwidth(rs, density_bandwidth(rs));
  const TorusSampler s(normalize(MeasureDensity::sato_tate(rs), q));
  Philox4x32 rng = substream(1, 0);
  std::vector<double> th(static_cast<std::size_t>(rs.rank()));
  for (auto _ : state) {
    s.draw(rng, th);
    benchmark::DoNotOptimize(th.data());
  }
}
BENCHMARK(BM_SamplerDraw)->DenseRange(0, 2);

}  // namespace

BENCHMARK_MAIN();
