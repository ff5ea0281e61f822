#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "hp/criteria.hpp"
#include "hp/lattice.hpp"
#include "hp/obstructions.hpp"

using namespace hp;
using lattice::BlowupModel;
using lattice::DivisorClass;
using lattice::Int;
using lattice::Position;

namespace {

DivisorClass sample_bundle(std::mt19937& rng, BlowupModel& model) {
  std::int64_t e = 1 + static_cast<std::int64_t>(rng() % 4);
  std::size_t r = 4 + rng() % 9;
  model = BlowupModel{e, r, Position::VeryGeneral};
  DivisorClass L;
  L.a = 5 + static_cast<long>(rng() % 40);
  for (std::size_t i = 0; i < r; ++i)
    L.m.emplace_back(static_cast<long>(rng() % 10));
  L.b = L.a * e + 10 + static_cast<long>(rng() % 120);
  return L;
}

void BM_CheckAll(benchmark::State& state) {
  std::mt19937 rng(1u);
  std::vector<std::pair<DivisorClass, BlowupModel>> pool;
  for (int i = 0; i < 64; ++i) {
    BlowupModel model;
    auto L = sample_bundle(rng, model);
    pool.emplace_back(std::move(L), model);
  }
  std::size_t idx = 0;
  for (auto _ : state) {
    const auto& [L, model] = pool[idx++ & 63];
    auto reports = criteria::check_all(L, model, 2);
    benchmark::DoNotOptimize(reports);
  }
}
BENCHMARK(BM_CheckAll);

void BM_ScanCell(benchmark::State& state) {
  BlowupModel model{2, 10, Position::VeryGeneral};
  DivisorClass N;
  N.a = 4;
  N.b = 10;
  N.m.assign(10, Int(2));
  std::int64_t beta_max = criteria::lambda_of(2, 10).lambda + 2;
  for (auto _ : state) {
    auto res = obstructions::scan_obstructions(N, model, obstructions::ScanMode::VA, 0,
                                               beta_max, 2);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_ScanCell);

void BM_TopkSum(benchmark::State& state) {
  std::mt19937 rng(3u);
  std::vector<Int> m;
  for (int i = 0; i < 12; ++i) m.emplace_back(static_cast<long>(rng() % 40));
  for (auto _ : state) {
    auto s = criteria::topk_sum(m, 7, criteria::Transform::PlusOneSquared);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_TopkSum);

}  // namespace

BENCHMARK_MAIN();
