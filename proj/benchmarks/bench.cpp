#include <benchmark/benchmark.h>

#include "pg4/quadric.hpp"
#include "pg4/spectrum.hpp"

namespace {

pg4::SolidSet elliptic(const pg4::Geometry& g) {
  return pg4::SolidSet::of(g, pg4::solids_by_section(g, pg4::standard_parabolic(g.field())).elliptic);
}

void BM_FieldMul(benchmark::State& state) {
  const auto f = pg4::GaloisField::of_order(static_cast<std::uint32_t>(state.range(0)));
  const std::uint32_t q = f.order();
  std::uint32_t a = 1, b = 2;
  for (auto _ : state) {
    auto c = f.mul({a}, {b});
    benchmark::DoNotOptimize(c);
    a = a + 1 == q ? 1 : a + 1;
    b = (b * 3 + 1) % q;
  }
}
BENCHMARK(BM_FieldMul)->Arg(4)->Arg(256)->Arg(65536);

void BM_GeometryBuild(benchmark::State& state) {
  const auto f = pg4::GaloisField::of_order(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    pg4::Geometry g(f, 1);
    benchmark::DoNotOptimize(g.num_points());
  }
}
BENCHMARK(BM_GeometryBuild)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_LineTable(benchmark::State& state) {
  const auto f = pg4::GaloisField::of_order(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    pg4::Geometry g(f, 1);
    benchmark::DoNotOptimize(g.lines().size());
  }
}
BENCHMARK(BM_LineTable)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PointCounts(benchmark::State& state) {
  const pg4::Geometry g(pg4::GaloisField::of_order(8), 1);
  const auto s = elliptic(g);
  for (auto _ : state) benchmark::DoNotOptimize(pg4::point_counts(g, s));
}
BENCHMARK(BM_PointCounts)->Unit(benchmark::kMillisecond);

void BM_LineCounts(benchmark::State& state) {
  const pg4::Geometry g(pg4::GaloisField::of_order(8), 1);
  const auto s = elliptic(g);
  g.lines();
  g.planes();  // a line's dual is a plane
  for (auto _ : state) benchmark::DoNotOptimize(pg4::line_counts(g, s));
}
BENCHMARK(BM_LineCounts)->Unit(benchmark::kMillisecond);

void BM_CheckConditions(benchmark::State& state) {
  const pg4::Geometry g(pg4::GaloisField::of_order(8), static_cast<unsigned>(state.range(0)));
  const auto s = elliptic(g);
  g.lines();
  g.planes();
  for (auto _ : state) benchmark::DoNotOptimize(pg4::check_conditions(g, s));
}
BENCHMARK(BM_CheckConditions)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
