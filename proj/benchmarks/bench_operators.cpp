#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "smafv/grid.hpp"
#include "smafv/sparse.hpp"
#include "smafv/steklov.hpp"

namespace smafv {
namespace {

GridField smooth_cells(int m) {
  const auto g = StaggeredGrid::patch(1.0, 1.0, m, m);
  return sample(g, Stagger::cell, Stagger::cell, [](double x, double y) { return std::sin(3 * x) * std::cos(2 * y); });
}

void BM_DiffCellToNode(benchmark::State& state) {
  const auto f = smooth_cells(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diff(f, Axis::x, Stagger::node, Closure::one_sided_second));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_DiffCellToNode)->Arg(14)->Arg(64)->Arg(256);

void BM_InterpCellToNode(benchmark::State& state) {
  const auto f = smooth_cells(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(interp(f, Axis::y, Stagger::node, Closure::mirror_even));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_InterpCellToNode)->Arg(14)->Arg(64)->Arg(256);

void BM_Laplacian(benchmark::State& state) {
  const auto f = smooth_cells(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(laplacian(f));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Laplacian)->Arg(14)->Arg(64)->Arg(256);

void BM_CompatibilityResidual(benchmark::State& state) {
  const auto f = smooth_cells(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compatibility_residual(f, f, f));
}
BENCHMARK(BM_CompatibilityResidual)->Arg(14)->Arg(64);

void BM_SteklovPair(benchmark::State& state) {
  double prev = 0.05, next = -0.07, acc = 0.0;
  for (auto _ : state) {
    acc += g1_quartic({prev, next}) + g2_sextic({prev, next});
    next += 1e-9;
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_SteklovPair);

void BM_Bicgstab1dPoisson(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::vector<int>> rows(n);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j) rows[i].push_back(j);
  CsrMatrix a(rows);
  for (int i = 0; i < n; ++i) {
    a.add(i, i, 2.2);
    if (i > 0) a.add(i, i - 1, -1.0);
    if (i + 1 < n) a.add(i, i + 1, -1.0);
  }
  std::vector<double> b(n, 1.0), x(n);
  for (auto _ : state) {
    std::fill(x.begin(), x.end(), 0.0);
    benchmark::DoNotOptimize(bicgstab(a, b, x, 1e-10, 1000));
  }
}
BENCHMARK(BM_Bicgstab1dPoisson)->Arg(100)->Arg(1000);

}  // namespace
}  // namespace smafv
