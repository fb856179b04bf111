#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "smafv/grid.hpp"

namespace smafv {
namespace {

double max_abs_error(const GridField& f, auto&& exact) {
  double err = 0.0;
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) err = std::max(err, std::abs(f(i, j) - exact(f.x(i), f.y(j))));
  return err;
}

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

TEST(Grid, Layout) {
  const auto g = StaggeredGrid::rod(1.0, 8);
  EXPECT_DOUBLE_EQ(g.hx, 0.125);
  EXPECT_DOUBLE_EQ(g.node_x(3), 0.375);
  EXPECT_DOUBLE_EQ(g.cell_x(2), 0.3125);
  const auto p = StaggeredGrid::patch(1.0, 0.4, 14, 14);
  EXPECT_EQ(p.node_count(), 225);
  EXPECT_EQ(p.cell_count(), 196);
  EXPECT_THROW(StaggeredGrid::rod(1.0, 1), std::invalid_argument);
}

TEST(Grid, DiffRejectsSameStaggering) {
  const auto g = StaggeredGrid::rod(1.0, 4);
  EXPECT_THROW(diff(make_cell_field(g), Axis::x, Stagger::cell), std::invalid_argument);
}

TEST(Grid, LinearFieldsDifferencedExactly) {
  const auto g = StaggeredGrid::patch(2.0, 1.0, 6, 5);
  const auto cells = sample(g, Stagger::cell, Stagger::cell, [](double x, double y) { return 3 * x - 2 * y + 1; });
  for (Closure c : {Closure::one_sided_first, Closure::one_sided_second}) {
    const auto dx = diff(cells, Axis::x, Stagger::node, c);
    EXPECT_LT(max_abs_error(dx, [](double, double) { return 3.0; }), 1e-12);
    const auto dy = diff(cells, Axis::y, Stagger::node, c);
    EXPECT_LT(max_abs_error(dy, [](double, double) { return -2.0; }), 1e-12);
  }
  const auto nodes = sample(g, Stagger::node, Stagger::node, [](double x, double y) { return 3 * x - 2 * y + 1; });
  EXPECT_LT(max_abs_error(interp(nodes, Axis::x, Stagger::cell), [](double x, double y) { return 3 * x - 2 * y + 1; }),
            1e-12);
}

struct OrderCase {
  Closure closure;
  double order;
};

class DiffOrder : public ::testing::TestWithParam<OrderCase> {};

TEST_P(DiffOrder, CellToNodeRefinement) {
  auto f = [](double x, double) { return std::sin(2.0 * x) + x * x * x; };
  auto df = [](double x, double) { return 2.0 * std::cos(2.0 * x) + 3.0 * x * x; };
  double prev = 0.0;
  for (int m : {16, 32, 64, 128}) {
    const auto g = StaggeredGrid::rod(1.0, m);
    const auto d = diff(sample(g, Stagger::cell, Stagger::cell, f), Axis::x, Stagger::node, GetParam().closure);
    const double err = max_abs_error(d, df);
    if (prev > 0.0) EXPECT_NEAR(observed_order(prev, err), GetParam().order, 0.15) << m;
    prev = err;
  }
}

INSTANTIATE_TEST_SUITE_P(Closures, DiffOrder,
                         ::testing::Values(OrderCase{Closure::one_sided_first, 1.0},
                                           OrderCase{Closure::one_sided_second, 2.0}));

TEST(Grid, NodeToCellIsSecondOrder) {
  auto f = [](double x, double) { return std::exp(x); };
  double prev_d = 0.0, prev_i = 0.0;
  for (int m : {16, 32, 64}) {
    const auto g = StaggeredGrid::rod(1.0, m);
    const auto n = sample(g, Stagger::node, Stagger::node, f);
    const double ed = max_abs_error(diff(n, Axis::x, Stagger::cell), f);
    const double ei = max_abs_error(interp(n, Axis::x, Stagger::cell), f);
    if (prev_d > 0.0) {
      EXPECT_NEAR(observed_order(prev_d, ed), 2.0, 0.1);
      EXPECT_NEAR(observed_order(prev_i, ei), 2.0, 0.1);
    }
    prev_d = ed;
    prev_i = ei;
  }
}

TEST(Grid, MirrorClosures) {
  const auto g = StaggeredGrid::rod(1.0, 4);
  const auto c = sample(g, Stagger::cell, Stagger::cell, [](double x, double) { return x; });
  const auto de = diff(c, Axis::x, Stagger::node, Closure::mirror_even);
  EXPECT_DOUBLE_EQ(de(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(de(4, 0), 0.0);
  const auto io = interp(c, Axis::x, Stagger::node, Closure::mirror_odd);
  EXPECT_DOUBLE_EQ(io(0, 0), 0.0);
  const auto dodd = diff(c, Axis::x, Stagger::node, Closure::mirror_odd);
  EXPECT_DOUBLE_EQ(dodd(0, 0), 2.0 * c(0, 0) / g.hx);
}

TEST(Grid, LaplacianInteriorSecondOrderWithExactNeumannData) {
  auto f = [](double x, double y) { return std::cos(x) * std::sin(0.5 + y); };
  auto lap = [&](double x, double y) { return -2.0 * f(x, y); };
  double prev = 0.0;
  for (int m : {8, 16, 32}) {
    const auto g = StaggeredGrid::patch(1.0, 1.0, m, m);
    const auto th = sample(g, Stagger::cell, Stagger::cell, f);
    // Boundary data is wrong on purpose; only interior cells are checked.
    NeumannData bc{0.0, 0.0, 0.0, 0.0};
    const auto l = laplacian(th, bc);
    double err = 0.0;
    for (int j = 2; j + 2 < m; ++j)
      for (int i = 2; i + 2 < m; ++i) err = std::max(err, std::abs(l(i, j) - lap(l.x(i), l.y(j))));
    if (prev > 0.0) EXPECT_NEAR(observed_order(prev, err), 2.0, 0.15);
    prev = err;
  }
}

TEST(Grid, LaplacianConservesWithZeroFlux) {
  const auto g = StaggeredGrid::patch(1.0, 0.5, 7, 5);
  const auto th = sample(g, Stagger::cell, Stagger::cell, [](double x, double y) { return x * x * y + 3 * y; });
  const auto l = laplacian(th);
  double sum = 0.0;
  for (double v : l.values()) sum += v;
  EXPECT_NEAR(sum, 0.0, 1e-9);
}

TEST(Grid, LaplacianReproducesBoundaryGradient) {
  const auto g = StaggeredGrid::rod(1.0, 10);
  const auto th = sample(g, Stagger::cell, Stagger::cell, [](double x, double) { return 2.0 * x + 5.0; });
  const auto l = laplacian(th, {2.0, 2.0, 0.0, 0.0});
  for (double v : l.values()) EXPECT_NEAR(v, 0.0, 1e-10);
}

TEST(Grid, CompatibilityResidualVanishesForDisplacementStrains) {
  // u1 = sin x cos 2y, u2 = x^2 y.
  const double r = std::sqrt(0.5);
  double prev = 0.0;
  for (int m : {16, 32, 64}) {
    const auto g = StaggeredGrid::patch(1.0, 1.0, m, m);
    const auto e1 = sample(g, Stagger::cell, Stagger::cell, [&](double x, double y) {
      return r * (std::cos(x) * std::cos(2 * y) + x * x);
    });
    const auto e2 = sample(g, Stagger::cell, Stagger::cell, [&](double x, double y) {
      return r * (std::cos(x) * std::cos(2 * y) - x * x);
    });
    const auto e3 = sample(g, Stagger::cell, Stagger::cell, [&](double x, double y) {
      return 0.5 * (-2.0 * std::sin(x) * std::sin(2 * y) + 2.0 * x * y);
    });
    const double res = compatibility_residual(e1, e2, e3);
    if (prev > 0.0) EXPECT_GT(observed_order(prev, res), 1.8);
    prev = res;
  }
  const auto g = StaggeredGrid::patch(1.0, 1.0, 16, 16);
  const auto bump = sample(g, Stagger::cell, Stagger::cell, [](double x, double) { return x * x; });
  const auto zero = make_cell_field(g);
  EXPECT_GT(compatibility_residual(bump, zero, zero), 1.0);
  // Literal form drops the e2 terms entirely.
  EXPECT_NEAR(compatibility_residual(zero, bump, zero, true), 0.0, 1e-12);
  EXPECT_GT(compatibility_residual(zero, bump, zero, false), 1e-3);
}

TEST(Grid, NodeWeightsSumToArea) {
  const auto g = StaggeredGrid::patch(1.0, 0.4, 14, 14);
  double sum = 0.0;
  for (int j = 0; j <= g.N; ++j)
    for (int i = 0; i <= g.M; ++i) sum += node_weight(g, i, j);
  EXPECT_NEAR(sum, 0.4, 1e-14);
}

}  // namespace
}  // namespace smafv
