#include "smafv/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace smafv {
namespace {

int extent(int cells, Stagger s) { return s == Stagger::node ? cells + 1 : cells; }

void check_fits(const GridField& f, const char* op) {
  const auto& g = f.grid();
  if (f.nx() != extent(g.M, f.stagger(Axis::x)) || f.ny() != extent(g.N, f.stagger(Axis::y)) ||
      static_cast<int>(f.values().size()) != f.nx() * f.ny()) {
    throw std::invalid_argument(std::string(op) + ": field dimensions do not match its grid");
  }
}

enum class LineOp { diff, interp };

// Applies the staggered operator to one line of n samples with spacing h.
void apply_line(LineOp op, Stagger from, Closure closure, const double* in, int n, double h,
                double* out) {
  if (from == Stagger::node) {
    for (int i = 0; i + 1 < n; ++i) {
      out[i] = op == LineOp::diff ? (in[i + 1] - in[i]) / h : 0.5 * (in[i] + in[i + 1]);
    }
    return;
  }
  for (int k = 1; k < n; ++k) {
    out[k] = op == LineOp::diff ? (in[k] - in[k - 1]) / h : 0.5 * (in[k - 1] + in[k]);
  }
  double left = 0.0;
  double right = 0.0;
  switch (closure) {
    case Closure::one_sided_first:
      if (n < 2) throw std::invalid_argument("first-order closure needs at least 2 cells");
      if (op == LineOp::diff) {
        left = (in[1] - in[0]) / h;
        right = (in[n - 1] - in[n - 2]) / h;
      } else {
        left = in[0];
        right = in[n - 1];
      }
      break;
    case Closure::one_sided_second:
      if (n < 3) throw std::invalid_argument("second-order closure needs at least 3 cells");
      if (op == LineOp::diff) {
        left = (-2.0 * in[0] + 3.0 * in[1] - in[2]) / h;
        right = (2.0 * in[n - 1] - 3.0 * in[n - 2] + in[n - 3]) / h;
      } else {
        left = 0.5 * (3.0 * in[0] - in[1]);
        right = 0.5 * (3.0 * in[n - 1] - in[n - 2]);
      }
      break;
    case Closure::mirror_even:
      left = op == LineOp::diff ? 0.0 : in[0];
      right = op == LineOp::diff ? 0.0 : in[n - 1];
      break;
    case Closure::mirror_odd:
      left = op == LineOp::diff ? 2.0 * in[0] / h : 0.0;
      right = op == LineOp::diff ? -2.0 * in[n - 1] / h : 0.0;
      break;
  }
  out[0] = left;
  out[n] = right;
}

GridField apply(LineOp op, const GridField& f, Axis axis, Stagger target, Closure closure,
                const char* name) {
  check_fits(f, name);
  const Stagger from = f.stagger(axis);
  if (target == from) {
    throw std::invalid_argument(std::string(name) + ": target staggering must be the dual of the input");
  }
  const auto& g = f.grid();
  const Stagger sx = axis == Axis::x ? target : f.stagger(Axis::x);
  const Stagger sy = axis == Axis::y ? target : f.stagger(Axis::y);
  GridField out(g, sx, sy);

  if (axis == Axis::x) {
    for (int j = 0; j < f.ny(); ++j) {
      apply_line(op, from, closure, &f.values()[static_cast<std::size_t>(j) * f.nx()], f.nx(), g.hx,
                 &out.values()[static_cast<std::size_t>(j) * out.nx()]);
    }
  } else {
    std::vector<double> line_in(f.ny());
    std::vector<double> line_out(out.ny());
    for (int i = 0; i < f.nx(); ++i) {
      for (int j = 0; j < f.ny(); ++j) line_in[j] = f(i, j);
      apply_line(op, from, closure, line_in.data(), f.ny(), g.hy, line_out.data());
      for (int j = 0; j < out.ny(); ++j) out(i, j) = line_out[j];
    }
  }
  return out;
}

}  // namespace

StaggeredGrid StaggeredGrid::rod(double length, int cells) {
  if (cells < 2) throw std::invalid_argument("rod grid needs at least 2 cells");
  if (!(length > 0.0)) throw std::invalid_argument("rod length must be positive");
  return {length, 1.0, cells, 1, length / cells, 1.0};
}

StaggeredGrid StaggeredGrid::patch(double lx, double ly, int mx, int my) {
  if (mx < 2 || my < 1) throw std::invalid_argument("patch grid needs M >= 2 and N >= 1");
  if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("patch lengths must be positive");
  return {lx, ly, mx, my, lx / mx, ly / my};
}

GridField::GridField(const StaggeredGrid& grid, Stagger sx, Stagger sy, double value)
    : grid_(grid),
      sx_(sx),
      sy_(sy),
      nx_(extent(grid.M, sx)),
      ny_(extent(grid.N, sy)),
      data_(static_cast<std::size_t>(nx_) * ny_, value) {}

GridField make_cell_field(const StaggeredGrid& grid, double value) {
  return GridField(grid, Stagger::cell, Stagger::cell, value);
}

GridField make_node_field(const StaggeredGrid& grid, double value) {
  return GridField(grid, Stagger::node, Stagger::node, value);
}

GridField diff(const GridField& f, Axis axis, Stagger target, Closure closure) {
  return apply(LineOp::diff, f, axis, target, closure, "diff");
}

GridField interp(const GridField& f, Axis axis, Stagger target, Closure closure) {
  return apply(LineOp::interp, f, axis, target, closure, "interp");
}

GridField laplacian(const GridField& theta, const NeumannData& bc) {
  check_fits(theta, "laplacian");
  if (theta.stagger(Axis::x) != Stagger::cell || theta.stagger(Axis::y) != Stagger::cell) {
    throw std::invalid_argument("laplacian: expects a cell field");
  }
  const auto& g = theta.grid();
  const int m = theta.nx();
  const int n = theta.ny();
  GridField out(g, Stagger::cell, Stagger::cell);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      const double c = theta(i, j);
      // Face fluxes; boundary faces take the prescribed gradient.
      const double west = i > 0 ? (c - theta(i - 1, j)) / g.hx : bc.left;
      const double east = i + 1 < m ? (theta(i + 1, j) - c) / g.hx : bc.right;
      double lap = (east - west) / g.hx;
      if (n > 1) {
        const double south = j > 0 ? (c - theta(i, j - 1)) / g.hy : bc.bottom;
        const double north = j + 1 < n ? (theta(i, j + 1) - c) / g.hy : bc.top;
        lap += (north - south) / g.hy;
      }
      out(i, j) = lap;
    }
  }
  return out;
}

double compatibility_residual(const GridField& e1, const GridField& e2, const GridField& e3,
                              bool as_printed) {
  check_fits(e1, "compatibility_residual");
  check_fits(e2, "compatibility_residual");
  check_fits(e3, "compatibility_residual");
  if (e1.nx() != e2.nx() || e1.nx() != e3.nx() || e1.ny() != e2.ny() || e1.ny() != e3.ny()) {
    throw std::invalid_argument("compatibility_residual: fields on different grids");
  }
  const auto& g = e1.grid();
  const int m = e1.nx();
  const int n = e1.ny();
  if (m < 3 || n < 3) return 0.0;
  const double ihx2 = 1.0 / (g.hx * g.hx);
  const double ihy2 = 1.0 / (g.hy * g.hy);
  const double ixy = 1.0 / (4.0 * g.hx * g.hy);
  const double sqrt8 = std::sqrt(8.0);
  double sum = 0.0;
  for (int j = 1; j + 1 < n; ++j) {
    for (int i = 1; i + 1 < m; ++i) {
      auto dxx = [&](const GridField& f) { return (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) * ihx2; };
      auto dyy = [&](const GridField& f) { return (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) * ihy2; };
      const double dxy = (e3(i + 1, j + 1) - e3(i - 1, j + 1) - e3(i + 1, j - 1) + e3(i - 1, j - 1)) * ixy;
      const double dev = as_printed ? (-dxx(e2) + dxx(e2)) : (-dxx(e2) + dyy(e2));
      const double r = dxx(e1) + dyy(e1) - sqrt8 * dxy + dev;
      sum += r * r * g.hx * g.hy;
    }
  }
  return std::sqrt(sum);
}

double node_weight(const StaggeredGrid& grid, int i, int j) {
  double w = grid.hx * grid.hy;
  if (i == 0 || i == grid.M) w *= 0.5;
  if (j == 0 || j == grid.N) w *= 0.5;
  return w;
}

}  // namespace smafv
