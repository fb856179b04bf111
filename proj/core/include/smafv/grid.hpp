#pragma once

// Staggered structured grid: integer points x_i = i hx (i = 0..M) carry the
// velocities, flux points (i + 1/2) hx (i = 0..M-1) carry strains,
// temperature and stresses. Same layout in y. N == 1 is the rod layout.

#include <vector>

namespace smafv {

enum class Axis { x, y };
enum class Stagger { cell, node };

/// How a cell -> node operator treats the two boundary nodes of an axis.
enum class Closure {
  one_sided_first,   ///< nearest-cell values, first order
  one_sided_second,  ///< quadratic extrapolation from three cells
  mirror_even,       ///< ghost cell equals its mirror image
  mirror_odd,        ///< ghost cell is the negated mirror image
};

struct StaggeredGrid {
  double Lx = 1.0;
  double Ly = 1.0;
  int M = 2;
  int N = 1;
  double hx = 0.5;
  double hy = 1.0;

  static StaggeredGrid rod(double length, int cells);
  static StaggeredGrid patch(double lx, double ly, int mx, int my);

  double node_x(int i) const { return i * hx; }
  double node_y(int j) const { return j * hy; }
  double cell_x(int i) const { return (i + 0.5) * hx; }
  double cell_y(int j) const { return (j + 0.5) * hy; }

  int cell_count() const { return M * N; }
  int node_count() const { return (M + 1) * (N + 1); }

  bool operator==(const StaggeredGrid&) const = default;
};

/// Values on one staggering of a grid; storage is x-fastest.
class GridField {
 public:
  GridField() = default;
  GridField(const StaggeredGrid& grid, Stagger sx, Stagger sy, double value = 0.0);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  Stagger stagger(Axis axis) const { return axis == Axis::x ? sx_ : sy_; }
  const StaggeredGrid& grid() const { return grid_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * nx_ + i]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(j) * nx_ + i]; }

  std::vector<double>& values() { return data_; }
  const std::vector<double>& values() const { return data_; }

  double x(int i) const { return sx_ == Stagger::node ? grid_.node_x(i) : grid_.cell_x(i); }
  double y(int j) const { return sy_ == Stagger::node ? grid_.node_y(j) : grid_.cell_y(j); }

 private:
  StaggeredGrid grid_{};
  Stagger sx_ = Stagger::cell;
  Stagger sy_ = Stagger::cell;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> data_;
};

GridField make_cell_field(const StaggeredGrid& grid, double value = 0.0);
GridField make_node_field(const StaggeredGrid& grid, double value = 0.0);

template <class F>
GridField sample(const StaggeredGrid& grid, Stagger sx, Stagger sy, F&& f) {
  GridField out(grid, sx, sy);
  for (int j = 0; j < out.ny(); ++j)
    for (int i = 0; i < out.nx(); ++i) out(i, j) = f(out.x(i), out.y(j));
  return out;
}

/// Two-point difference along `axis` onto the dual staggering `target`.
/// Node -> cell needs no closure; cell -> node uses `closure` on the two
/// boundary nodes. Throws std::invalid_argument if `target` is not the dual
/// of the field's staggering along `axis` or the field does not fit its grid.
GridField diff(const GridField& f, Axis axis, Stagger target,
               Closure closure = Closure::one_sided_first);

/// Two-point average along `axis` onto the dual staggering `target`.
GridField interp(const GridField& f, Axis axis, Stagger target,
                 Closure closure = Closure::one_sided_first);

/// Prescribed outward-independent temperature gradients dtheta/dx at
/// x = 0 and x = Lx, dtheta/dy at y = 0 and y = Ly.
struct NeumannData {
  double left = 0.0;
  double right = 0.0;
  double bottom = 0.0;
  double top = 0.0;
};

/// Five-point Laplacian of a cell field with ghost cells that reproduce the
/// prescribed boundary gradients exactly at the boundary faces.
GridField laplacian(const GridField& theta, const NeumannData& bc = {});

/// Discrete L2 norm over interior cells of
///   d2e1/dx2 + d2e1/dy2 - sqrt(8) d2e3/dxdy - d2e2/dx2 + d2e2/dy2.
/// With `as_printed` the e2 pair is taken literally as -d2e2/dx2 + d2e2/dx2,
/// which cancels. Needs M >= 3 and N >= 3; returns 0 otherwise.
double compatibility_residual(const GridField& e1, const GridField& e2, const GridField& e3,
                              bool as_printed = false);

/// Trapezoidal quadrature weight of node (i, j) (boundary nodes carry half
/// of their control volume on each cut axis).
double node_weight(const StaggeredGrid& grid, int i, int j);

}  // namespace smafv
