#pragma once

// 2D square-to-rectangular Landau model on a staggered patch grid.
// Packed unknowns (cells x-fastest, then nodes x-fastest):
//   [ e1 | e2 | theta | s11 | s12 | s22 ]  6 M N cell values
//   [ v1 | v2 ]                             2 (M+1)(N+1) node values
// s12 is carried as a differential row (its rate is a3/2 times the shear
// strain rate), so e3 = 2 s12 / a3 needs no separate unknown. s11, s22 and
// constrained velocity components are algebraic.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "smafv/dae.hpp"
#include "smafv/diagnostics.hpp"
#include "smafv/grid.hpp"
#include "smafv/material.hpp"
#include "smafv/series_io.hpp"

namespace smafv {

using PlaneFunction = std::function<double(double x, double y, double t)>;

struct PatchState {
  GridField e1, e2, e3, theta, s11, s12, s22;  ///< cell fields
  GridField v1, v2;                            ///< node fields
  GridField u1, u2;                            ///< node displacements
};

struct PatchLoading {
  PlaneFunction f1;  ///< body force, x component; empty means zero
  PlaneFunction f2;
  PlaneFunction g;   ///< heat source
};

/// Which velocity component is held at zero on each edge. A free component
/// on an edge satisfies a zero normal-derivative condition through mirror
/// ghost cells. Temperature is adiabatic on every edge.
struct PatchBCs {
  bool v1_fixed_on_x_edges = true;  ///< left and right
  bool v2_fixed_on_x_edges = true;
  bool v1_fixed_on_y_edges = true;  ///< bottom and top
  bool v2_fixed_on_y_edges = true;

  /// u1 = 0 and d u2/dx = 0 on left/right, u2 = 0 and d u1/dy = 0 on bottom/top.
  static PatchBCs roller();
  /// u1 = u2 = 0 on all edges.
  static PatchBCs clamped();
};

enum class CouplingForm {
  a2,            ///< a2 theta e2 de2/dt
  sqrt_a2_half,  ///< (sqrt(a2)/2) theta e2 de2/dt
};

/// Energy source per unit area of a cell.
double coupling_source(double coefficient, double theta, double e2, double de2dt);

class PatchSystem final : public DaeSystem {
 public:
  PatchSystem(StaggeredGrid grid, MaterialParams2D params, PatchLoading loading, PatchBCs bcs,
              CouplingForm coupling = CouplingForm::a2);

  std::size_t size() const override { return n_; }
  const std::vector<std::uint8_t>& mask() const override { return mask_; }
  void rhs(double t, std::span<const double> u, std::span<const double> u_prev,
           std::span<double> h) const override;
  CsrMatrix jacobian_pattern() const override;
  bool has_analytic_jacobian() const override { return true; }
  void jacobian(double t, std::span<const double> u, std::span<const double> u_prev,
                CsrMatrix& jac) const override;
  void close_algebraic(double t, std::span<double> u, std::span<const double> u_prev) const override;
  double typical_scale(std::size_t i) const override;

  int cell(int i, int j) const { return j * M_ + i; }
  int node(int i, int j) const { return j * (M_ + 1) + i; }
  int ie1(int c) const { return c; }
  int ie2(int c) const { return C_ + c; }
  int ith(int c) const { return 2 * C_ + c; }
  int is11(int c) const { return 3 * C_ + c; }
  int is12(int c) const { return 4 * C_ + c; }
  int is22(int c) const { return 5 * C_ + c; }
  int iv1(int n) const { return 6 * C_ + n; }
  int iv2(int n) const { return 6 * C_ + N_nodes_ + n; }

  bool v1_free(int i, int j) const;
  bool v2_free(int i, int j) const;

  double coupling_coefficient() const;
  /// Normal stresses with Steklov-averaged e2^3, e2^5 terms.
  std::array<double, 2> normal_stresses(double e1, double e2_prev, double e2, double theta) const;

  std::vector<double> pack(const PatchState& s) const;
  /// Unpacks all fields (e3 from s12); u1, u2 are left empty.
  PatchState unpack(std::span<const double> u) const;

  EnergyTerms energy_terms(std::span<const double> u, double t) const;

  const StaggeredGrid& grid() const { return grid_; }
  const MaterialParams2D& params() const { return p_; }

 private:
  struct NodeStencil {
    int count = 0;
    std::array<int, 4> cells{};
    std::array<double, 4> cx{};  ///< Dx weights
    std::array<double, 4> cy{};  ///< Dy weights
  };
  NodeStencil build_stencil(int i, int j, double parity) const;
  // Cell gradient of a node field: returns (Gx, Gy).
  std::array<double, 2> grad(std::span<const double> u, int offset, int i, int j) const;

  double f1(double x, double y, double t) const { return load_.f1 ? load_.f1(x, y, t) : 0.0; }
  double f2(double x, double y, double t) const { return load_.f2 ? load_.f2(x, y, t) : 0.0; }
  double gsrc(double x, double y, double t) const { return load_.g ? load_.g(x, y, t) : 0.0; }

  StaggeredGrid grid_;
  MaterialParams2D p_;
  PatchLoading load_;
  PatchBCs bcs_;
  CouplingForm coupling_;
  int M_, N_, C_, N_nodes_;
  std::size_t n_;
  std::vector<std::uint8_t> mask_;
  std::vector<NodeStencil> even_, odd_;
};

/// Rates d/dt on differential rows (-H) and closure defects on algebraic
/// rows of a state, in packed order.
std::vector<double> rhs_2d(const PatchSystem& sys, const PatchState& state, double t,
                           std::span<const double> e2_prev = {});

struct PatchProblem {
  StaggeredGrid grid = StaggeredGrid::patch(1.0, 1.0, 14, 14);
  MaterialParams2D params;
  PatchLoading loading;
  PatchBCs bcs = PatchBCs::clamped();
  CouplingForm coupling = CouplingForm::a2;
  double theta_initial = 250.0;  ///< all other fields start at zero
  /// Packed initial state; overrides theta_initial when non-empty.
  std::vector<double> initial_packed;
  StepperConfig stepper;
  double t0 = 0.0;
  double span = 24.0;
};

struct PatchOutput {
  std::vector<double> snapshot_times;
  double probe_y = 0.5;  ///< centreline for profile probes
  int probe_every = 100;
  int energy_every = 100;
  int compat_every = 100;
  bool compat_as_printed = false;
};

class PatchSimulation {
 public:
  explicit PatchSimulation(PatchProblem problem);

  void step();
  double time() const { return stepper_.time(); }
  long steps() const { return stepper_.steps_taken(); }
  PatchState state() const;
  const PatchSystem& system() const { return sys_; }
  const std::vector<double>& packed() const { return stepper_.state(); }
  const std::vector<double>& u1() const { return u1_; }
  const std::vector<double>& u2() const { return u2_; }
  const EnergyRecord& last_energy() const { return energy_; }

 private:
  PatchProblem prob_;
  PatchSystem sys_;
  Bdf2Stepper stepper_;
  std::vector<double> u1_, u2_, u1_older_, u2_older_;
  EnergyTerms terms_;
  EnergyRecord energy_;
};

SnapshotSeries simulate_2d(const PatchProblem& problem, const PatchOutput& output);

/// Snapshot table: x, y, e1, e2, e3, theta, s11, s12, s22 per cell.
Table patch_fields_table(const PatchSystem& sys, std::span<const double> packed);

}  // namespace smafv
