#pragma once

// 1D Falk model on a staggered rod grid. Packed unknowns:
//   [ eps (M cells) | v (M+1 nodes) | theta (M cells) | s (M cells) ]
// eps, interior v and theta are differential rows; s and the two end
// velocities are algebraic.

#include <functional>
#include <span>
#include <vector>

#include "smafv/dae.hpp"
#include "smafv/diagnostics.hpp"
#include "smafv/grid.hpp"
#include "smafv/material.hpp"
#include "smafv/series_io.hpp"

namespace smafv {

using SpaceTimeFunction = std::function<double(double x, double t)>;
using TimeFunction = std::function<double(double t)>;

struct RodState {
  std::vector<double> eps;    ///< per cell
  std::vector<double> v;      ///< per node
  std::vector<double> theta;  ///< per cell
  std::vector<double> s;      ///< per cell
  std::vector<double> u;      ///< per node, time-integrated velocity
};

struct RodLoading {
  SpaceTimeFunction F;  ///< mechanical load per unit volume; empty means zero
  SpaceTimeFunction G;  ///< heat source per unit volume; empty means zero
};

struct RodBCs {
  TimeFunction u_left;           ///< end displacements; empty means clamped
  TimeFunction u_right;
  TimeFunction theta_grad_left;  ///< d theta/dx at the ends; empty means adiabatic
  TimeFunction theta_grad_right;
};

class RodSystem final : public DaeSystem {
 public:
  RodSystem(StaggeredGrid grid, MaterialParams1D params, RodLoading loading, RodBCs bcs);

  std::size_t size() const override { return static_cast<std::size_t>(4 * M_ + 1); }
  const std::vector<std::uint8_t>& mask() const override { return mask_; }
  void rhs(double t, std::span<const double> u, std::span<const double> u_prev,
           std::span<double> h) const override;
  CsrMatrix jacobian_pattern() const override;
  bool has_analytic_jacobian() const override { return true; }
  void jacobian(double t, std::span<const double> u, std::span<const double> u_prev,
                CsrMatrix& jac) const override;
  void close_algebraic(double t, std::span<double> u, std::span<const double> u_prev) const override;
  double typical_scale(std::size_t i) const override;

  int ie(int i) const { return i; }
  int iv(int n) const { return M_ + n; }
  int ith(int i) const { return 2 * M_ + 1 + i; }
  int is(int i) const { return 3 * M_ + 1 + i; }

  /// Stress closure with Steklov-averaged eps^3, eps^5 terms.
  double stress(double eps_prev, double eps, double theta) const;

  double end_velocity_left(double t) const;
  double end_velocity_right(double t) const;
  double end_displacement_left(double t) const;
  double end_displacement_right(double t) const;

  std::vector<double> pack(const RodState& s) const;
  /// Unpacks eps, v, theta, s; leaves u empty.
  RodState unpack(std::span<const double> u) const;

  /// Energy content and inputs of a layer (u is not needed).
  EnergyTerms energy_terms(std::span<const double> u, double t) const;

  const StaggeredGrid& grid() const { return grid_; }
  const MaterialParams1D& params() const { return p_; }
  const RodLoading& loading() const { return load_; }

 private:
  double force(double x, double t) const { return load_.F ? load_.F(x, t) : 0.0; }
  double heat(double x, double t) const { return load_.G ? load_.G(x, t) : 0.0; }
  double grad_left(double t) const { return bcs_.theta_grad_left ? bcs_.theta_grad_left(t) : 0.0; }
  double grad_right(double t) const { return bcs_.theta_grad_right ? bcs_.theta_grad_right(t) : 0.0; }

  StaggeredGrid grid_;
  MaterialParams1D p_;
  RodLoading load_;
  RodBCs bcs_;
  int M_;
  std::vector<std::uint8_t> mask_;
};

/// Rates d(eps, v, theta)/dt of a state (-H on differential rows) and the
/// stress-closure defect on algebraic rows, in packed order. Steklov terms
/// use `eps_prev` (or eps itself when empty).
std::vector<double> rhs_1d(const RodSystem& sys, const RodState& state, double t,
                           std::span<const double> eps_prev = {});

struct RodProblem {
  StaggeredGrid grid = StaggeredGrid::rod(1.0, 8);
  MaterialParams1D params;
  RodLoading loading;
  RodBCs bcs;
  RodState initial;  ///< eps, v, theta and u; s is closed on construction
  StepperConfig stepper;
  double t0 = 0.0;
  double span = 24.0;
};

/// Sampling of a rod run. The F column of probes.csv is the mechanical load
/// at the probe point.
struct RodOutput {
  std::vector<double> snapshot_times;
  double probe_x = 0.375;
  int probe_every = 10;   ///< steps between probe rows
  int energy_every = 10;  ///< steps between energy rows
};

/// Cell-centred value at arbitrary x (linear between centres, constant beyond).
double probe_cells(const StaggeredGrid& grid, std::span<const double> cells, double x);
/// Node value at arbitrary x (linear between nodes).
double probe_nodes(const StaggeredGrid& grid, std::span<const double> nodes, double x);

/// Time integration of one rod problem with displacement tracking.
class RodSimulation {
 public:
  explicit RodSimulation(RodProblem problem);

  void step();
  double time() const { return stepper_.time(); }
  long steps() const { return stepper_.steps_taken(); }
  RodState state() const;
  const RodSystem& system() const { return sys_; }
  const std::vector<double>& packed() const { return stepper_.state(); }
  const std::vector<double>& displacement() const { return u_; }
  const EnergyRecord& last_energy() const { return energy_; }
  const RodProblem& problem() const { return prob_; }

 private:
  RodProblem prob_;
  RodSystem sys_;
  Bdf2Stepper stepper_;
  std::vector<double> u_;
  std::vector<double> u_older_;
  EnergyTerms terms_;
  EnergyRecord energy_;
};

/// Runs the problem over its span; throws StepFailure (message carries the
/// time) or std::domain_error on non-positive temperature.
SnapshotSeries simulate_1d(const RodProblem& problem, const RodOutput& output);

/// Rod snapshot table: x, eps, v, theta, s, u at cell centres.
Table rod_fields_table(const RodSystem& sys, std::span<const double> packed, std::span<const double> u);

}  // namespace smafv
