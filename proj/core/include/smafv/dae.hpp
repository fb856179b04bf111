#pragma once

// BDF2 time stepping of semi-explicit DAEs  A dU/dt + H(t, U) = 0  with a
// Newton iteration, BiCGSTAB linear solves and inter-layer relaxation.

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "smafv/sparse.hpp"

namespace smafv {

enum class JacobianMode { analytic, finite_difference };

struct StepperConfig {
  double dt = 1.0e-4;
  double omega = 0.85;
  double newton_tol = 1.0e-8;
  int newton_max_iters = 12;
  double krylov_tol = 1.0e-11;
  int krylov_max_iters = 400;
  JacobianMode jacobian_mode = JacobianMode::analytic;

  void validate() const;
  bool operator==(const StepperConfig&) const = default;
};

/// Packed unknowns plus the diagonal of A (1 differential, 0 algebraic).
struct StateVector {
  std::vector<double> u;
  std::vector<std::uint8_t> mask;
};

/// Accepted layers. `latest` is U^n, `older` is U^{n-1}; while `bootstrap`
/// is set only `latest` is used and the step is implicit Euler.
struct History {
  std::vector<double> latest;
  std::vector<double> older;
  bool bootstrap = true;
};

/// A semi-discrete model. `rhs` evaluates H(t, U); `u_prev` is the previous
/// accepted layer, which Steklov-averaged terms depend on.
class DaeSystem {
 public:
  virtual ~DaeSystem() = default;

  virtual std::size_t size() const = 0;
  virtual const std::vector<std::uint8_t>& mask() const = 0;
  virtual void rhs(double t, std::span<const double> u, std::span<const double> u_prev,
                   std::span<double> h) const = 0;

  /// Structure of dH/dU; must contain every diagonal entry.
  virtual CsrMatrix jacobian_pattern() const = 0;
  virtual bool has_analytic_jacobian() const { return false; }
  /// Writes dH/dU into `jac` (pattern from jacobian_pattern()).
  virtual void jacobian(double t, std::span<const double> u, std::span<const double> u_prev,
                        CsrMatrix& jac) const;

  /// Re-imposes algebraic rows after relaxation.
  virtual void close_algebraic(double t, std::span<double> u, std::span<const double> u_prev) const;

  /// Typical magnitude of unknown i, used for finite-difference steps.
  virtual double typical_scale(std::size_t i) const;
};

/// Newton did not converge, or a linear solve failed.
class StepFailure : public std::runtime_error {
 public:
  StepFailure(const std::string& what, std::vector<double> last_iterate, double residual_norm)
      : std::runtime_error(what), last_iterate_(std::move(last_iterate)), residual_norm_(residual_norm) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double residual_norm() const { return residual_norm_; }

 private:
  std::vector<double> last_iterate_;
  double residual_norm_;
};

/// A (3/2 U - 2 U^n + 1/2 U^{n-1}) + dt H(t, U), or A (U - U^n) + dt H in
/// the bootstrap step. Throws std::invalid_argument on missing history.
std::vector<double> bdf2_residual(const DaeSystem& sys, const History& hist,
                                  std::span<const double> candidate, double t, double dt);

struct NewtonResult {
  std::vector<double> u;
  bool converged = false;
  int iterations = 0;
  double residual_norm = 0.0;
  std::string message;
};

using ResidualFunction = std::function<void(std::span<const double>, std::span<double>)>;
/// Fills the Jacobian of the residual at the given point.
using JacobianFunction = std::function<void(std::span<const double>, CsrMatrix&)>;

/// Newton iteration on R(U) = 0 with the Jacobian refreshed every iteration.
/// Converged when ||R||_inf <= cfg.newton_tol. Never throws on
/// non-convergence; inspect `converged`.
NewtonResult newton_solve(const ResidualFunction& residual, const JacobianFunction& jacobian,
                          CsrMatrix& jac, std::vector<double> guess, const StepperConfig& cfg);

struct StepOutcome {
  std::vector<double> raw;      ///< BDF solution before relaxation
  std::vector<double> relaxed;  ///< accepted layer
  int newton_iterations = 0;
  double residual_norm = 0.0;
};

/// One BDF2 (or bootstrap BDF1) step to time `t_new`, then relaxation of
/// differential rows U <- (1 - omega) U^n + omega U* and re-closure of the
/// algebraic rows. Throws StepFailure.
StepOutcome advance_step(const DaeSystem& sys, const History& hist, double t_new,
                         const StepperConfig& cfg);

/// Owns the history of one integration.
class Bdf2Stepper {
 public:
  Bdf2Stepper(const DaeSystem& sys, std::vector<double> initial, double t0, const StepperConfig& cfg);

  /// Advances one step; returns the outcome (raw and relaxed layers).
  const StepOutcome& step();

  double time() const { return t_; }
  long steps_taken() const { return steps_; }
  const std::vector<double>& state() const { return hist_.latest; }
  const History& history() const { return hist_; }
  const StepperConfig& config() const { return cfg_; }
  const StepOutcome& last() const { return last_; }

 private:
  const DaeSystem& sys_;
  StepperConfig cfg_;
  History hist_;
  double t0_;
  double t_;
  long steps_ = 0;
  StepOutcome last_;
  CsrMatrix work_;
  std::vector<int> colors_;
  std::vector<double> scale_;
};

}  // namespace smafv
