#include "smafv/dae.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smafv {
namespace {

double inf_norm(std::span<const double> r) {
  double m = 0.0;
  for (double x : r) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(x));
  }
  return m;
}

void check_history(const DaeSystem& sys, const History& hist) {
  if (hist.latest.size() != sys.size()) {
    throw std::invalid_argument("history: latest layer has the wrong length");
  }
  if (!hist.bootstrap && hist.older.size() != sys.size()) {
    throw std::invalid_argument("history: BDF2 step needs two accepted layers (set bootstrap for the first step)");
  }
}

// R = A (c U - b) + dt H where c, b come from BDF1 or BDF2.
void bdf_residual_into(const DaeSystem& sys, const History& hist, std::span<const double> u,
                       double t, double dt, std::span<double> out) {
  const auto& mask = sys.mask();
  sys.rhs(t, u, hist.latest, out);
  const std::size_t n = sys.size();
  if (hist.bootstrap) {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] *= dt;
      if (mask[i]) out[i] += u[i] - hist.latest[i];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] *= dt;
      if (mask[i]) out[i] += 1.5 * u[i] - 2.0 * hist.latest[i] + 0.5 * hist.older[i];
    }
  }
}

// Shared by advance_step and Bdf2Stepper; `work` holds the Jacobian pattern.
StepOutcome advance_impl(const DaeSystem& sys, const History& hist, double t_new,
                         const StepperConfig& cfg, CsrMatrix& work, const std::vector<int>& colors,
                         const std::vector<double>& scale) {
  check_history(sys, hist);
  const double dt = cfg.dt;
  const double c = hist.bootstrap ? 1.0 : 1.5;
  const auto& mask = sys.mask();
  const bool analytic = cfg.jacobian_mode == JacobianMode::analytic && sys.has_analytic_jacobian();

  ResidualFunction residual = [&](std::span<const double> u, std::span<double> r) {
    bdf_residual_into(sys, hist, u, t_new, dt, r);
  };
  JacobianFunction jacobian = [&](std::span<const double> u, CsrMatrix& jac) {
    if (analytic) {
      jac.set_zero();
      sys.jacobian(t_new, u, hist.latest, jac);
      for (double& v : jac.values()) v *= dt;
      for (std::size_t i = 0; i < sys.size(); ++i) {
        if (mask[i]) jac.add(static_cast<int>(i), static_cast<int>(i), c);
      }
    } else {
      fd_jacobian(residual, u, scale, colors, jac);
    }
  };

  NewtonResult nr = newton_solve(residual, jacobian, work, hist.latest, cfg);
  if (!nr.converged) {
    throw StepFailure("step to t=" + std::to_string(t_new) + " failed: " + nr.message, std::move(nr.u),
                      nr.residual_norm);
  }

  StepOutcome out;
  out.raw = nr.u;
  out.relaxed = nr.u;
  out.newton_iterations = nr.iterations;
  out.residual_norm = nr.residual_norm;
  if (cfg.omega != 1.0) {
    for (std::size_t i = 0; i < sys.size(); ++i) {
      if (mask[i]) out.relaxed[i] = (1.0 - cfg.omega) * hist.latest[i] + cfg.omega * nr.u[i];
    }
    sys.close_algebraic(t_new, out.relaxed, hist.latest);
  }
  return out;
}

}  // namespace

void StepperConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("stepper: dt must be positive");
  if (!(omega > 0.0 && omega <= 1.0)) throw std::invalid_argument("stepper: omega must lie in (0, 1]");
  if (!(newton_tol > 0.0) || !(krylov_tol > 0.0)) {
    throw std::invalid_argument("stepper: tolerances must be positive");
  }
  if (newton_max_iters < 1 || krylov_max_iters < 1) {
    throw std::invalid_argument("stepper: iteration limits must be at least 1");
  }
}

void DaeSystem::jacobian(double, std::span<const double>, std::span<const double>, CsrMatrix&) const {
  throw std::logic_error("this model has no analytic Jacobian");
}

void DaeSystem::close_algebraic(double, std::span<double>, std::span<const double>) const {}

double DaeSystem::typical_scale(std::size_t) const { return 1.0; }

std::vector<double> bdf2_residual(const DaeSystem& sys, const History& hist,
                                  std::span<const double> candidate, double t, double dt) {
  check_history(sys, hist);
  if (candidate.size() != sys.size()) throw std::invalid_argument("bdf2_residual: candidate has the wrong length");
  std::vector<double> r(sys.size());
  bdf_residual_into(sys, hist, candidate, t, dt, r);
  return r;
}

NewtonResult newton_solve(const ResidualFunction& residual, const JacobianFunction& jacobian,
                          CsrMatrix& jac, std::vector<double> guess, const StepperConfig& cfg) {
  NewtonResult res;
  res.u = std::move(guess);
  const std::size_t n = res.u.size();
  std::vector<double> r(n), delta(n);
  for (int it = 0;; ++it) {
    residual(res.u, r);
    res.residual_norm = inf_norm(r);
    res.iterations = it;
    if (!std::isfinite(res.residual_norm)) {
      res.message = "non-finite residual after " + std::to_string(it) + " Newton iterations";
      return res;
    }
    if (res.residual_norm <= cfg.newton_tol) {
      res.converged = true;
      return res;
    }
    if (it == cfg.newton_max_iters) {
      res.message = "no convergence in " + std::to_string(it) + " Newton iterations, |R|inf=" +
                    std::to_string(res.residual_norm);
      return res;
    }
    jacobian(res.u, jac);
    for (std::size_t i = 0; i < n; ++i) r[i] = -r[i];
    std::fill(delta.begin(), delta.end(), 0.0);
    const KrylovResult kr = bicgstab(jac, r, delta, cfg.krylov_tol, cfg.krylov_max_iters);
    if (!kr.converged) {
      res.message = "linear solve failed in Newton iteration " + std::to_string(it + 1) + ": " + kr.reason;
      return res;
    }
    for (std::size_t i = 0; i < n; ++i) res.u[i] += delta[i];
  }
}

StepOutcome advance_step(const DaeSystem& sys, const History& hist, double t_new,
                         const StepperConfig& cfg) {
  cfg.validate();
  CsrMatrix work = sys.jacobian_pattern();
  std::vector<int> colors;
  std::vector<double> scale(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) scale[i] = sys.typical_scale(i);
  if (cfg.jacobian_mode == JacobianMode::finite_difference || !sys.has_analytic_jacobian()) {
    colors = color_columns(work);
  }
  return advance_impl(sys, hist, t_new, cfg, work, colors, scale);
}

Bdf2Stepper::Bdf2Stepper(const DaeSystem& sys, std::vector<double> initial, double t0,
                         const StepperConfig& cfg)
    : sys_(sys), cfg_(cfg), t0_(t0), t_(t0) {
  cfg_.validate();
  if (initial.size() != sys.size()) throw std::invalid_argument("stepper: initial state has the wrong length");
  hist_.latest = std::move(initial);
  hist_.bootstrap = true;
  work_ = sys.jacobian_pattern();
  scale_.resize(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) scale_[i] = sys.typical_scale(i);
  if (cfg_.jacobian_mode == JacobianMode::finite_difference || !sys.has_analytic_jacobian()) {
    colors_ = color_columns(work_);
  }
}

const StepOutcome& Bdf2Stepper::step() {
  const double t_new = t0_ + static_cast<double>(steps_ + 1) * cfg_.dt;
  last_ = advance_impl(sys_, hist_, t_new, cfg_, work_, colors_, scale_);
  hist_.older = std::move(hist_.latest);
  hist_.latest = last_.relaxed;
  hist_.bootstrap = false;
  ++steps_;
  t_ = t_new;
  return last_;
}

}  // namespace smafv
