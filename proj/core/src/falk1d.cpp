#include "smafv/falk1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "smafv/steklov.hpp"

namespace smafv {
namespace {

double eval_or_zero(const TimeFunction& f, double t) { return f ? f(t) : 0.0; }

// Central difference of a boundary displacement program.
double rate_of(const TimeFunction& f, double t) {
  if (!f) return 0.0;
  const double d = 1e-6;
  return (f(t + d) - f(t - d)) / (2.0 * d);
}

void check_positive_temperature(const RodSystem& sys, std::span<const double> u, double t) {
  for (int i = 0; i < sys.grid().M; ++i) {
    const double th = u[sys.ith(i)];
    if (!(th > 0.0)) {
      throw std::domain_error("non-positive temperature " + std::to_string(th) + " in cell " +
                              std::to_string(i) + " (x=" + std::to_string(sys.grid().cell_x(i)) +
                              ") at t=" + std::to_string(t));
    }
  }
}

}  // namespace

RodSystem::RodSystem(StaggeredGrid grid, MaterialParams1D params, RodLoading loading, RodBCs bcs)
    : grid_(grid), p_(params), load_(std::move(loading)), bcs_(std::move(bcs)), M_(grid.M) {
  if (grid_.N != 1) throw std::invalid_argument("RodSystem: grid must be a rod (N == 1)");
  p_.validate();
  mask_.assign(size(), 0);
  for (int i = 0; i < M_; ++i) {
    mask_[ie(i)] = 1;
    mask_[ith(i)] = 1;
  }
  for (int n = 1; n < M_; ++n) mask_[iv(n)] = 1;
}

double RodSystem::stress(double eps_prev, double eps, double theta) const {
  const LayerPair pr{eps_prev, eps};
  return p_.k1 * (theta - p_.theta1) * eps - 0.25 * p_.k2 * g1_quartic(pr) +
         p_.k3 / 6.0 * g2_sextic(pr);
}

double RodSystem::end_velocity_left(double t) const { return rate_of(bcs_.u_left, t); }
double RodSystem::end_velocity_right(double t) const { return rate_of(bcs_.u_right, t); }
double RodSystem::end_displacement_left(double t) const { return eval_or_zero(bcs_.u_left, t); }
double RodSystem::end_displacement_right(double t) const { return eval_or_zero(bcs_.u_right, t); }

void RodSystem::rhs(double t, std::span<const double> u, std::span<const double> u_prev,
                    std::span<double> h) const {
  const double hx = grid_.hx;
  const double inv_h = 1.0 / hx;
  const double gl = grad_left(t);
  const double gr = grad_right(t);
  for (int i = 0; i < M_; ++i) {
    const double dv = (u[iv(i + 1)] - u[iv(i)]) * inv_h;
    const double e = u[ie(i)];
    const double th = u[ith(i)];
    h[ie(i)] = -dv;

    const double west = i > 0 ? (th - u[ith(i - 1)]) * inv_h : gl;
    const double east = i + 1 < M_ ? (u[ith(i + 1)] - th) * inv_h : gr;
    const double lap = (east - west) * inv_h;
    const double src = heat(grid_.cell_x(i), t);
    h[ith(i)] = -(p_.kappa * lap + p_.k1 * th * e * dv + src) / p_.cv;

    h[is(i)] = u[is(i)] - stress(u_prev[ie(i)], e, th);
  }
  h[iv(0)] = u[iv(0)] - end_velocity_left(t);
  h[iv(M_)] = u[iv(M_)] - end_velocity_right(t);
  for (int n = 1; n < M_; ++n) {
    const double ds = (u[is(n)] - u[is(n - 1)]) * inv_h;
    h[iv(n)] = -(ds + force(grid_.node_x(n), t)) / p_.rho;
  }
}

CsrMatrix RodSystem::jacobian_pattern() const {
  std::vector<std::vector<int>> rows(size());
  for (int i = 0; i < M_; ++i) {
    rows[ie(i)] = {ie(i), iv(i), iv(i + 1)};
    auto& r = rows[ith(i)];
    r = {ith(i), ie(i), iv(i), iv(i + 1)};
    if (i > 0) r.push_back(ith(i - 1));
    if (i + 1 < M_) r.push_back(ith(i + 1));
    rows[is(i)] = {is(i), ie(i), ith(i)};
  }
  rows[iv(0)] = {iv(0)};
  rows[iv(M_)] = {iv(M_)};
  for (int n = 1; n < M_; ++n) rows[iv(n)] = {iv(n), is(n - 1), is(n)};
  return CsrMatrix(rows);
}

void RodSystem::jacobian(double, std::span<const double> u, std::span<const double> u_prev,
                         CsrMatrix& jac) const {
  const double inv_h = 1.0 / grid_.hx;
  const double inv_h2 = inv_h * inv_h;
  const double cv = p_.cv;
  for (int i = 0; i < M_; ++i) {
    jac.add(ie(i), iv(i + 1), -inv_h);
    jac.add(ie(i), iv(i), inv_h);

    const double dv = (u[iv(i + 1)] - u[iv(i)]) * inv_h;
    const double e = u[ie(i)];
    const double th = u[ith(i)];
    double diag = p_.k1 * e * dv;
    if (i > 0) {
      jac.add(ith(i), ith(i - 1), -p_.kappa * inv_h2 / cv);
      diag -= p_.kappa * inv_h2;
    }
    if (i + 1 < M_) {
      jac.add(ith(i), ith(i + 1), -p_.kappa * inv_h2 / cv);
      diag -= p_.kappa * inv_h2;
    }
    jac.add(ith(i), ith(i), -diag / cv);
    jac.add(ith(i), ie(i), -p_.k1 * th * dv / cv);
    jac.add(ith(i), iv(i + 1), -p_.k1 * th * e * inv_h / cv);
    jac.add(ith(i), iv(i), p_.k1 * th * e * inv_h / cv);

    const LayerPair pr{u_prev[ie(i)], e};
    const double ds_de = p_.k1 * (th - p_.theta1) - 0.25 * p_.k2 * g1_quartic_dnext(pr) +
                         p_.k3 / 6.0 * g2_sextic_dnext(pr);
    jac.add(is(i), is(i), 1.0);
    jac.add(is(i), ie(i), -ds_de);
    jac.add(is(i), ith(i), -p_.k1 * e);
  }
  jac.add(iv(0), iv(0), 1.0);
  jac.add(iv(M_), iv(M_), 1.0);
  for (int n = 1; n < M_; ++n) {
    jac.add(iv(n), is(n), -inv_h / p_.rho);
    jac.add(iv(n), is(n - 1), inv_h / p_.rho);
  }
}

void RodSystem::close_algebraic(double t, std::span<double> u, std::span<const double> u_prev) const {
  for (int i = 0; i < M_; ++i) u[is(i)] = stress(u_prev[ie(i)], u[ie(i)], u[ith(i)]);
  u[iv(0)] = end_velocity_left(t);
  u[iv(M_)] = end_velocity_right(t);
}

double RodSystem::typical_scale(std::size_t k) const {
  const int i = static_cast<int>(k);
  if (i < iv(0)) return 0.1;
  if (i < ith(0)) return 1.0;
  if (i < is(0)) return 100.0;
  return 1000.0;
}

std::vector<double> RodSystem::pack(const RodState& s) const {
  if (static_cast<int>(s.eps.size()) != M_ || static_cast<int>(s.v.size()) != M_ + 1 ||
      static_cast<int>(s.theta.size()) != M_ || static_cast<int>(s.s.size()) != M_) {
    throw std::invalid_argument("RodSystem::pack: field lengths do not match the grid");
  }
  std::vector<double> u(size());
  std::copy(s.eps.begin(), s.eps.end(), u.begin() + ie(0));
  std::copy(s.v.begin(), s.v.end(), u.begin() + iv(0));
  std::copy(s.theta.begin(), s.theta.end(), u.begin() + ith(0));
  std::copy(s.s.begin(), s.s.end(), u.begin() + is(0));
  return u;
}

RodState RodSystem::unpack(std::span<const double> u) const {
  if (u.size() != size()) throw std::invalid_argument("RodSystem::unpack: wrong length");
  RodState s;
  s.eps.assign(u.begin() + ie(0), u.begin() + iv(0));
  s.v.assign(u.begin() + iv(0), u.begin() + ith(0));
  s.theta.assign(u.begin() + ith(0), u.begin() + is(0));
  s.s.assign(u.begin() + is(0), u.end());
  return s;
}

EnergyTerms RodSystem::energy_terms(std::span<const double> u, double t) const {
  EnergyTerms e;
  const double hx = grid_.hx;
  for (int n = 0; n <= M_; ++n) {
    const double w = (n == 0 || n == M_) ? 0.5 * hx : hx;
    const double v = u[iv(n)];
    e.kinetic += 0.5 * p_.rho * v * v * w;
    if (n > 0 && n < M_) e.external_work_rate += force(grid_.node_x(n), t) * v * hx;
  }
  for (int i = 0; i < M_; ++i) {
    e.internal += internal_energy_density_1d(p_, u[ie(i)], u[ith(i)]) * hx;
    e.heat_rate += heat(grid_.cell_x(i), t) * hx;
  }
  e.heat_rate += p_.kappa * (grad_right(t) - grad_left(t));
  e.boundary_power = u[is(M_ - 1)] * u[iv(M_)] - u[is(0)] * u[iv(0)];
  return e;
}

std::vector<double> rhs_1d(const RodSystem& sys, const RodState& state, double t,
                           std::span<const double> eps_prev) {
  RodState s = state;
  if (s.s.empty()) s.s.assign(s.eps.size(), 0.0);
  const std::vector<double> u = sys.pack(s);
  std::vector<double> prev = u;
  if (!eps_prev.empty()) {
    if (eps_prev.size() != s.eps.size()) throw std::invalid_argument("rhs_1d: eps_prev has the wrong length");
    std::copy(eps_prev.begin(), eps_prev.end(), prev.begin() + sys.ie(0));
  }
  std::vector<double> h(sys.size());
  sys.rhs(t, u, prev, h);
  const auto& mask = sys.mask();
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (mask[k]) h[k] = -h[k];
  }
  return h;
}

double probe_cells(const StaggeredGrid& grid, std::span<const double> cells, double x) {
  const int m = static_cast<int>(cells.size());
  const double r = x / grid.hx - 0.5;
  if (r <= 0.0) return cells[0];
  if (r >= m - 1) return cells[m - 1];
  const int i = static_cast<int>(std::floor(r));
  const double w = r - i;
  return (1.0 - w) * cells[i] + w * cells[i + 1];
}

double probe_nodes(const StaggeredGrid& grid, std::span<const double> nodes, double x) {
  const int m = static_cast<int>(nodes.size()) - 1;
  const double r = x / grid.hx;
  if (r <= 0.0) return nodes[0];
  if (r >= m) return nodes[m];
  const int i = static_cast<int>(std::floor(r));
  const double w = r - i;
  if (w == 0.0) return nodes[i];
  return (1.0 - w) * nodes[i] + w * nodes[i + 1];
}

namespace {

std::vector<double> closed_initial(const RodSystem& sys, const RodProblem& p) {
  RodState s = p.initial;
  s.s.assign(s.eps.size(), 0.0);
  std::vector<double> u = sys.pack(s);
  sys.close_algebraic(p.t0, u, u);
  for (int i = 0; i < sys.grid().M; ++i) {
    if (!(u[sys.ith(i)] > 0.0)) throw std::domain_error("initial temperature must be positive");
  }
  return u;
}

}  // namespace

RodSimulation::RodSimulation(RodProblem problem)
    : prob_(std::move(problem)),
      sys_(prob_.grid, prob_.params, prob_.loading, prob_.bcs),
      stepper_(sys_, closed_initial(sys_, prob_), prob_.t0, prob_.stepper) {
  u_ = prob_.initial.u;
  if (u_.empty()) u_.assign(prob_.grid.M + 1, 0.0);
  if (static_cast<int>(u_.size()) != prob_.grid.M + 1) {
    throw std::invalid_argument("RodSimulation: initial displacement has the wrong length");
  }
  terms_ = sys_.energy_terms(stepper_.state(), prob_.t0);
  energy_ = energy_snapshot(terms_, prob_.t0);
}

void RodSimulation::step() {
  const StepOutcome& out = stepper_.step();
  const double dt = prob_.stepper.dt;
  const double w = prob_.stepper.omega;
  const bool first = stepper_.steps_taken() == 1;
  std::vector<double> next(u_.size());
  for (std::size_t n = 0; n < u_.size(); ++n) {
    const double v = out.raw[sys_.iv(static_cast<int>(n))];
    const double raw = first ? u_[n] + dt * v : (2.0 * u_[n] - 0.5 * u_older_[n] + dt * v) / 1.5;
    next[n] = (1.0 - w) * u_[n] + w * raw;
  }
  u_older_ = std::move(u_);
  u_ = std::move(next);
  check_positive_temperature(sys_, stepper_.state(), stepper_.time());
  const EnergyTerms terms = sys_.energy_terms(stepper_.state(), stepper_.time());
  energy_ = energy_audit(terms_, terms, stepper_.time(), dt);
  terms_ = terms;
}

RodState RodSimulation::state() const {
  RodState s = sys_.unpack(stepper_.state());
  s.u = u_;
  return s;
}

Table rod_fields_table(const RodSystem& sys, std::span<const double> packed, std::span<const double> u) {
  Table t;
  t.columns = {"x", "eps", "v", "theta", "s", "u"};
  const int m = sys.grid().M;
  for (int i = 0; i < m; ++i) {
    t.rows.push_back({sys.grid().cell_x(i), packed[sys.ie(i)],
                      0.5 * (packed[sys.iv(i)] + packed[sys.iv(i + 1)]), packed[sys.ith(i)],
                      packed[sys.is(i)], 0.5 * (u[i] + u[i + 1])});
  }
  return t;
}

namespace {

long steps_for(double t, double t0, double dt) { return std::lround((t - t0) / dt); }

std::vector<double> energy_row(const EnergyRecord& r) {
  return {r.t, r.kinetic, r.internal, r.total, r.external_work_rate, r.heat_rate, r.boundary_power, r.residual};
}

}  // namespace

SnapshotSeries simulate_1d(const RodProblem& problem, const RodOutput& output) {
  if (output.probe_every < 1 || output.energy_every < 1) {
    throw std::invalid_argument("simulate_1d: output cadences must be at least 1");
  }
  RodSimulation sim(problem);
  const double dt = problem.stepper.dt;
  const long total = steps_for(problem.t0 + problem.span, problem.t0, dt);

  SnapshotSeries series;
  series.probes.columns = {"t", "F", "u", "eps", "theta", "s", "v"};
  series.energy.columns = {"t", "kinetic", "internal", "total", "external_work_rate", "heat_rate",
                           "boundary_power", "residual"};

  std::vector<std::pair<long, double>> snaps;
  for (double ts : output.snapshot_times) snaps.emplace_back(steps_for(ts, problem.t0, dt), ts);
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;

  const auto& grid = problem.grid;
  auto record = [&](long k) {
    const auto& packed = sim.packed();
    const double t = sim.time();
    auto cells = [&](int offset) {
      return std::span<const double>(packed.data() + offset, static_cast<std::size_t>(grid.M));
    };
    if (k % output.probe_every == 0) {
      const double drive = problem.loading.F ? problem.loading.F(output.probe_x, t) : 0.0;
      const std::span<const double> v(packed.data() + sim.system().iv(0), static_cast<std::size_t>(grid.M + 1));
      series.probes.rows.push_back({t, drive, probe_nodes(grid, sim.displacement(), output.probe_x),
                                    probe_cells(grid, cells(sim.system().ie(0)), output.probe_x),
                                    probe_cells(grid, cells(sim.system().ith(0)), output.probe_x),
                                    probe_cells(grid, cells(sim.system().is(0)), output.probe_x),
                                    probe_nodes(grid, v, output.probe_x)});
    }
    if (k % output.energy_every == 0) series.energy.rows.push_back(energy_row(sim.last_energy()));
    while (next_snap < snaps.size() && snaps[next_snap].first == k) {
      series.snapshots.push_back({snaps[next_snap].second, rod_fields_table(sim.system(), packed, sim.displacement())});
      ++next_snap;
    }
    while (next_snap < snaps.size() && snaps[next_snap].first < k) ++next_snap;
  };

  record(0);
  for (long k = 1; k <= total; ++k) {
    sim.step();
    record(k);
  }
  return series;
}

}  // namespace smafv
