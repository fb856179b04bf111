#include "smafv/patch2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "smafv/steklov.hpp"

namespace smafv {
namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

}  // namespace

PatchBCs PatchBCs::roller() { return {true, false, false, true}; }

PatchBCs PatchBCs::clamped() { return {true, true, true, true}; }

double coupling_source(double coefficient, double theta, double e2, double de2dt) {
  return coefficient * theta * e2 * de2dt;
}

PatchSystem::PatchSystem(StaggeredGrid grid, MaterialParams2D params, PatchLoading loading, PatchBCs bcs,
                         CouplingForm coupling)
    : grid_(grid),
      p_(params),
      load_(std::move(loading)),
      bcs_(bcs),
      coupling_(coupling),
      M_(grid.M),
      N_(grid.N),
      C_(grid.M * grid.N),
      N_nodes_((grid.M + 1) * (grid.N + 1)) {
  if (M_ < 2 || N_ < 2) throw std::invalid_argument("PatchSystem: needs at least 2 cells per direction");
  p_.validate();
  n_ = static_cast<std::size_t>(6 * C_ + 2 * N_nodes_);
  mask_.assign(n_, 0);
  for (int c = 0; c < C_; ++c) {
    mask_[ie1(c)] = 1;
    mask_[ie2(c)] = 1;
    mask_[ith(c)] = 1;
    mask_[is12(c)] = 1;
  }
  even_.resize(N_nodes_);
  odd_.resize(N_nodes_);
  for (int j = 0; j <= N_; ++j) {
    for (int i = 0; i <= M_; ++i) {
      const int n = node(i, j);
      mask_[iv1(n)] = v1_free(i, j) ? 1 : 0;
      mask_[iv2(n)] = v2_free(i, j) ? 1 : 0;
      even_[n] = build_stencil(i, j, 1.0);
      odd_[n] = build_stencil(i, j, -1.0);
    }
  }
}

bool PatchSystem::v1_free(int i, int j) const {
  const bool x_edge = i == 0 || i == M_;
  const bool y_edge = j == 0 || j == N_;
  return !(x_edge && bcs_.v1_fixed_on_x_edges) && !(y_edge && bcs_.v1_fixed_on_y_edges);
}

bool PatchSystem::v2_free(int i, int j) const {
  const bool x_edge = i == 0 || i == M_;
  const bool y_edge = j == 0 || j == N_;
  return !(x_edge && bcs_.v2_fixed_on_x_edges) && !(y_edge && bcs_.v2_fixed_on_y_edges);
}

PatchSystem::NodeStencil PatchSystem::build_stencil(int i, int j, double parity) const {
  NodeStencil st;
  const double wx = 1.0 / (2.0 * grid_.hx);
  const double wy = 1.0 / (2.0 * grid_.hy);
  for (int cj = j - 1; cj <= j; ++cj) {
    for (int ci = i - 1; ci <= i; ++ci) {
      double sign = 1.0;
      int mi = ci;
      int mj = cj;
      // Ghost cells mirror the adjacent interior cell.
      if (mi < 0) { mi = 0; sign *= parity; }
      if (mi >= M_) { mi = M_ - 1; sign *= parity; }
      if (mj < 0) { mj = 0; sign *= parity; }
      if (mj >= N_) { mj = N_ - 1; sign *= parity; }
      const int c = cell(mi, mj);
      const double ax = (ci == i ? wx : -wx) * sign;
      const double ay = (cj == j ? wy : -wy) * sign;
      int k = 0;
      while (k < st.count && st.cells[k] != c) ++k;
      if (k == st.count) {
        st.cells[k] = c;
        st.cx[k] = 0.0;
        st.cy[k] = 0.0;
        ++st.count;
      }
      st.cx[k] += ax;
      st.cy[k] += ay;
    }
  }
  return st;
}

std::array<double, 2> PatchSystem::grad(std::span<const double> u, int offset, int i, int j) const {
  const double a = u[offset + node(i, j)];
  const double b = u[offset + node(i + 1, j)];
  const double c = u[offset + node(i, j + 1)];
  const double d = u[offset + node(i + 1, j + 1)];
  return {((b + d) - (a + c)) / (2.0 * grid_.hx), ((c + d) - (a + b)) / (2.0 * grid_.hy)};
}

double PatchSystem::coupling_coefficient() const {
  return coupling_ == CouplingForm::a2 ? p_.a2 : 0.5 * std::sqrt(p_.a2);
}

std::array<double, 2> PatchSystem::normal_stresses(double e1, double e2_prev, double e2, double theta) const {
  const LayerPair pr{e2_prev, e2};
  const double dev = p_.a2 * (theta - p_.theta0) * e2 - 0.25 * p_.a4 * g1_quartic(pr) +
                     p_.a6 / 6.0 * g2_sextic(pr);
  const double dil = p_.a1 * e1;
  return {kSqrtHalf * (dil + dev), kSqrtHalf * (dil - dev)};
}

void PatchSystem::rhs(double t, std::span<const double> u, std::span<const double> u_prev,
                      std::span<double> h) const {
  const double ihx2 = 1.0 / (grid_.hx * grid_.hx);
  const double ihy2 = 1.0 / (grid_.hy * grid_.hy);
  const double coef = coupling_coefficient();
  const int v1o = iv1(0);
  const int v2o = iv2(0);
  for (int j = 0; j < N_; ++j) {
    for (int i = 0; i < M_; ++i) {
      const int c = cell(i, j);
      const auto g1 = grad(u, v1o, i, j);
      const auto g2 = grad(u, v2o, i, j);
      const double de1 = (g1[0] + g2[1]) * kSqrtHalf;
      const double de2 = (g1[0] - g2[1]) * kSqrtHalf;
      h[ie1(c)] = -de1;
      h[ie2(c)] = -de2;
      h[is12(c)] = -0.25 * p_.a3 * (g1[1] + g2[0]);

      const double th = u[ith(c)];
      double lap = 0.0;
      if (i > 0) lap += (u[ith(c - 1)] - th) * ihx2;
      if (i + 1 < M_) lap += (u[ith(c + 1)] - th) * ihx2;
      if (j > 0) lap += (u[ith(c - M_)] - th) * ihy2;
      if (j + 1 < N_) lap += (u[ith(c + M_)] - th) * ihy2;
      const double e2 = u[ie2(c)];
      const double src = gsrc(grid_.cell_x(i), grid_.cell_y(j), t);
      h[ith(c)] = -(p_.kappa * lap + coupling_source(coef, th, e2, de2) + src) / p_.cv;

      const auto sn = normal_stresses(u[ie1(c)], u_prev[ie2(c)], e2, th);
      h[is11(c)] = u[is11(c)] - sn[0];
      h[is22(c)] = u[is22(c)] - sn[1];
    }
  }
  for (int j = 0; j <= N_; ++j) {
    for (int i = 0; i <= M_; ++i) {
      const int n = node(i, j);
      const double x = grid_.node_x(i);
      const double y = grid_.node_y(j);
      const NodeStencil& ev = even_[n];
      const NodeStencil& od = odd_[n];
      if (mask_[iv1(n)]) {
        double div = 0.0;
        for (int k = 0; k < ev.count; ++k) div += ev.cx[k] * u[is11(ev.cells[k])];
        for (int k = 0; k < od.count; ++k) div += od.cy[k] * u[is12(od.cells[k])];
        h[iv1(n)] = -(div + f1(x, y, t)) / p_.rho;
      } else {
        h[iv1(n)] = u[iv1(n)];
      }
      if (mask_[iv2(n)]) {
        double div = 0.0;
        for (int k = 0; k < od.count; ++k) div += od.cx[k] * u[is12(od.cells[k])];
        for (int k = 0; k < ev.count; ++k) div += ev.cy[k] * u[is22(ev.cells[k])];
        h[iv2(n)] = -(div + f2(x, y, t)) / p_.rho;
      } else {
        h[iv2(n)] = u[iv2(n)];
      }
    }
  }
}

CsrMatrix PatchSystem::jacobian_pattern() const {
  std::vector<std::vector<int>> rows(n_);
  for (int j = 0; j < N_; ++j) {
    for (int i = 0; i < M_; ++i) {
      const int c = cell(i, j);
      const int corners[4] = {node(i, j), node(i + 1, j), node(i, j + 1), node(i + 1, j + 1)};
      std::vector<int> vel;
      for (int n : corners) {
        vel.push_back(iv1(n));
        vel.push_back(iv2(n));
      }
      for (int r : {ie1(c), ie2(c), is12(c)}) {
        rows[r] = vel;
        rows[r].push_back(r);
      }
      auto& rt = rows[ith(c)];
      rt = vel;
      rt.push_back(ith(c));
      rt.push_back(ie2(c));
      if (i > 0) rt.push_back(ith(c - 1));
      if (i + 1 < M_) rt.push_back(ith(c + 1));
      if (j > 0) rt.push_back(ith(c - M_));
      if (j + 1 < N_) rt.push_back(ith(c + M_));
      rows[is11(c)] = {is11(c), ie1(c), ie2(c), ith(c)};
      rows[is22(c)] = {is22(c), ie1(c), ie2(c), ith(c)};
    }
  }
  for (int n = 0; n < N_nodes_; ++n) {
    rows[iv1(n)] = {iv1(n)};
    rows[iv2(n)] = {iv2(n)};
    if (mask_[iv1(n)]) {
      for (int k = 0; k < even_[n].count; ++k) rows[iv1(n)].push_back(is11(even_[n].cells[k]));
      for (int k = 0; k < odd_[n].count; ++k) rows[iv1(n)].push_back(is12(odd_[n].cells[k]));
    }
    if (mask_[iv2(n)]) {
      for (int k = 0; k < odd_[n].count; ++k) rows[iv2(n)].push_back(is12(odd_[n].cells[k]));
      for (int k = 0; k < even_[n].count; ++k) rows[iv2(n)].push_back(is22(even_[n].cells[k]));
    }
  }
  return CsrMatrix(rows);
}

void PatchSystem::jacobian(double, std::span<const double> u, std::span<const double> u_prev,
                           CsrMatrix& jac) const {
  const double ihx2 = 1.0 / (grid_.hx * grid_.hx);
  const double ihy2 = 1.0 / (grid_.hy * grid_.hy);
  const double wx = 1.0 / (2.0 * grid_.hx);
  const double wy = 1.0 / (2.0 * grid_.hy);
  const double coef = coupling_coefficient();
  const double cv = p_.cv;
  // Corner order: (i,j), (i+1,j), (i,j+1), (i+1,j+1).
  const double gx[4] = {-wx, wx, -wx, wx};
  const double gy[4] = {-wy, -wy, wy, wy};
  for (int j = 0; j < N_; ++j) {
    for (int i = 0; i < M_; ++i) {
      const int c = cell(i, j);
      const int corners[4] = {node(i, j), node(i + 1, j), node(i, j + 1), node(i + 1, j + 1)};
      const auto g1 = grad(u, iv1(0), i, j);
      const auto g2 = grad(u, iv2(0), i, j);
      const double de2 = (g1[0] - g2[1]) * kSqrtHalf;
      const double th = u[ith(c)];
      const double e2 = u[ie2(c)];
      const double te = coef * th * e2 / cv;
      for (int k = 0; k < 4; ++k) {
        const int n1 = iv1(corners[k]);
        const int n2 = iv2(corners[k]);
        jac.add(ie1(c), n1, -gx[k] * kSqrtHalf);
        jac.add(ie1(c), n2, -gy[k] * kSqrtHalf);
        jac.add(ie2(c), n1, -gx[k] * kSqrtHalf);
        jac.add(ie2(c), n2, gy[k] * kSqrtHalf);
        jac.add(is12(c), n1, -0.25 * p_.a3 * gy[k]);
        jac.add(is12(c), n2, -0.25 * p_.a3 * gx[k]);
        jac.add(ith(c), n1, -te * gx[k] * kSqrtHalf);
        jac.add(ith(c), n2, te * gy[k] * kSqrtHalf);
      }
      double diag = coef * e2 * de2;
      auto neighbour = [&](int other, double w) {
        jac.add(ith(c), ith(other), -p_.kappa * w / cv);
        diag -= p_.kappa * w;
      };
      if (i > 0) neighbour(c - 1, ihx2);
      if (i + 1 < M_) neighbour(c + 1, ihx2);
      if (j > 0) neighbour(c - M_, ihy2);
      if (j + 1 < N_) neighbour(c + M_, ihy2);
      jac.add(ith(c), ith(c), -diag / cv);
      jac.add(ith(c), ie2(c), -coef * th * de2 / cv);

      const LayerPair pr{u_prev[ie2(c)], e2};
      const double ddev = p_.a2 * (th - p_.theta0) - 0.25 * p_.a4 * g1_quartic_dnext(pr) +
                          p_.a6 / 6.0 * g2_sextic_dnext(pr);
      jac.add(is11(c), is11(c), 1.0);
      jac.add(is11(c), ie1(c), -kSqrtHalf * p_.a1);
      jac.add(is11(c), ie2(c), -kSqrtHalf * ddev);
      jac.add(is11(c), ith(c), -kSqrtHalf * p_.a2 * e2);
      jac.add(is22(c), is22(c), 1.0);
      jac.add(is22(c), ie1(c), -kSqrtHalf * p_.a1);
      jac.add(is22(c), ie2(c), kSqrtHalf * ddev);
      jac.add(is22(c), ith(c), kSqrtHalf * p_.a2 * e2);
    }
  }
  const double ir = 1.0 / p_.rho;
  for (int n = 0; n < N_nodes_; ++n) {
    const NodeStencil& ev = even_[n];
    const NodeStencil& od = odd_[n];
    if (mask_[iv1(n)]) {
      for (int k = 0; k < ev.count; ++k) jac.add(iv1(n), is11(ev.cells[k]), -ev.cx[k] * ir);
      for (int k = 0; k < od.count; ++k) jac.add(iv1(n), is12(od.cells[k]), -od.cy[k] * ir);
    } else {
      jac.add(iv1(n), iv1(n), 1.0);
    }
    if (mask_[iv2(n)]) {
      for (int k = 0; k < od.count; ++k) jac.add(iv2(n), is12(od.cells[k]), -od.cx[k] * ir);
      for (int k = 0; k < ev.count; ++k) jac.add(iv2(n), is22(ev.cells[k]), -ev.cy[k] * ir);
    } else {
      jac.add(iv2(n), iv2(n), 1.0);
    }
  }
}

void PatchSystem::close_algebraic(double, std::span<double> u, std::span<const double> u_prev) const {
  for (int c = 0; c < C_; ++c) {
    const auto sn = normal_stresses(u[ie1(c)], u_prev[ie2(c)], u[ie2(c)], u[ith(c)]);
    u[is11(c)] = sn[0];
    u[is22(c)] = sn[1];
  }
  for (int n = 0; n < N_nodes_; ++n) {
    if (!mask_[iv1(n)]) u[iv1(n)] = 0.0;
    if (!mask_[iv2(n)]) u[iv2(n)] = 0.0;
  }
}

double PatchSystem::typical_scale(std::size_t k) const {
  const int i = static_cast<int>(k);
  if (i < ith(0)) return 0.1;
  if (i < is11(0)) return 100.0;
  if (i < iv1(0)) return 1000.0;
  return 1.0;
}

std::vector<double> PatchSystem::pack(const PatchState& s) const {
  auto check = [&](const GridField& f, bool nodes, const char* name) {
    const int nx = nodes ? M_ + 1 : M_;
    const int ny = nodes ? N_ + 1 : N_;
    if (f.nx() != nx || f.ny() != ny) {
      throw std::invalid_argument(std::string("PatchSystem::pack: field ") + name + " does not match the grid");
    }
  };
  check(s.e1, false, "e1");
  check(s.e2, false, "e2");
  check(s.e3, false, "e3");
  check(s.theta, false, "theta");
  check(s.s11, false, "s11");
  check(s.s22, false, "s22");
  check(s.v1, true, "v1");
  check(s.v2, true, "v2");
  std::vector<double> u(n_);
  for (int c = 0; c < C_; ++c) {
    u[ie1(c)] = s.e1.values()[c];
    u[ie2(c)] = s.e2.values()[c];
    u[ith(c)] = s.theta.values()[c];
    u[is11(c)] = s.s11.values()[c];
    u[is12(c)] = 0.5 * p_.a3 * s.e3.values()[c];
    u[is22(c)] = s.s22.values()[c];
  }
  for (int n = 0; n < N_nodes_; ++n) {
    u[iv1(n)] = s.v1.values()[n];
    u[iv2(n)] = s.v2.values()[n];
  }
  return u;
}

PatchState PatchSystem::unpack(std::span<const double> u) const {
  if (u.size() != n_) throw std::invalid_argument("PatchSystem::unpack: wrong length");
  PatchState s;
  for (GridField* f : {&s.e1, &s.e2, &s.e3, &s.theta, &s.s11, &s.s12, &s.s22}) *f = make_cell_field(grid_);
  s.v1 = make_node_field(grid_);
  s.v2 = make_node_field(grid_);
  for (int c = 0; c < C_; ++c) {
    s.e1.values()[c] = u[ie1(c)];
    s.e2.values()[c] = u[ie2(c)];
    s.theta.values()[c] = u[ith(c)];
    s.s11.values()[c] = u[is11(c)];
    s.s12.values()[c] = u[is12(c)];
    s.s22.values()[c] = u[is22(c)];
    s.e3.values()[c] = 2.0 * u[is12(c)] / p_.a3;
  }
  for (int n = 0; n < N_nodes_; ++n) {
    s.v1.values()[n] = u[iv1(n)];
    s.v2.values()[n] = u[iv2(n)];
  }
  return s;
}

EnergyTerms PatchSystem::energy_terms(std::span<const double> u, double t) const {
  EnergyTerms e;
  const double area = grid_.hx * grid_.hy;
  for (int j = 0; j <= N_; ++j) {
    for (int i = 0; i <= M_; ++i) {
      const int n = node(i, j);
      const double w = node_weight(grid_, i, j);
      const double a = u[iv1(n)];
      const double b = u[iv2(n)];
      e.kinetic += 0.5 * p_.rho * (a * a + b * b) * w;
      const double x = grid_.node_x(i);
      const double y = grid_.node_y(j);
      e.external_work_rate += (f1(x, y, t) * a + f2(x, y, t) * b) * w;
    }
  }
  for (int j = 0; j < N_; ++j) {
    for (int i = 0; i < M_; ++i) {
      const int c = cell(i, j);
      const StrainTriple st{u[ie1(c)], u[ie2(c)], 2.0 * u[is12(c)] / p_.a3};
      e.internal += internal_energy_density_2d(p_, st, u[ith(c)]) * area;
      e.heat_rate += gsrc(grid_.cell_x(i), grid_.cell_y(j), t) * area;
    }
  }
  return e;
}

std::vector<double> rhs_2d(const PatchSystem& sys, const PatchState& state, double t,
                           std::span<const double> e2_prev) {
  PatchState s = state;
  if (s.s11.values().empty()) s.s11 = make_cell_field(sys.grid());
  if (s.s22.values().empty()) s.s22 = make_cell_field(sys.grid());
  if (s.e3.values().empty()) s.e3 = make_cell_field(sys.grid());
  const std::vector<double> u = sys.pack(s);
  std::vector<double> prev = u;
  if (!e2_prev.empty()) {
    if (e2_prev.size() != static_cast<std::size_t>(sys.grid().cell_count())) {
      throw std::invalid_argument("rhs_2d: e2_prev has the wrong length");
    }
    std::copy(e2_prev.begin(), e2_prev.end(), prev.begin() + sys.ie2(0));
  }
  std::vector<double> h(sys.size());
  sys.rhs(t, u, prev, h);
  const auto& mask = sys.mask();
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (mask[k]) h[k] = -h[k];
  }
  return h;
}

namespace {

std::vector<double> initial_state(const PatchSystem& sys, const PatchProblem& p) {
  std::vector<double> u;
  if (!p.initial_packed.empty()) {
    if (p.initial_packed.size() != sys.size()) throw std::invalid_argument("initial state has the wrong length");
    u = p.initial_packed;
  } else {
    u.assign(sys.size(), 0.0);
    for (int c = 0; c < sys.grid().cell_count(); ++c) u[sys.ith(c)] = p.theta_initial;
  }
  sys.close_algebraic(p.t0, u, u);
  for (int c = 0; c < sys.grid().cell_count(); ++c) {
    if (!(u[sys.ith(c)] > 0.0)) throw std::domain_error("initial temperature must be positive");
  }
  return u;
}

void check_positive_temperature(const PatchSystem& sys, std::span<const double> u, double t) {
  const auto& g = sys.grid();
  for (int j = 0; j < g.N; ++j) {
    for (int i = 0; i < g.M; ++i) {
      const double th = u[sys.ith(sys.cell(i, j))];
      if (!(th > 0.0)) {
        throw std::domain_error("non-positive temperature " + std::to_string(th) + " in cell (" +
                                std::to_string(i) + "," + std::to_string(j) + ") at t=" + std::to_string(t));
      }
    }
  }
}

}  // namespace

PatchSimulation::PatchSimulation(PatchProblem problem)
    : prob_(std::move(problem)),
      sys_(prob_.grid, prob_.params, prob_.loading, prob_.bcs, prob_.coupling),
      stepper_(sys_, initial_state(sys_, prob_), prob_.t0, prob_.stepper) {
  const std::size_t nodes = static_cast<std::size_t>(prob_.grid.node_count());
  u1_.assign(nodes, 0.0);
  u2_.assign(nodes, 0.0);
  terms_ = sys_.energy_terms(stepper_.state(), prob_.t0);
  energy_ = energy_snapshot(terms_, prob_.t0);
}

void PatchSimulation::step() {
  const StepOutcome& out = stepper_.step();
  const double dt = prob_.stepper.dt;
  const double w = prob_.stepper.omega;
  const bool first = stepper_.steps_taken() == 1;
  auto advance = [&](std::vector<double>& u, std::vector<double>& older, int offset) {
    std::vector<double> next(u.size());
    for (std::size_t n = 0; n < u.size(); ++n) {
      const double v = out.raw[offset + n];
      const double raw = first ? u[n] + dt * v : (2.0 * u[n] - 0.5 * older[n] + dt * v) / 1.5;
      next[n] = (1.0 - w) * u[n] + w * raw;
    }
    older = std::move(u);
    u = std::move(next);
  };
  advance(u1_, u1_older_, sys_.iv1(0));
  advance(u2_, u2_older_, sys_.iv2(0));
  check_positive_temperature(sys_, stepper_.state(), stepper_.time());
  const EnergyTerms terms = sys_.energy_terms(stepper_.state(), stepper_.time());
  energy_ = energy_audit(terms_, terms, stepper_.time(), dt);
  terms_ = terms;
}

PatchState PatchSimulation::state() const {
  PatchState s = sys_.unpack(stepper_.state());
  s.u1 = make_node_field(prob_.grid);
  s.u2 = make_node_field(prob_.grid);
  s.u1.values() = u1_;
  s.u2.values() = u2_;
  return s;
}

Table patch_fields_table(const PatchSystem& sys, std::span<const double> packed) {
  Table t;
  t.columns = {"x", "y", "e1", "e2", "e3", "theta", "s11", "s12", "s22"};
  const auto& g = sys.grid();
  const double a3 = sys.params().a3;
  for (int j = 0; j < g.N; ++j) {
    for (int i = 0; i < g.M; ++i) {
      const int c = sys.cell(i, j);
      t.rows.push_back({g.cell_x(i), g.cell_y(j), packed[sys.ie1(c)], packed[sys.ie2(c)],
                        2.0 * packed[sys.is12(c)] / a3, packed[sys.ith(c)], packed[sys.is11(c)],
                        packed[sys.is12(c)], packed[sys.is22(c)]});
    }
  }
  return t;
}

namespace {

long steps_for(double t, double t0, double dt) { return std::lround((t - t0) / dt); }

// Value of a cell field on the horizontal line y (linear between cell rows).
double cell_line(const PatchSystem& sys, std::span<const double> u, int offset, int i, double y) {
  const auto& g = sys.grid();
  const double r = y / g.hy - 0.5;
  if (r <= 0.0) return u[offset + sys.cell(i, 0)];
  if (r >= g.N - 1) return u[offset + sys.cell(i, g.N - 1)];
  const int j = static_cast<int>(std::floor(r));
  const double w = r - j;
  return (1.0 - w) * u[offset + sys.cell(i, j)] + w * u[offset + sys.cell(i, j + 1)];
}

double node_line(const PatchSystem& sys, const std::vector<double>& u, int i, double y) {
  const auto& g = sys.grid();
  const double r = y / g.hy;
  if (r <= 0.0) return u[sys.node(i, 0)];
  if (r >= g.N) return u[sys.node(i, g.N)];
  const int j = static_cast<int>(std::floor(r));
  const double w = r - j;
  if (w == 0.0) return u[sys.node(i, j)];
  return (1.0 - w) * u[sys.node(i, j)] + w * u[sys.node(i, j + 1)];
}

}  // namespace

SnapshotSeries simulate_2d(const PatchProblem& problem, const PatchOutput& output) {
  if (output.probe_every < 1 || output.energy_every < 1 || output.compat_every < 1) {
    throw std::invalid_argument("simulate_2d: output cadences must be at least 1");
  }
  PatchSimulation sim(problem);
  const auto& g = problem.grid;
  const double dt = problem.stepper.dt;
  const long total = steps_for(problem.t0 + problem.span, problem.t0, dt);
  const PatchSystem& sys = sim.system();

  SnapshotSeries series;
  auto& pc = series.probes.columns;
  pc = {"t", "f1", "f2", "max_abs_e2", "mean_e2", "min_theta", "max_theta", "mean_theta"};
  for (int i = 0; i < g.M; ++i) pc.push_back("e2_" + std::to_string(i));
  for (int i = 0; i < g.M; ++i) pc.push_back("theta_" + std::to_string(i));
  for (int i = 0; i <= g.M; ++i) pc.push_back("u1_" + std::to_string(i));
  for (int i = 0; i <= g.M; ++i) pc.push_back("u2_" + std::to_string(i));
  series.energy.columns = {"t", "kinetic", "internal", "total", "external_work_rate", "heat_rate",
                           "boundary_power", "residual"};
  series.compat.columns = {"t", "residual"};

  std::vector<std::pair<long, double>> snaps;
  for (double ts : output.snapshot_times) snaps.emplace_back(steps_for(ts, problem.t0, dt), ts);
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;
  const double xc = 0.5 * g.Lx;
  const double yc = 0.5 * g.Ly;

  auto record = [&](long k) {
    const auto& u = sim.packed();
    const double t = sim.time();
    if (k % output.probe_every == 0) {
      std::vector<double> row = {t, problem.loading.f1 ? problem.loading.f1(xc, yc, t) : 0.0,
                                 problem.loading.f2 ? problem.loading.f2(xc, yc, t) : 0.0};
      double max_e2 = 0.0, sum_e2 = 0.0, min_th = u[sys.ith(0)], max_th = u[sys.ith(0)], sum_th = 0.0;
      for (int c = 0; c < g.cell_count(); ++c) {
        const double e2 = u[sys.ie2(c)];
        const double th = u[sys.ith(c)];
        max_e2 = std::max(max_e2, std::abs(e2));
        sum_e2 += e2;
        min_th = std::min(min_th, th);
        max_th = std::max(max_th, th);
        sum_th += th;
      }
      const double cells = g.cell_count();
      row.insert(row.end(), {max_e2, sum_e2 / cells, min_th, max_th, sum_th / cells});
      for (int i = 0; i < g.M; ++i) row.push_back(cell_line(sys, u, sys.ie2(0), i, output.probe_y));
      for (int i = 0; i < g.M; ++i) row.push_back(cell_line(sys, u, sys.ith(0), i, output.probe_y));
      for (int i = 0; i <= g.M; ++i) row.push_back(node_line(sys, sim.u1(), i, output.probe_y));
      for (int i = 0; i <= g.M; ++i) row.push_back(node_line(sys, sim.u2(), i, output.probe_y));
      series.probes.rows.push_back(std::move(row));
    }
    if (k % output.energy_every == 0) {
      const auto& r = sim.last_energy();
      series.energy.rows.push_back(
          {r.t, r.kinetic, r.internal, r.total, r.external_work_rate, r.heat_rate, r.boundary_power, r.residual});
    }
    if (k % output.compat_every == 0) {
      const PatchState s = sys.unpack(u);
      series.compat.rows.push_back({t, compatibility_residual(s.e1, s.e2, s.e3, output.compat_as_printed)});
    }
    while (next_snap < snaps.size() && snaps[next_snap].first < k) ++next_snap;
    while (next_snap < snaps.size() && snaps[next_snap].first == k) {
      series.snapshots.push_back({snaps[next_snap].second, patch_fields_table(sys, u)});
      ++next_snap;
    }
  };

  record(0);
  for (long k = 1; k <= total; ++k) {
    sim.step();
    record(k);
  }
  return series;
}

}  // namespace smafv
