#include "smafv/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "smafv/config.hpp"

namespace smafv {
namespace {

constexpr double kMartensiteSlope = 0.11869;

bool is_multiple(double t, double dt) {
  const double r = t / dt;
  return std::abs(r - std::round(r)) <= 1e-9 * std::max(1.0, std::abs(r));
}

SpaceTimeFunction rod_load(const LoadingSpec& spec) {
  if (spec.kind == LoadKind::zero) return {};
  return [spec](double x, double t) { return eval_loading(spec, x, 0.0, t); };
}

PlaneFunction plane_load(const LoadingSpec& spec) {
  if (spec.kind == LoadKind::zero) return {};
  return [spec](double x, double y, double t) { return eval_loading(spec, x, y, t); };
}

void check_loading(const LoadingSpec& spec, const char* slot) {
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("load.") + slot + ": " + e.what());
  }
}

Scenario rod_base(const std::string& name, double theta) {
  Scenario s;
  s.name = name;
  s.model = ModelKind::rod;
  s.Lx = 1.0;
  s.M = 8;
  s.N = 1;
  s.theta_initial = theta;
  s.F = LoadingSpec::sin3(7000.0, 2.0);
  s.stepper.dt = 1e-4;
  s.stepper.omega = 0.85;
  s.span = 24.0;
  s.probe = 0.375;
  s.probe_every = 10;
  s.energy_every = 10;
  s.snapshot_times = {0.0, 1.0, 3.0, 13.0, 15.0, 24.0};
  return s;
}

Scenario patch_base(const std::string& name, double ly, double theta) {
  Scenario s;
  s.name = name;
  s.model = ModelKind::patch;
  s.Lx = 1.0;
  s.Ly = ly;
  s.M = 14;
  s.N = 14;
  s.theta_initial = theta;
  s.stepper.dt = 1e-4;
  s.stepper.omega = 0.85;
  s.span = 24.0;
  s.probe_every = 100;
  s.energy_every = 100;
  s.compat_every = 100;
  return s;
}

}  // namespace

MaterialParams2D Scenario::patch_params() const {
  return map_from_rod ? patch_params_from_rod(material) : material2d;
}

std::vector<Scenario> catalog() {
  std::vector<Scenario> out;

  Scenario low = rod_base("rod-low-T", 220.0);
  low.description = "rod, martensite initial data, sin^3 mechanical pulses at 220 K";
  low.u0 = {{0.25, kMartensiteSlope, 0.0}, {0.75, -kMartensiteSlope, 0.5}, {1.0, kMartensiteSlope, 1.0}};
  out.push_back(low);

  Scenario medium = rod_base("rod-medium-T", 250.0);
  medium.description = "rod, austenite initial data, sin^3 mechanical pulses at 250 K";
  out.push_back(medium);

  Scenario high = rod_base("rod-high-T", 300.0);
  high.description = "rod, austenite initial data, sin^3 mechanical pulses at 300 K";
  out.push_back(high);

  Scenario thermal = rod_base("rod-thermal-cycle", 230.0);
  thermal.description = "rod, hat-shaped martensite initial data, sinusoidal heating under a constant load";
  thermal.u0 = {{0.5, kMartensiteSlope, 0.0}, {1.0, -kMartensiteSlope, 1.0}};
  thermal.F = LoadingSpec::constant(500.0);
  thermal.G = LoadingSpec::sinusoid(600.0, 6.0);
  thermal.snapshot_times = {0.0, 3.0, 6.0, 9.0, 12.0, 24.0};
  out.push_back(thermal);

  Scenario waves = patch_base("patch-waves", 0.4, 250.0);
  waves.description = "1 x 0.4 patch with roller edges under slow sinusoidal body forces";
  waves.edges = EdgeConditions::roller;
  waves.f1 = LoadingSpec::sinusoid(200.0, 6.0);
  waves.f2 = LoadingSpec::sinusoid(200.0, 40.0);
  waves.probe = 0.2;
  waves.snapshot_times = {3.0, 9.0, 24.0};
  out.push_back(waves);

  Scenario transform = patch_base("patch-transform", 1.0, 240.0);
  transform.description = "clamped unit patch under a periodic double sine pulse";
  transform.edges = EdgeConditions::clamped;
  transform.f1 = double_pulse(6000.0);
  transform.f2 = double_pulse(6000.0);
  transform.probe = 0.5;
  transform.snapshot_times = {2.0, 6.5, 8.0, 14.0, 20.0};
  out.push_back(transform);

  return out;
}

Scenario find_preset(const std::string& name) {
  for (auto& s : catalog()) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

double eval_displacement(const std::vector<DisplacementPiece>& pieces, double x) {
  if (pieces.empty()) return 0.0;
  for (const auto& p : pieces) {
    if (x <= p.x_end) return p.slope * (x - p.pivot);
  }
  const auto& last = pieces.back();
  return last.slope * (x - last.pivot);
}

void validate(const Scenario& s) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (s.name.empty()) fail("name: must not be empty");
  if (!(s.Lx > 0.0) || !std::isfinite(s.Lx)) fail("grid.Lx: must be positive");
  if (s.M < 2) fail("grid.M: needs at least 2 cells");
  if (s.model == ModelKind::patch) {
    if (!(s.Ly > 0.0) || !std::isfinite(s.Ly)) fail("grid.Ly: must be positive");
    if (s.N < 2) fail("grid.N: needs at least 2 cells");
  }
  s.material.validate();
  if (s.model == ModelKind::patch) s.patch_params().validate();
  if (!(s.theta_initial > 0.0) || !std::isfinite(s.theta_initial)) fail("initial.theta: must be positive");
  s.stepper.validate();

  const double dt = s.stepper.dt;
  if (!(s.span > 0.0) || !std::isfinite(s.span)) fail("time.span: must be positive");
  if (!is_multiple(s.span, dt)) fail("time.span: not a multiple of stepper.dt");
  for (double t : s.snapshot_times) {
    if (!(t >= 0.0 && t <= s.span)) fail("output.snapshots: time " + format_double(t) + " outside [0, span]");
    if (!is_multiple(t, dt)) fail("output.snapshots: time " + format_double(t) + " not a multiple of stepper.dt");
  }
  if (s.probe_every < 1) fail("output.probe_every: must be at least 1");
  if (s.energy_every < 1) fail("output.energy_every: must be at least 1");
  if (s.compat_every < 1) fail("output.compat_every: must be at least 1");

  if (s.model == ModelKind::rod) {
    if (!(s.probe >= 0.0 && s.probe <= s.Lx)) fail("output.probe: outside the rod");
    if (s.edges != EdgeConditions::clamped) fail("bc.edges: the rod supports clamped ends only");
    double prev_end = 0.0;
    for (std::size_t k = 0; k < s.u0.size(); ++k) {
      const auto& p = s.u0[k];
      if (!std::isfinite(p.x_end) || !std::isfinite(p.slope) || !std::isfinite(p.pivot)) {
        fail("initial.u0: non-finite piece");
      }
      if (!(p.x_end > prev_end)) fail("initial.u0: piece ends must increase");
      if (k > 0) {
        const auto& q = s.u0[k - 1];
        const double jump = p.slope * (q.x_end - p.pivot) - q.slope * (q.x_end - q.pivot);
        if (std::abs(jump) > 1e-12) fail("initial.u0: displacement jumps at x = " + format_double(q.x_end));
      }
      prev_end = p.x_end;
    }
    if (!s.u0.empty() && std::abs(s.u0.back().x_end - s.Lx) > 1e-12) {
      fail("initial.u0: last piece must end at grid.Lx");
    }
    if (std::abs(eval_displacement(s.u0, 0.0)) > 1e-12) fail("initial.u0: violates the clamped left edge");
    if (std::abs(eval_displacement(s.u0, s.Lx)) > 1e-12) fail("initial.u0: violates the clamped right edge");
    check_loading(s.F, "F");
    check_loading(s.G, "G");
  } else {
    if (!(s.probe >= 0.0 && s.probe <= s.Ly)) fail("output.probe: outside the patch");
    if (!s.u0.empty()) fail("initial.u0: the patch starts from zero displacement");
    check_loading(s.f1, "f1");
    check_loading(s.f2, "f2");
    check_loading(s.g, "g");
  }
}

RealizedScenario realize(const Scenario& s) {
  validate(s);
  RealizedScenario out;
  out.model = s.model;
  if (s.model == ModelKind::rod) {
    RodProblem& p = out.rod;
    p.grid = StaggeredGrid::rod(s.Lx, s.M);
    p.params = s.material;
    p.loading = {rod_load(s.F), rod_load(s.G)};
    p.bcs = {};
    p.stepper = s.stepper;
    p.t0 = 0.0;
    p.span = s.span;

    const int M = s.M;
    p.initial.u.resize(static_cast<std::size_t>(M + 1));
    for (int n = 0; n <= M; ++n) p.initial.u[static_cast<std::size_t>(n)] = eval_displacement(s.u0, p.grid.node_x(n));
    p.initial.eps.resize(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) {
      p.initial.eps[static_cast<std::size_t>(i)] =
          (p.initial.u[static_cast<std::size_t>(i) + 1] - p.initial.u[static_cast<std::size_t>(i)]) / p.grid.hx;
    }
    p.initial.v.assign(static_cast<std::size_t>(M + 1), 0.0);
    p.initial.theta.assign(static_cast<std::size_t>(M), s.theta_initial);
    p.initial.s.assign(static_cast<std::size_t>(M), 0.0);

    out.rod_output.snapshot_times = s.snapshot_times;
    out.rod_output.probe_x = s.probe;
    out.rod_output.probe_every = s.probe_every;
    out.rod_output.energy_every = s.energy_every;
  } else {
    PatchProblem& p = out.patch;
    p.grid = StaggeredGrid::patch(s.Lx, s.Ly, s.M, s.N);
    p.params = s.patch_params();
    p.loading = {plane_load(s.f1), plane_load(s.f2), plane_load(s.g)};
    p.bcs = s.edges == EdgeConditions::roller ? PatchBCs::roller() : PatchBCs::clamped();
    p.coupling = s.coupling;
    p.theta_initial = s.theta_initial;
    p.stepper = s.stepper;
    p.t0 = 0.0;
    p.span = s.span;

    out.patch_output.snapshot_times = s.snapshot_times;
    out.patch_output.probe_y = s.probe;
    out.patch_output.probe_every = s.probe_every;
    out.patch_output.energy_every = s.energy_every;
    out.patch_output.compat_every = s.compat_every;
    out.patch_output.compat_as_printed = s.compat_as_printed;
  }
  return out;
}

SnapshotSeries run_scenario(const Scenario& s) {
  const RealizedScenario r = realize(s);
  SnapshotSeries series = r.model == ModelKind::rod ? simulate_1d(r.rod, r.rod_output)
                                                    : simulate_2d(r.patch, r.patch_output);
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(s)));
  series.metadata.clear();
  series.metadata.emplace_back("run.scenario", s.name);
  series.metadata.emplace_back("run.model", to_string(s.model));
  series.metadata.emplace_back("run.grid", std::to_string(s.M) + "x" + std::to_string(s.N));
  series.metadata.emplace_back("run.config_hash", hash);
  for (auto& kv : to_config(s)) series.metadata.push_back(std::move(kv));
  return series;
}

std::string to_string(ModelKind m) { return m == ModelKind::rod ? "rod" : "patch"; }
std::string to_string(EdgeConditions e) { return e == EdgeConditions::clamped ? "clamped" : "roller"; }
std::string to_string(CouplingForm c) { return c == CouplingForm::a2 ? "a2" : "sqrt_a2_half"; }
std::string to_string(JacobianMode j) {
  return j == JacobianMode::analytic ? "analytic" : "finite_difference";
}

}  // namespace smafv
