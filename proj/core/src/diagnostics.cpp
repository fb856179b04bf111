#include "smafv/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace smafv {

EnergyRecord energy_audit(const EnergyTerms& prev, const EnergyTerms& next, double t_next, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("energy_audit: dt must be positive");
  EnergyRecord r = energy_snapshot(next, t_next);
  const double e_prev = prev.kinetic + prev.internal;
  const double in_prev = prev.external_work_rate + prev.heat_rate + prev.boundary_power;
  const double in_next = next.external_work_rate + next.heat_rate + next.boundary_power;
  r.residual = (r.total - e_prev) / dt - 0.5 * (in_prev + in_next);
  return r;
}

EnergyRecord energy_snapshot(const EnergyTerms& terms, double t) {
  EnergyRecord r;
  r.t = t;
  r.kinetic = terms.kinetic;
  r.internal = terms.internal;
  r.total = terms.kinetic + terms.internal;
  r.external_work_rate = terms.external_work_rate;
  r.heat_rate = terms.heat_rate;
  r.boundary_power = terms.boundary_power;
  return r;
}

double shoelace_area(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("shoelace_area: length mismatch");
  const std::size_t n = x.size();
  if (n < 3) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t l = (k + 1) % n;
    s += x[k] * y[l] - x[l] * y[k];
  }
  return 0.5 * s;
}

HysteresisLoop extract_hysteresis(std::span<const double> t, std::span<const double> drive,
                                  std::span<const double> response, double period, int skip_periods,
                                  int max_periods) {
  if (t.size() != drive.size() || t.size() != response.size()) {
    throw std::invalid_argument("extract_hysteresis: series lengths differ");
  }
  if (!(period > 0.0)) throw std::invalid_argument("extract_hysteresis: period must be positive");
  if (skip_periods < 0) throw std::invalid_argument("extract_hysteresis: negative skip");
  if (t.empty()) throw std::invalid_argument("extract_hysteresis: empty series");
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (!(t[k] > t[k - 1])) throw std::invalid_argument("extract_hysteresis: times must increase");
  }
  const double slack = 1e-9 * period;
  const double t0 = t.front();
  const double start = t0 + skip_periods * period;
  int k = static_cast<int>(std::floor((t.back() - start + slack) / period));
  if (max_periods > 0 && k > max_periods) k = max_periods;
  if (k < 1) throw std::invalid_argument("extract_hysteresis: series does not cover a whole period");
  const double stop = start + k * period;

  HysteresisLoop loop;
  loop.periods = k;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= start - slack && t[i] <= stop + slack) {
      loop.t.push_back(t[i]);
      loop.drive.push_back(drive[i]);
      loop.response.push_back(response[i]);
    }
  }
  loop.area = shoelace_area(loop.drive, loop.response) / k;
  return loop;
}

int count_sign_changes(std::span<const double> values) {
  int changes = 0;
  int last = 0;
  for (double v : values) {
    const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace smafv
