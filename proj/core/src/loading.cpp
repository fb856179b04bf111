#include "smafv/loading.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smafv {
namespace {

double sine(double t, double half_period, double shift) {
  return std::sin(std::numbers::pi * (t - shift) / half_period);
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string("loading: ") + name + " must be finite");
}

}  // namespace

LoadingSpec LoadingSpec::constant(double value) {
  LoadingSpec s;
  s.kind = LoadKind::constant;
  s.amplitude = value;
  return s;
}

LoadingSpec LoadingSpec::sinusoid(double amplitude, double half_period, double shift) {
  LoadingSpec s;
  s.kind = LoadKind::sinusoid;
  s.amplitude = amplitude;
  s.half_period = half_period;
  s.shift = shift;
  return s;
}

LoadingSpec LoadingSpec::sin3(double amplitude, double half_period, double shift) {
  LoadingSpec s = sinusoid(amplitude, half_period, shift);
  s.kind = LoadKind::sin3_pulse;
  return s;
}

LoadingSpec LoadingSpec::piecewise(double amplitude, std::vector<SinPiece> pieces, double period) {
  LoadingSpec s;
  s.kind = LoadKind::piecewise_sin;
  s.amplitude = amplitude;
  s.pieces = std::move(pieces);
  s.period = period;
  return s;
}

double LoadingSpec::repeat_period() const {
  switch (kind) {
    case LoadKind::zero:
    case LoadKind::constant:
      return 0.0;
    case LoadKind::sinusoid:
    case LoadKind::sin3_pulse:
      return 2.0 * std::abs(half_period);
    case LoadKind::piecewise_sin:
      return period > 0.0 ? period : (pieces.empty() ? 0.0 : pieces.back().end);
  }
  return 0.0;
}

void LoadingSpec::validate() const {
  require_finite(amplitude, "amplitude");
  require_finite(shift, "shift");
  require_finite(half_period, "half_period");
  if ((kind == LoadKind::sinusoid || kind == LoadKind::sin3_pulse) && half_period == 0.0) {
    throw std::invalid_argument("loading: half_period must be nonzero");
  }
  if (kind == LoadKind::piecewise_sin) {
    if (pieces.empty()) throw std::invalid_argument("loading: piecewise load needs at least one piece");
    double prev = 0.0;
    for (const auto& p : pieces) {
      require_finite(p.end, "piece end");
      require_finite(p.factor, "piece factor");
      require_finite(p.half_period, "piece half_period");
      require_finite(p.shift, "piece shift");
      if (!(p.end > prev)) throw std::invalid_argument("loading: piece ends must increase from 0");
      prev = p.end;
    }
    if (period != 0.0 && !(period >= pieces.back().end)) {
      throw std::invalid_argument("loading: period shorter than the pieces");
    }
  }
}

double eval_loading(const LoadingSpec& spec, double, double, double t) {
  switch (spec.kind) {
    case LoadKind::zero:
      return 0.0;
    case LoadKind::constant:
      return spec.amplitude;
    case LoadKind::sinusoid:
      return spec.amplitude * sine(t, spec.half_period, spec.shift);
    case LoadKind::sin3_pulse: {
      const double s = sine(t, spec.half_period, spec.shift);
      return spec.amplitude * s * s * s;
    }
    case LoadKind::piecewise_sin: {
      if (spec.pieces.empty()) return 0.0;
      const double period = spec.repeat_period();
      double tau = t;
      if (t > period) {
        tau = t - std::floor(t / period) * period;
        if (tau == 0.0) tau = period;  // a period boundary closes the previous period
      }
      for (const auto& p : spec.pieces) {
        if (tau <= p.end) {
          return spec.amplitude * (p.half_period == 0.0 ? p.factor : p.factor * sine(tau, p.half_period, p.shift));
        }
      }
      return 0.0;
    }
  }
  return 0.0;
}

std::string to_string(LoadKind kind) {
  switch (kind) {
    case LoadKind::zero: return "zero";
    case LoadKind::constant: return "constant";
    case LoadKind::sinusoid: return "sinusoid";
    case LoadKind::sin3_pulse: return "sin3";
    case LoadKind::piecewise_sin: return "piecewise";
  }
  return "zero";
}

LoadKind load_kind_from_string(const std::string& name) {
  if (name == "zero") return LoadKind::zero;
  if (name == "constant") return LoadKind::constant;
  if (name == "sinusoid") return LoadKind::sinusoid;
  if (name == "sin3") return LoadKind::sin3_pulse;
  if (name == "piecewise") return LoadKind::piecewise_sin;
  throw std::invalid_argument("unknown loading kind '" + name + "'");
}

LoadingSpec double_pulse(double amplitude, double second_shift) {
  return LoadingSpec::piecewise(amplitude,
                                {{4.0, 1.0, 3.0, 0.0},
                                 {6.0, 0.0, 0.0, 0.0},
                                 {10.0, 1.0, 3.0, second_shift},
                                 {12.0, 0.0, 0.0, 0.0}},
                                12.0);
}

}  // namespace smafv
