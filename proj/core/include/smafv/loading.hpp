#pragma once

// Time-dependent loading programs, uniform in space.

#include <string>
#include <vector>

namespace smafv {

enum class LoadKind { zero, constant, sinusoid, sin3_pulse, piecewise_sin };

/// factor * sin(pi (t - shift) / half_period) on (previous end, end].
/// half_period == 0 makes the piece the constant `factor`.
struct SinPiece {
  double end = 0.0;
  double factor = 1.0;
  double half_period = 1.0;
  double shift = 0.0;

  bool operator==(const SinPiece&) const = default;
};

/// sinusoid:      amplitude sin(pi (t - shift) / half_period)
/// sin3_pulse:    amplitude sin^3(pi (t - shift) / half_period)
/// piecewise_sin: amplitude times the piece containing t mod period; the
///                first piece starts at 0 and a boundary belongs to the
///                earlier piece.
struct LoadingSpec {
  LoadKind kind = LoadKind::zero;
  double amplitude = 0.0;
  double half_period = 1.0;
  double shift = 0.0;
  double period = 0.0;  ///< piecewise_sin only; 0 means the last piece end
  std::vector<SinPiece> pieces;

  static LoadingSpec zero() { return {}; }
  static LoadingSpec constant(double value);
  static LoadingSpec sinusoid(double amplitude, double half_period, double shift = 0.0);
  static LoadingSpec sin3(double amplitude, double half_period, double shift = 0.0);
  static LoadingSpec piecewise(double amplitude, std::vector<SinPiece> pieces, double period = 0.0);

  /// Repeat length; 0 for the aperiodic kinds (zero, constant).
  double repeat_period() const;
  /// Throws std::invalid_argument on non-finite parameters or
  /// non-increasing piece ends.
  void validate() const;

  bool operator==(const LoadingSpec&) const = default;
};

double eval_loading(const LoadingSpec& spec, double x, double y, double t);

std::string to_string(LoadKind kind);
/// Throws std::invalid_argument for unknown names.
LoadKind load_kind_from_string(const std::string& name);

/// Pulse train with two sine pulses per period of 12: the first on [0, 4],
/// the second on [6, 10] with argument pi (t - second_shift) / 3.
LoadingSpec double_pulse(double amplitude, double second_shift = 2.0);

}  // namespace smafv
