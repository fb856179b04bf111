#pragma once

// Energy bookkeeping and hysteresis-loop extraction.

#include <span>
#include <vector>

namespace smafv {

/// Energy content and power inputs of one accepted layer.
struct EnergyTerms {
  double kinetic = 0.0;
  double internal = 0.0;
  double external_work_rate = 0.0;  ///< body forces times velocity
  double heat_rate = 0.0;           ///< volumetric heating plus boundary heat flux
  double boundary_power = 0.0;      ///< stress power through the boundary
};

struct EnergyRecord {
  double t = 0.0;
  double kinetic = 0.0;
  double internal = 0.0;
  double total = 0.0;
  double external_work_rate = 0.0;
  double heat_rate = 0.0;
  double boundary_power = 0.0;
  /// (E^{n+1} - E^n)/dt minus the trapezoidal mean of the inputs.
  double residual = 0.0;
};

/// Balance between two consecutive accepted layers.
EnergyRecord energy_audit(const EnergyTerms& prev, const EnergyTerms& next, double t_next, double dt);

/// Energy record of a single layer (residual 0), used for the initial state.
EnergyRecord energy_snapshot(const EnergyTerms& terms, double t);

/// Signed polygon area of the closed curve through (x_k, y_k);
/// counterclockwise is positive.
double shoelace_area(std::span<const double> x, std::span<const double> y);

struct HysteresisLoop {
  std::vector<double> t;
  std::vector<double> drive;
  std::vector<double> response;
  int periods = 0;
  /// Mean signed area enclosed per period.
  double area = 0.0;
};

/// Collects the samples of whole drive periods [t0 + skip P, t0 + (skip + k) P]
/// with k as large as the series allows (k <= max_periods when positive),
/// t0 = t.front(), and measures the enclosed area. Throws
/// std::invalid_argument if no whole period remains after skipping.
HysteresisLoop extract_hysteresis(std::span<const double> t, std::span<const double> drive,
                                  std::span<const double> response, double period,
                                  int skip_periods = 1, int max_periods = 0);

/// Number of strict sign changes in a sequence (zeros are skipped).
int count_sign_changes(std::span<const double> values);

}  // namespace smafv
