#pragma once

// Declarative experiment descriptions, the preset catalog, and conversion
// into solver-ready problems.

#include <string>
#include <vector>

#include "smafv/dae.hpp"
#include "smafv/falk1d.hpp"
#include "smafv/loading.hpp"
#include "smafv/material.hpp"
#include "smafv/patch2d.hpp"
#include "smafv/series_io.hpp"

namespace smafv {

enum class ModelKind { rod, patch };
enum class EdgeConditions { clamped, roller };

/// u0(x) = slope (x - pivot) up to x_end (a boundary belongs to the earlier piece).
struct DisplacementPiece {
  double x_end = 1.0;
  double slope = 0.0;
  double pivot = 0.0;

  bool operator==(const DisplacementPiece&) const = default;
};

struct Scenario {
  std::string name;
  std::string description;
  ModelKind model = ModelKind::rod;

  double Lx = 1.0;
  double Ly = 1.0;
  int M = 8;
  int N = 1;

  MaterialParams1D material;
  /// Patch constants come from `material` through the standard mapping
  /// unless this is false, in which case `material2d` is used as given.
  bool map_from_rod = true;
  MaterialParams2D material2d;

  double theta_initial = 250.0;
  std::vector<DisplacementPiece> u0;  ///< rod only; empty means zero
  EdgeConditions edges = EdgeConditions::clamped;

  LoadingSpec F, G;       ///< rod loads
  LoadingSpec f1, f2, g;  ///< patch loads
  CouplingForm coupling = CouplingForm::a2;

  double span = 24.0;
  StepperConfig stepper;

  std::vector<double> snapshot_times;
  double probe = 0.375;  ///< x of the rod probe, y of the patch centreline
  int probe_every = 10;
  int energy_every = 10;
  int compat_every = 100;
  bool compat_as_printed = false;

  MaterialParams2D patch_params() const;

  bool operator==(const Scenario&) const = default;
};

/// The six presets: rod-low-T, rod-medium-T, rod-high-T, rod-thermal-cycle,
/// patch-waves, patch-transform.
std::vector<Scenario> catalog();
/// Throws std::invalid_argument for unknown names.
Scenario find_preset(const std::string& name);

/// Initial displacement at x.
double eval_displacement(const std::vector<DisplacementPiece>& pieces, double x);

/// Throws std::invalid_argument naming the offending field or edge.
void validate(const Scenario& s);

struct RealizedScenario {
  ModelKind model = ModelKind::rod;
  RodProblem rod;
  RodOutput rod_output;
  PatchProblem patch;
  PatchOutput patch_output;
};

/// Validates, samples the initial displacement at nodes and differences it
/// into cell strains, and wraps the loading programs as closures.
RealizedScenario realize(const Scenario& s);

/// realize + simulate; metadata carries name, model, grid, config hash and
/// the full config echo.
SnapshotSeries run_scenario(const Scenario& s);

std::string to_string(ModelKind m);
std::string to_string(EdgeConditions e);
std::string to_string(CouplingForm c);
std::string to_string(JacobianMode j);

}  // namespace smafv
