#pragma once

// In-memory run output (field snapshots, probe, energy and compatibility
// series) and its on-disk CSV layout.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace smafv {

/// Column-labelled table of doubles.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool empty() const { return columns.empty(); }
  void add_row(std::vector<double> row);
  /// Index of `name`; throws std::out_of_range if absent.
  std::size_t index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;

  bool operator==(const Table&) const = default;
};

struct FieldSnapshot {
  double t = 0.0;
  Table fields;

  bool operator==(const FieldSnapshot&) const = default;
};

struct SnapshotSeries {
  /// Ordered key/value pairs: scenario name, grid, parameters, config echo.
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<FieldSnapshot> snapshots;
  Table probes;
  Table energy;
  Table compat;

  /// Snapshot whose time is closest to `t`, or nullptr when there are none.
  const FieldSnapshot* snapshot_near(double t) const;
  std::string meta(const std::string& key) const;

  bool operator==(const SnapshotSeries&) const = default;
};

/// Shortest of the 15, 16 and 17 significant digit forms that parses back to
/// the same double.
std::string format_double(double x);

/// Writes metadata.cfg, fields_<t>.csv per snapshot and probes.csv,
/// energy.csv, compat.csv for the non-empty tables. Creates `dir`.
/// Throws std::runtime_error naming the path on I/O failure.
void write_snapshot_series(const SnapshotSeries& series, const std::filesystem::path& dir);

/// Inverse of write_snapshot_series.
SnapshotSeries read_snapshot_series(const std::filesystem::path& dir);

}  // namespace smafv
