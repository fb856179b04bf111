#include "smafv/series_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace smafv {
namespace fs = std::filesystem;
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const fs::path& path) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::runtime_error(path.string() + ": malformed number '" + s + "'");
  }
  return v;
}

void write_table(const Table& t, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Table read_table(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": missing header");
  t.columns = split(line, ',');
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split(line, ',')) row.push_back(parse_double(cell, path));
    if (row.size() != t.columns.size()) {
      throw std::runtime_error(path.string() + ": row width does not match header");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table::add_row: width mismatch");
  rows.push_back(std::move(row));
}

std::size_t Table::index(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column named '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Table::column(const std::string& name) const {
  const std::size_t k = index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[k]);
  return out;
}

const FieldSnapshot* SnapshotSeries::snapshot_near(double t) const {
  const FieldSnapshot* best = nullptr;
  for (const auto& s : snapshots) {
    if (!best || std::abs(s.t - t) < std::abs(best->t - t)) best = &s;
  }
  return best;
}

std::string SnapshotSeries::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return {};
}

std::string format_double(double x) {
  char buf[40];
  for (int digits = 15; digits < 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_snapshot_series(const SnapshotSeries& series, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  const fs::path meta = dir / "metadata.cfg";
  std::ofstream out(meta, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + meta.string() + " for writing");
  for (const auto& [k, v] : series.metadata) out << k << " = " << v << '\n';
  if (!out) throw std::runtime_error("write failed: " + meta.string());

  for (const auto& snap : series.snapshots) {
    write_table(snap.fields, dir / ("fields_" + format_double(snap.t) + ".csv"));
  }
  if (!series.probes.empty()) write_table(series.probes, dir / "probes.csv");
  if (!series.energy.empty()) write_table(series.energy, dir / "energy.csv");
  if (!series.compat.empty()) write_table(series.compat, dir / "compat.csv");
}

SnapshotSeries read_snapshot_series(const fs::path& dir) {
  SnapshotSeries series;
  const fs::path meta = dir / "metadata.cfg";
  std::ifstream in(meta, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + meta.string());
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find(" = ");
    if (pos == std::string::npos) continue;
    series.metadata.emplace_back(line.substr(0, pos), line.substr(pos + 3));
  }

  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("fields_", 0) == 0 && entry.path().extension() == ".csv") {
      const std::string stem = entry.path().stem().string().substr(7);
      FieldSnapshot snap;
      snap.t = parse_double(stem, entry.path());
      snap.fields = read_table(entry.path());
      series.snapshots.push_back(std::move(snap));
    }
  }
  std::sort(series.snapshots.begin(), series.snapshots.end(),
            [](const FieldSnapshot& a, const FieldSnapshot& b) { return a.t < b.t; });

  if (fs::exists(dir / "probes.csv")) series.probes = read_table(dir / "probes.csv");
  if (fs::exists(dir / "energy.csv")) series.energy = read_table(dir / "energy.csv");
  if (fs::exists(dir / "compat.csv")) series.compat = read_table(dir / "compat.csv");
  return series;
}

}  // namespace smafv
