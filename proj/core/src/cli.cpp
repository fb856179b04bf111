#include "smafv/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "smafv/config.hpp"
#include "smafv/dae.hpp"
#include "smafv/material.hpp"
#include "smafv/scenario.hpp"
#include "smafv/series_io.hpp"

namespace smafv {
namespace {

namespace fs = std::filesystem;

struct CliError {
  std::string code;
  std::string message;
};

Scenario load_target(const std::string& target) {
  for (const auto& s : catalog()) {
    if (s.name == target) return s;
  }
  std::error_code ec;
  if (fs::is_regular_file(target, ec)) {
    std::ifstream in(target);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return parse_scenario(buf.str());
    } catch (const std::invalid_argument& e) {
      throw CliError{"invalid-config", target + ": " + e.what()};
    }
  }
  throw CliError{"unknown-scenario", "no preset or config file named '" + target + "'"};
}

void apply_overrides(Scenario& s, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    try {
      apply_override(s, o);
    } catch (const std::invalid_argument& e) {
      throw CliError{"bad-override-key", e.what()};
    }
  }
}

void check_valid(const Scenario& s) {
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw CliError{"invalid-config", e.what()};
  }
}

fs::path default_output(const std::string& name) {
  const char* root = std::getenv("SMAFV_OUTPUT_ROOT");
  return fs::path(root && *root ? root : "smafv-out") / name;
}

void prepare_output(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path probe = dir / ".smafv-write-test";
  std::ofstream test(probe);
  if (ec || !test) throw CliError{"io", "cannot write to output directory " + dir.string()};
  test.close();
  fs::remove(probe, ec);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

int cmd_list(std::ostream& out) {
  for (const auto& s : catalog()) out << s.name << '\n';
  return 0;
}

int cmd_run(const std::string& target, const std::string& out_dir, const std::vector<std::string>& overrides,
            std::ostream& out) {
  Scenario s = load_target(target);
  apply_overrides(s, overrides);
  check_valid(s);
  const fs::path dir = out_dir.empty() ? default_output(s.name) : fs::path(out_dir);
  prepare_output(dir);

  const std::string started = utc_timestamp();
  const auto t0 = std::chrono::steady_clock::now();
  SnapshotSeries series;
  try {
    series = run_scenario(s);
  } catch (const StepFailure& e) {
    throw CliError{"solver", e.what()};
  } catch (const std::domain_error& e) {
    throw CliError{"solver", e.what()};
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  try {
    write_snapshot_series(series, dir);
  } catch (const std::runtime_error& e) {
    throw CliError{"io", e.what()};
  }
  std::ofstream info(dir / "run_info.txt");
  info << "started = " << started << '\n' << "wall_seconds = " << format_double(wall) << '\n';
  if (!info) throw CliError{"io", "cannot write " + (dir / "run_info.txt").string()};

  out << "wrote " << dir.string() << '\n';
  return 0;
}

int cmd_check(const std::string& target, const std::vector<std::string>& overrides, bool print_config,
              std::ostream& out) {
  Scenario s = load_target(target);
  apply_overrides(s, overrides);
  check_valid(s);
  if (print_config) {
    out << serialize(s);
  } else {
    const long steps = std::lround(s.span / s.stepper.dt);
    out << "ok " << s.name << " (" << to_string(s.model) << ", " << s.M << "x" << s.N << ", " << steps
        << " steps)\n";
  }
  return 0;
}

int cmd_equilibria(double dtheta, std::ostream& out) {
  const MaterialParams2D p = patch_params_from_rod(MaterialParams1D{});
  out << "dtheta = " << format_double(dtheta) << '\n';
  out << "convexity_threshold = " << format_double(convexity_threshold(p)) << '\n';
  for (const auto& eq : landau_equilibria(p, dtheta)) {
    out << "e2 = " << format_double(eq.e2) << (eq.is_minimum ? " minimum" : " stationary") << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-volume thermo-mechanical solver for shape memory alloys", "smafv"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Print the preset names");

  std::string run_target, out_dir;
  std::vector<std::string> run_overrides;
  auto* run = app.add_subcommand("run", "Run a preset or config file and write its output series");
  run->add_option("target", run_target, "Preset name or config file")->required();
  run->add_option("--out", out_dir, "Output directory (default $SMAFV_OUTPUT_ROOT/<name>)");
  run->add_option("--override", run_overrides, "key=value, repeatable");

  double dtheta = 0.0;
  auto* eq = app.add_subcommand("equilibria", "Print Landau stationary points at theta - theta0");
  eq->add_option("--dtheta", dtheta, "Temperature offset [K]")->required();

  std::string check_target;
  std::vector<std::string> check_overrides;
  bool print_config = false;
  auto* check = app.add_subcommand("check", "Validate a preset or config file without running it");
  check->add_option("target", check_target, "Preset name or config file")->required();
  check->add_option("--override", check_overrides, "key=value, repeatable");
  check->add_flag("--print-config", print_config, "Print the resolved config instead of a summary");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (char& c : msg) {
      if (c == '\n') c = ' ';
    }
    err << "error: usage: " << msg << '\n';
    return 2;
  }

  try {
    if (list->parsed()) return cmd_list(out);
    if (run->parsed()) return cmd_run(run_target, out_dir, run_overrides, out);
    if (eq->parsed()) return cmd_equilibria(dtheta, out);
    if (check->parsed()) return cmd_check(check_target, check_overrides, print_config, out);
  } catch (const CliError& e) {
    err << "error: " << e.code << ": " << e.message << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run_cli(args, out, err);
}

}  // namespace smafv
