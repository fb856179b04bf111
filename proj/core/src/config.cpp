#include "smafv/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace smafv {
namespace {

enum class Applies { both, rod, patch };

struct KeyDescriptor {
  std::string key;
  Applies applies;
  std::function<std::string(const Scenario&)> get;
  std::function<void(Scenario&, const std::string&)> set;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("expected a number, got ''");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw std::invalid_argument("expected a finite number, got '" + t + "'");
  }
  return v;
}

int to_int(const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw std::invalid_argument("expected an integer, got '" + t + "'");
  }
  return v;
}

bool to_bool(const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw std::invalid_argument("expected true or false, got '" + t + "'");
}

std::string from_bool(bool b) { return b ? "true" : "false"; }

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ';';
    out += format_double(v[k]);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ';')) out.push_back(to_double(item));
  return out;
}

std::vector<double> parse_fields(const std::string& item, std::size_t count) {
  const auto parts = split(item, ':');
  if (parts.size() != count) {
    throw std::invalid_argument("expected " + std::to_string(count) + " ':'-separated values in '" + item + "'");
  }
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(to_double(p));
  return out;
}

std::string format_pieces(const std::vector<SinPiece>& pieces) {
  std::string out;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& p = pieces[k];
    if (k) out += ';';
    out += format_double(p.end) + ':' + format_double(p.factor) + ':' + format_double(p.half_period) + ':' +
           format_double(p.shift);
  }
  return out;
}

std::vector<SinPiece> parse_pieces(const std::string& text) {
  std::vector<SinPiece> out;
  for (const auto& item : split(text, ';')) {
    const auto f = parse_fields(item, 4);
    out.push_back({f[0], f[1], f[2], f[3]});
  }
  return out;
}

std::string format_u0(const std::vector<DisplacementPiece>& pieces) {
  std::string out;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& p = pieces[k];
    if (k) out += ';';
    out += format_double(p.x_end) + ':' + format_double(p.slope) + ':' + format_double(p.pivot);
  }
  return out;
}

std::vector<DisplacementPiece> parse_u0(const std::string& text) {
  std::vector<DisplacementPiece> out;
  for (const auto& item : split(text, ';')) {
    const auto f = parse_fields(item, 3);
    out.push_back({f[0], f[1], f[2]});
  }
  return out;
}

template <class T>
KeyDescriptor double_key(std::string key, Applies a, T Scenario::*block, double T::*field) {
  return {std::move(key), a, [block, field](const Scenario& s) { return format_double(s.*block.*field); },
          [block, field](Scenario& s, const std::string& v) { s.*block.*field = to_double(v); }};
}

KeyDescriptor double_key(std::string key, Applies a, double Scenario::*field) {
  return {std::move(key), a, [field](const Scenario& s) { return format_double(s.*field); },
          [field](Scenario& s, const std::string& v) { s.*field = to_double(v); }};
}

KeyDescriptor int_key(std::string key, Applies a, int Scenario::*field) {
  return {std::move(key), a, [field](const Scenario& s) { return std::to_string(s.*field); },
          [field](Scenario& s, const std::string& v) { s.*field = to_int(v); }};
}

void add_loading_keys(std::vector<KeyDescriptor>& keys, const std::string& slot, Applies a,
                      LoadingSpec Scenario::*load) {
  const std::string p = "load." + slot + ".";
  keys.push_back({p + "kind", a, [load](const Scenario& s) { return to_string((s.*load).kind); },
                  [load](Scenario& s, const std::string& v) { (s.*load).kind = load_kind_from_string(trim(v)); }});
  keys.push_back(double_key(p + "amplitude", a, load, &LoadingSpec::amplitude));
  keys.push_back(double_key(p + "half_period", a, load, &LoadingSpec::half_period));
  keys.push_back(double_key(p + "shift", a, load, &LoadingSpec::shift));
  keys.push_back(double_key(p + "period", a, load, &LoadingSpec::period));
  keys.push_back({p + "pieces", a, [load](const Scenario& s) { return format_pieces((s.*load).pieces); },
                  [load](Scenario& s, const std::string& v) { (s.*load).pieces = parse_pieces(v); }});
}

const std::vector<KeyDescriptor>& descriptors() {
  static const std::vector<KeyDescriptor> keys = [] {
    using A = Applies;
    std::vector<KeyDescriptor> k;
    k.push_back({"name", A::both, [](const Scenario& s) { return s.name; },
                 [](Scenario& s, const std::string& v) { s.name = trim(v); }});
    k.push_back({"description", A::both, [](const Scenario& s) { return s.description; },
                 [](Scenario& s, const std::string& v) { s.description = trim(v); }});
    k.push_back({"model", A::both, [](const Scenario& s) { return to_string(s.model); },
                 [](Scenario& s, const std::string& v) {
                   const std::string t = trim(v);
                   if (t == "rod") s.model = ModelKind::rod;
                   else if (t == "patch") s.model = ModelKind::patch;
                   else throw std::invalid_argument("expected rod or patch, got '" + t + "'");
                 }});

    k.push_back(double_key("grid.Lx", A::both, &Scenario::Lx));
    k.push_back(double_key("grid.Ly", A::patch, &Scenario::Ly));
    k.push_back(int_key("grid.M", A::both, &Scenario::M));
    k.push_back(int_key("grid.N", A::patch, &Scenario::N));

    using P1 = MaterialParams1D;
    k.push_back(double_key("material.k1", A::both, &Scenario::material, &P1::k1));
    k.push_back(double_key("material.k2", A::both, &Scenario::material, &P1::k2));
    k.push_back(double_key("material.k3", A::both, &Scenario::material, &P1::k3));
    k.push_back(double_key("material.theta1", A::both, &Scenario::material, &P1::theta1));
    k.push_back(double_key("material.rho", A::both, &Scenario::material, &P1::rho));
    k.push_back(double_key("material.cv", A::both, &Scenario::material, &P1::cv));
    k.push_back(double_key("material.kappa", A::both, &Scenario::material, &P1::kappa));
    k.push_back({"material.map_from_rod", A::patch, [](const Scenario& s) { return from_bool(s.map_from_rod); },
                 [](Scenario& s, const std::string& v) { s.map_from_rod = to_bool(v); }});
    using P2 = MaterialParams2D;
    k.push_back(double_key("material2d.a1", A::patch, &Scenario::material2d, &P2::a1));
    k.push_back(double_key("material2d.a2", A::patch, &Scenario::material2d, &P2::a2));
    k.push_back(double_key("material2d.a3", A::patch, &Scenario::material2d, &P2::a3));
    k.push_back(double_key("material2d.a4", A::patch, &Scenario::material2d, &P2::a4));
    k.push_back(double_key("material2d.a6", A::patch, &Scenario::material2d, &P2::a6));
    k.push_back(double_key("material2d.theta0", A::patch, &Scenario::material2d, &P2::theta0));
    k.push_back(double_key("material2d.rho", A::patch, &Scenario::material2d, &P2::rho));
    k.push_back(double_key("material2d.cv", A::patch, &Scenario::material2d, &P2::cv));
    k.push_back(double_key("material2d.kappa", A::patch, &Scenario::material2d, &P2::kappa));

    k.push_back(double_key("initial.theta", A::both, &Scenario::theta_initial));
    k.push_back({"initial.u0", A::rod, [](const Scenario& s) { return format_u0(s.u0); },
                 [](Scenario& s, const std::string& v) { s.u0 = parse_u0(v); }});
    k.push_back({"bc.edges", A::both, [](const Scenario& s) { return to_string(s.edges); },
                 [](Scenario& s, const std::string& v) {
                   const std::string t = trim(v);
                   if (t == "clamped") s.edges = EdgeConditions::clamped;
                   else if (t == "roller") s.edges = EdgeConditions::roller;
                   else throw std::invalid_argument("expected clamped or roller, got '" + t + "'");
                 }});

    add_loading_keys(k, "F", A::rod, &Scenario::F);
    add_loading_keys(k, "G", A::rod, &Scenario::G);
    add_loading_keys(k, "f1", A::patch, &Scenario::f1);
    add_loading_keys(k, "f2", A::patch, &Scenario::f2);
    add_loading_keys(k, "g", A::patch, &Scenario::g);
    k.push_back({"coupling", A::patch, [](const Scenario& s) { return to_string(s.coupling); },
                 [](Scenario& s, const std::string& v) {
                   const std::string t = trim(v);
                   if (t == "a2") s.coupling = CouplingForm::a2;
                   else if (t == "sqrt_a2_half") s.coupling = CouplingForm::sqrt_a2_half;
                   else throw std::invalid_argument("expected a2 or sqrt_a2_half, got '" + t + "'");
                 }});

    k.push_back(double_key("time.span", A::both, &Scenario::span));
    using SC = StepperConfig;
    k.push_back(double_key("stepper.dt", A::both, &Scenario::stepper, &SC::dt));
    k.push_back(double_key("stepper.omega", A::both, &Scenario::stepper, &SC::omega));
    k.push_back(double_key("stepper.newton_tol", A::both, &Scenario::stepper, &SC::newton_tol));
    k.push_back({"stepper.newton_max_iters", A::both,
                 [](const Scenario& s) { return std::to_string(s.stepper.newton_max_iters); },
                 [](Scenario& s, const std::string& v) { s.stepper.newton_max_iters = to_int(v); }});
    k.push_back(double_key("stepper.krylov_tol", A::both, &Scenario::stepper, &SC::krylov_tol));
    k.push_back({"stepper.krylov_max_iters", A::both,
                 [](const Scenario& s) { return std::to_string(s.stepper.krylov_max_iters); },
                 [](Scenario& s, const std::string& v) { s.stepper.krylov_max_iters = to_int(v); }});
    k.push_back({"stepper.jacobian", A::both, [](const Scenario& s) { return to_string(s.stepper.jacobian_mode); },
                 [](Scenario& s, const std::string& v) {
                   const std::string t = trim(v);
                   if (t == "analytic") s.stepper.jacobian_mode = JacobianMode::analytic;
                   else if (t == "finite_difference") s.stepper.jacobian_mode = JacobianMode::finite_difference;
                   else throw std::invalid_argument("expected analytic or finite_difference, got '" + t + "'");
                 }});

    k.push_back({"output.snapshots", A::both, [](const Scenario& s) { return join_doubles(s.snapshot_times); },
                 [](Scenario& s, const std::string& v) { s.snapshot_times = parse_doubles(v); }});
    k.push_back(double_key("output.probe", A::both, &Scenario::probe));
    k.push_back(int_key("output.probe_every", A::both, &Scenario::probe_every));
    k.push_back(int_key("output.energy_every", A::both, &Scenario::energy_every));
    k.push_back(int_key("output.compat_every", A::patch, &Scenario::compat_every));
    k.push_back({"output.compat_as_printed", A::patch,
                 [](const Scenario& s) { return from_bool(s.compat_as_printed); },
                 [](Scenario& s, const std::string& v) { s.compat_as_printed = to_bool(v); }});
    return k;
  }();
  return keys;
}

std::string canonical(const std::string& key) {
  if (key == "dt") return "stepper.dt";
  if (key == "omega") return "stepper.omega";
  if (key == "span") return "time.span";
  return key;
}

bool applies(Applies a, ModelKind m) {
  return a == Applies::both || (a == Applies::rod) == (m == ModelKind::rod);
}

}  // namespace

ConfigEntries to_config(const Scenario& s) {
  ConfigEntries out;
  for (const auto& d : descriptors()) {
    if (applies(d.applies, s.model)) out.emplace_back(d.key, d.get(s));
  }
  return out;
}

std::string serialize(const Scenario& s) {
  std::string out;
  for (const auto& [k, v] : to_config(s)) out += k + " = " + v + "\n";
  return out;
}

void apply_override(Scenario& s, const std::string& key, const std::string& value) {
  const std::string k = canonical(trim(key));
  for (const auto& d : descriptors()) {
    if (d.key != k) continue;
    try {
      d.set(s, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(k + ": " + e.what());
    }
    return;
  }
  throw std::invalid_argument("unknown config key '" + trim(key) + "'");
}

void apply_override(Scenario& s, const std::string& assignment) {
  const auto pos = assignment.find('=');
  if (pos == std::string::npos) throw std::invalid_argument("override '" + assignment + "' is not key=value");
  apply_override(s, assignment.substr(0, pos), assignment.substr(pos + 1));
}

ConfigEntries parse_config_text(const std::string& text) {
  ConfigEntries out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto pos = t.find('=');
    if (pos == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    out.emplace_back(trim(t.substr(0, pos)), trim(t.substr(pos + 1)));
  }
  return out;
}

Scenario from_config(const ConfigEntries& entries) {
  Scenario s;
  s.name.clear();
  for (const auto& [k, v] : entries) apply_override(s, k, v);
  return s;
}

Scenario parse_scenario(const std::string& text) { return from_config(parse_config_text(text)); }

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& d : descriptors()) out.push_back(d.key);
  return out;
}

std::uint64_t config_hash(const Scenario& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : serialize(s)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace smafv
