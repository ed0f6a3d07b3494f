#include "fockq/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "fockq/fock.hpp"
#include "fockq/heat.hpp"
#include "fockq/parse.hpp"
#include "fockq/report.hpp"
#include "fockq/spectral.hpp"

namespace fockq {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("setting '" + key + "': not a number: '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long n = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return static_cast<int>(n);
  } catch (const std::exception&) {
    throw ConfigError("setting '" + key + "': not an integer: '" + v + "'");
  }
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

class Checker {
 public:
  explicit Checker(ScenarioResult& r) : r_(r) {}
  void operator()(const std::string& name, bool ok, const std::string& detail) {
    r_.assertions.push_back({name, ok, detail});
  }

 private:
  ScenarioResult& r_;
};

/// Scenario defaults overlaid with whatever the caller set.
struct Effective {
  RunConfig run;
  SweepConfig sweep;
};

Effective merge(const RunConfig& defaults, const RunConfig& o, const std::string& name) {
  Effective e;
  e.run = defaults;
  e.run.command = "scenario";
  e.run.scenario = name;
  if (!o.t_list.empty()) e.run.t_list = o.t_list;
  if (o.basis_dim > 0) e.run.basis_dim = o.basis_dim;
  if (o.tail_dim > 0) e.run.tail_dim = o.tail_dim;
  if (o.grid_set) {
    e.run.grid = o.grid;
    e.run.grid_set = true;
  }
  if (!o.out.empty()) e.run.out = o.out;
  e.run.format = o.format;
  e.run.threshold = o.threshold;
  e.run.tail_tolerance = o.tail_tolerance;
  e.run.quad_order = o.quad_order;
  e.run.quad_angles = o.quad_angles;
  if (e.run.out.empty()) e.run.out = name + "." + e.run.format;
  validate(e.run);

  e.sweep.basis_dim = e.run.basis_dim;
  e.sweep.tail_dim = e.run.tail_dim;
  e.sweep.threshold = e.run.threshold;
  e.sweep.tail_tolerance = e.run.tail_tolerance;
  e.sweep.grid = e.run.grid;
  e.sweep.quad_order = e.run.quad_order;
  e.sweep.quad_angles = e.run.quad_angles;
  return e;
}

void write_sweep(const SweepReport& rep, const Effective& e, ScenarioResult& res) {
  write_file_atomic(e.run.out, e.run.format == "json" ? sweep_json(rep, e.run.to_json()) : sweep_csv(rep));
  res.files.push_back(e.run.out);
}

void check_points(const SweepReport& rep, Checker& check) {
  for (const auto& p : rep.points) {
    const std::string at = "t=" + num(p.t);
    check(at + ": point not flagged", !p.flagged, p.error);
    check(at + ": semi <= hankel_f * hankel_g", p.semi_comm_norm <= p.hankel_f_bound * p.hankel_g_bound + 1e-9,
          num(p.semi_comm_norm) + " vs " + num(p.hankel_f_bound * p.hankel_g_bound));
  }
}

RunConfig defaults_with(std::vector<double> t_list) {
  RunConfig d;
  d.t_list = std::move(t_list);
  return d;
}

void example_a(const RunConfig& o, ScenarioResult& res) {
  auto e = merge(defaults_with({0.5, 0.1, 0.02}), o, res.name);
  if (e.run.basis_dim == 0)
    for (double t : e.run.t_list) {
      const int need = static_cast<int>(std::ceil(std::log(1e6) / std::log1p(16.0 * t * t))) + 1;
      e.sweep.basis_dims.push_back(std::min(4096, std::max(basis_dim_for(t, e.sweep), need)));
    }
  const auto rep = t_sweep(quadratic_phase(1.0), quadratic_phase(-1.0), e.run.t_list, e.sweep);
  write_sweep(rep, e, res);
  Checker check(res);
  check_points(rep, check);
  for (const auto& p : rep.points)
    check("t=" + num(p.t) + ": semi-commutator norm in [1 - 1e-6, 1 + 1e-9]",
          p.semi_comm_norm >= 1.0 - 1e-6 && p.semi_comm_norm <= 1.0 + 1e-9, num(p.semi_comm_norm));
  check("verdict non_vanishing", rep.verdict == Verdict::non_vanishing, to_string(rep.verdict));
}

void example_b(const RunConfig& o, ScenarioResult& res) {
  std::vector<double> ts;
  for (int l = 1; l <= 4; ++l) ts.push_back(std::pow(4.0, -l - 1));
  RunConfig d = defaults_with(ts);
  d.basis_dim = 512;
  auto e = merge(d, o, res.name);
  e.sweep.grid_scales_with_t = true;
  const Symbol f = radial_dyadic(24);
  const auto rep = t_sweep(f, f, e.run.t_list, e.sweep);
  write_sweep(rep, e, res);
  Checker check(res);
  check_points(rep, check);

  const int n = rep.points.front().N_used;
  const double reference = semi_commutator_norm(f, f, 0.25, n, 2 * n + 32);
  double lo = 1e300, hi = 0.0, bmo_lo = 1e300, bmo_hi = 0.0;
  for (const auto& p : rep.points) {
    lo = std::min(lo, p.semi_comm_norm);
    hi = std::max(hi, p.semi_comm_norm);
    bmo_lo = std::min(bmo_lo, p.bmo_f);
    bmo_hi = std::max(bmo_hi, p.bmo_f);
  }
  check("semi-commutator norms agree within 2%", hi <= 1.02 * lo, num(lo) + " .. " + num(hi));
  check("semi-commutator norms above the t = 1/4 floor", lo >= 0.98 * reference,
        num(lo) + " vs " + num(reference));
  check("BMO estimates agree within 1e-6", bmo_hi - bmo_lo <= 1e-6, num(bmo_lo) + " .. " + num(bmo_hi));
  check("verdict non_vanishing", rep.verdict == Verdict::non_vanishing, to_string(rep.verdict));

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> logr(std::log(1e-4), std::log(1e4)), ang(0.0, 2.0 * M_PI);
  const Symbol half = scale(f, 0.5);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const cplx z = std::polar(std::exp(logr(rng)), ang(rng));
    if (eval(half, z) != -eval(f, z)) ++bad;
  }
  check("f(z/2) = -f(z) on 1e4 random points", bad == 0, std::to_string(bad) + " mismatches");
}

void example_c(const RunConfig& o, ScenarioResult& res) {
  auto e = merge(defaults_with({1.0, 0.25, 0.0625, 0.01}), o, res.name);
  const auto rep = t_sweep(coord_z(), coord_zbar(), e.run.t_list, e.sweep);
  write_sweep(rep, e, res);
  Checker check(res);
  check_points(rep, check);
  for (const auto& p : rep.points)
    check("t=" + num(p.t) + ": semi-commutator norm = 4t within 1e-9", std::abs(p.semi_comm_norm - 4.0 * p.t) <= 1e-9,
          num(p.semi_comm_norm));
}

void buc_decay(const RunConfig& o, ScenarioResult& res) {
  auto e = merge(defaults_with({1.0, 0.3, 0.1, 0.03, 0.01}), o, res.name);
  const auto rep = t_sweep(plane_wave(1.0), plane_wave(1.0), e.run.t_list, e.sweep);
  write_sweep(rep, e, res);
  Checker check(res);
  check_points(rep, check);
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const auto& p = rep.points[i];
    const std::string at = "t=" + num(p.t);
    const double bmo = std::sqrt(1.0 - std::exp(-2.0 * p.t));
    check(at + ": BMO = sqrt(1 - e^{-2t}) within 1e-6", std::abs(p.bmo_f - bmo) <= 1e-6, num(p.bmo_f));
    check(at + ": heat sup = e^{-t} within 1e-9", std::abs(p.heat_sup - std::exp(-p.t)) <= 1e-9, num(p.heat_sup));
    // T_f T_f - T_{f^2} = (e^{-t} - e^{-2t}) times a unitary displacement.
    const double semi = std::exp(-p.t) - std::exp(-2.0 * p.t);
    check(at + ": semi-commutator norm = e^{-t} - e^{-2t} within 1e-9", std::abs(p.semi_comm_norm - semi) <= 1e-9,
          num(p.semi_comm_norm));
    if (i > 0)
      check(at + ": semi-commutator norm decreased", p.semi_comm_norm < rep.points[i - 1].semi_comm_norm,
            num(p.semi_comm_norm));
  }
  check("verdict vanishing", rep.verdict == Verdict::vanishing, to_string(rep.verdict));
}

void vmo_diagnostic(const RunConfig& o, ScenarioResult& res) {
  auto e = merge(defaults_with({0.25, 0.05}), o, res.name);
  Checker check(res);
  const Symbol b = radial_dyadic(24);
  const Symbol pw = plane_wave(1.0);
  std::string csv = "radius,var_radial_dyadic,var_planewave\n";
  double b_min = 1e300, pw_last = 0.0, pw_first = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double rho = std::ldexp(1.0, -k);
    const double vb = variance_on_ball(b, 0.0, rho);
    const double vp = variance_on_ball(pw, 0.0, rho);
    csv += format_csv_double(rho) + "," + format_csv_double(vb) + "," + format_csv_double(vp) + "\n";
    b_min = std::min(b_min, vb);
    if (k == 0) pw_first = vp;
    pw_last = vp;
  }
  check("dyadic symbol: ball variance stays above 0.5 on shrinking balls", b_min >= 0.5, num(b_min));
  check("plane wave: ball variance shrinks by 1e5 over ten halvings", pw_last <= 1e-5 * pw_first,
        num(pw_first) + " -> " + num(pw_last));

  for (double t : e.run.t_list) {
    for (const auto& [label, f] : {std::pair{"radial_dyadic(24)", b}, std::pair{"re(z)", real_part(coord_z())}}) {
      const auto r = mo_lower_bound_check(f, 0.0, t);
      check(std::string(label) + " t=" + num(t) + ": MO >= C Var on B(0, sqrt t)", r.mo >= r.floor - 1e-8 && r.floor > 0.0,
            num(r.mo) + " vs " + num(r.floor));
    }
  }
  const auto sqrt_phase = *named_radial_profile("sqrt_phase");
  double prev = 1e300;
  for (double r : {10.0, 100.0, 1000.0}) {
    const double osc = oscillation_at(sqrt_phase, r, 1.0, 4096);
    check("exp(i sqrt|z|): oscillation at " + num(r) + " decreases", osc < prev, num(osc));
    prev = osc;
  }
  write_file_atomic(e.run.out, csv);
  res.files.push_back(e.run.out);
}

void norm_limit_step(const RunConfig& o, ScenarioResult& res) {
  RunConfig d = defaults_with({0.5, 0.2, 0.1, 0.05, 0.02});
  d.grid = SampleGrid{0.0, 2.0, 41, 1};
  auto e = merge(d, o, res.name);
  const Symbol f = disk_indicator(1.0);
  const auto rep = norm_limit_sweep(f, e.run.t_list, e.run.grid);
  write_file_atomic(e.run.out, e.run.format == "json" ? norm_limit_json(rep, e.run.to_json()) : norm_limit_csv(rep));
  res.files.push_back(e.run.out);
  Checker check(res);
  for (const auto& p : rep.points) {
    const double exact = 1.0 - std::exp(-1.0 / (4.0 * p.t));
    const double at0 = std::abs(heat_transform(f, p.t, 0.0));
    check("t=" + num(p.t) + ": heat at 0 = 1 - e^{-1/4t} within 1e-8", std::abs(at0 - exact) <= 1e-8, num(at0));
    check("t=" + num(p.t) + ": lower <= upper", p.lower <= p.upper + 1e-12, num(p.lower) + " vs " + num(p.upper));
    if (p.t <= 0.05) check("t=" + num(p.t) + ": lower >= 0.99", p.lower >= 0.99, num(p.lower));
  }
  check("lower bound nondecreasing as t decreases", rep.lower_monotone, "");
}

void covariance_audit(const RunConfig& o, ScenarioResult& res) {
  RunConfig d = defaults_with({0.5, 1.0 / 16, 1.0 / 64});
  d.basis_dim = 64;
  auto e = merge(d, o, res.name);
  Checker check(res);
  std::string csv = "symbol,t,max_abs_diff\n";
  const std::vector<std::pair<std::string, Symbol>> symbols = {
      {"phase(1)", quadratic_phase(1.0)}, {"radial_dyadic(24)", radial_dyadic(24)}, {"planewave(1)", plane_wave(1.0)}};
  for (const auto& [label, f] : symbols)
    for (double t : e.run.t_list) {
      const auto pair = scaling_covariance_check(f, t, e.run.basis_dim);
      const double diff = pair.lhs.entries.max_abs_diff(pair.rhs.entries);
      csv += label + "," + format_csv_double(t) + "," + format_csv_double(diff) + "\n";
      check(label + " t=" + num(t) + ": U_t covariance within 1e-8", diff <= 1e-8, num(diff));
    }
  const Symbol b = radial_dyadic(24);
  for (int l = 1; l <= 3; ++l) {
    const double t = std::pow(4.0, -l - 1);
    const Symbol scaled = scale(b, 2.0 * std::sqrt(t));
    const double sign = l % 2 == 0 ? 1.0 : -1.0;
    int bad = 0;
    for (int i = 1; i <= 1000; ++i) {
      const cplx z = std::polar(std::exp(-8.0 + 16.0 * i / 1000.0), 0.37 * i);
      if (eval(scaled, z) != sign * eval(b, z)) ++bad;
    }
    check("radial_dyadic(24) at t_" + std::to_string(l) + ": scaled symbol is (-1)^l f", bad == 0,
          std::to_string(bad) + " mismatches");
  }
  write_file_atomic(e.run.out, csv);
  res.files.push_back(e.run.out);
}

using Runner = std::function<void(const RunConfig&, ScenarioResult&)>;

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r = {
      {"example_a", example_a},           {"example_b", example_b},
      {"example_c", example_c},           {"buc_decay", buc_decay},
      {"vmo_diagnostic", vmo_diagnostic}, {"norm_limit_step", norm_limit_step},
      {"covariance_audit", covariance_audit},
  };
  return r;
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  return {{"command", command},
          {"scenario", scenario},
          {"f", f_expr},
          {"g", g_expr},
          {"t", t_list},
          {"basis_dim", basis_dim},
          {"tail_dim", tail_dim},
          {"quad_order", quad_order},
          {"quad_angles", quad_angles},
          {"grid",
           {{"r_min", grid.r_min}, {"r_max", grid.r_max}, {"n_radial", grid.n_radial}, {"n_angular", grid.n_angular}}},
          {"out", out},
          {"format", format},
          {"threshold", threshold},
          {"tail_tolerance", tail_tolerance}};
}

std::vector<double> parse_t_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty entry in t list '" + text + "'");
    // Allow simple fractions such as 1/64.
    const auto slash = item.find('/');
    if (slash != std::string::npos)
      out.push_back(parse_double("t", trim(item.substr(0, slash))) / parse_double("t", trim(item.substr(slash + 1))));
    else
      out.push_back(parse_double("t", item));
  }
  return out;
}

SampleGrid parse_grid(const std::string& text) {
  // r0:r1:nr,na
  const auto comma = text.find(',');
  const std::string radial = trim(text.substr(0, comma));
  std::vector<std::string> parts;
  std::stringstream ss(radial);
  std::string p;
  while (std::getline(ss, p, ':')) parts.push_back(trim(p));
  if (parts.size() != 3 || comma == std::string::npos)
    throw ConfigError("grid must look like r0:r1:nr,na (got '" + text + "')");
  SampleGrid g{parse_double("grid", parts[0]), parse_double("grid", parts[1]), parse_int("grid", parts[2]),
               parse_int("grid", trim(text.substr(comma + 1)))};
  if (g.r_min < 0.0 || g.r_max < g.r_min || g.n_radial < 1 || g.n_angular < 1)
    throw ConfigError("grid needs 0 <= r0 <= r1, nr >= 1, na >= 1");
  return g;
}

void set_config_key(RunConfig& cfg, const std::string& key_in, const std::string& value_in) {
  std::string key = trim(key_in);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string v = trim(value_in);
  if (key == "command") cfg.command = v;
  else if (key == "scenario") cfg.scenario = v;
  else if (key == "f") cfg.f_expr = v;
  else if (key == "g") cfg.g_expr = v;
  else if (key == "t" || key == "t_list") cfg.t_list = parse_t_list(v);
  else if (key == "basis_dim") cfg.basis_dim = parse_int(key, v);
  else if (key == "tail_dim") cfg.tail_dim = parse_int(key, v);
  else if (key == "quad_order") cfg.quad_order = parse_int(key, v);
  else if (key == "quad_angles") cfg.quad_angles = parse_int(key, v);
  else if (key == "grid") {
    cfg.grid = parse_grid(v);
    cfg.grid_set = true;
  } else if (key == "out") cfg.out = v;
  else if (key == "format") cfg.format = v;
  else if (key == "threshold") cfg.threshold = parse_double(key, v);
  else if (key == "tail_tolerance") cfg.tail_tolerance = parse_double(key, v);
  else throw ConfigError("unknown setting '" + key_in + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    set_config_key(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void validate(const RunConfig& cfg) {
  if (!cfg.t_list.empty()) check_t_list(cfg.t_list);
  if (cfg.basis_dim < 0 || cfg.basis_dim > 4096) throw ConfigError("basis_dim must lie in [1, 4096]");
  if (cfg.tail_dim < 0) throw ConfigError("tail_dim must be positive");
  if (cfg.basis_dim > 0 && cfg.tail_dim > 0 && cfg.tail_dim < cfg.basis_dim)
    throw ConfigError("tail_dim must be >= basis_dim");
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("format must be csv or json");
  if (cfg.quad_order < 1 || cfg.quad_angles < 1) throw ConfigError("quadrature sizes must be positive");
}

bool ScenarioResult::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

nlohmann::json ScenarioResult::record() const {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& a : assertions)
    if (!a.passed) failures.push_back({{"name", a.name}, {"detail", a.detail}});
  return {{"scenario", name}, {"passed", passed()}, {"assertions", assertions.size()}, {"failures", failures},
          {"files", files}};
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

ScenarioResult run_scenario(const std::string& name, const RunConfig& overrides) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw UnknownScenario("unknown scenario '" + name + "'");
  ScenarioResult res;
  res.name = name;
  it->second(overrides, res);
  return res;
}

}  // namespace fockq
