// fockq: command-line front end.
//
// Symbol expressions: z, zbar, numbers (1, 2.5, 1+2i), phase(a), planewave(xi),
// radial_dyadic(J), indicator(r), sampled(name), piecewise([...], [...], v0),
// conj(e), re(e), scale(e, s), translate(e, w), combined with +, -, * and
// parentheses.
//
// Exit status: 0 success, 1 a scenario assertion failed, 2 usage or input error.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "fockq/heat.hpp"
#include "fockq/kernels.hpp"
#include "fockq/parse.hpp"
#include "fockq/report.hpp"
#include "fockq/scenario.hpp"
#include "fockq/spectral.hpp"

namespace {

using fockq::RunConfig;

constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

/// Flags seen on the command line, applied over the config file.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::string config_path;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(flag, [this, key](const std::string& v) { values[key] = v; }, help);
  }
};

void add_common(CLI::App* app, FlagSet& flags) {
  app->add_option("--config", flags.config_path, "flat key = value file; flags override it");
  flags.add(app, "--out", "out", "output path (default: stdout)");
  flags.add(app, "--format", "format", "csv or json");
}

void add_sweep_flags(CLI::App* app, FlagSet& flags) {
  flags.add(app, "--basis-dim", "basis_dim", "basis dimension N (default: clamp(ceil(8/t), 64, 4096))");
  flags.add(app, "--tail-dim", "tail_dim", "middle projection cut M >= N (default: 2N + 32)");
  flags.add(app, "--quad-order", "quad_order", "radial quadrature order");
  flags.add(app, "--quad-angles", "quad_angles", "angular quadrature points");
  flags.add(app, "--grid", "grid", "sample grid r0:r1:nr,na");
  flags.add(app, "--threshold", "threshold", "verdict threshold");
  flags.add(app, "--tail-tolerance", "tail_tolerance", "tail indicator tolerance");
}

RunConfig resolve(const std::string& command, const FlagSet& flags) {
  RunConfig cfg;
  if (!flags.config_path.empty()) fockq::apply_config_file(cfg, flags.config_path);
  for (const auto& [k, v] : flags.values) fockq::set_config_key(cfg, k, v);
  cfg.command = command;
  fockq::validate(cfg);
  return cfg;
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.out.empty())
    std::cout << content;
  else
    fockq::write_file_atomic(cfg.out, content);
}

fockq::SweepConfig sweep_config(const RunConfig& cfg) {
  fockq::SweepConfig s;
  s.basis_dim = cfg.basis_dim;
  s.tail_dim = cfg.tail_dim;
  s.threshold = cfg.threshold;
  s.tail_tolerance = cfg.tail_tolerance;
  s.grid = cfg.grid;
  s.quad_order = cfg.quad_order;
  s.quad_angles = cfg.quad_angles;
  return s;
}

fockq::Symbol need_symbol(const std::string& expr, const char* what) {
  if (expr.empty()) throw fockq::ConfigError(std::string("missing symbol expression for ") + what);
  return fockq::parse_symbol(expr);
}

void need_t(const RunConfig& cfg) {
  if (cfg.t_list.empty()) throw fockq::ConfigError("missing t list (--t)");
}

int run_sweep(const RunConfig& cfg) {
  need_t(cfg);
  const auto f = need_symbol(cfg.f_expr, "f");
  const auto g = need_symbol(cfg.g_expr, "g");
  const auto rep = fockq::t_sweep(f, g, cfg.t_list, sweep_config(cfg));
  emit(cfg, cfg.format == "json" ? fockq::sweep_json(rep, cfg.to_json()) : fockq::sweep_csv(rep));
  return 0;
}

int run_norm_limit(const RunConfig& cfg) {
  need_t(cfg);
  const auto f = need_symbol(cfg.f_expr, "f");
  const auto rep = fockq::norm_limit_sweep(f, cfg.t_list, cfg.grid);
  emit(cfg, cfg.format == "json" ? fockq::norm_limit_json(rep, cfg.to_json()) : fockq::norm_limit_csv(rep));
  return 0;
}

int run_heat(const RunConfig& cfg) {
  need_t(cfg);
  const auto f = need_symbol(cfg.f_expr, "f");
  const auto& rule = fockq::cached_polar_rule(cfg.quad_order, cfg.quad_angles);
  const auto pts = cfg.grid.points();
  if (cfg.format == "json") {
    nlohmann::json j;
    j["config"] = cfg.to_json();
    j["f"] = fockq::to_string(f);
    auto& arr = j["points"] = nlohmann::json::array();
    for (double t : cfg.t_list) {
      const auto field = fockq::heat_field(f, t, pts, rule);
      for (std::size_t i = 0; i < pts.size(); ++i)
        arr.push_back({{"t", t},
                       {"re_w", pts[i].real()},
                       {"im_w", pts[i].imag()},
                       {"re_heat", field.values[i].real()},
                       {"im_heat", field.values[i].imag()}});
    }
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  std::string out = "t,re_w,im_w,re_heat,im_heat\n";
  for (double t : cfg.t_list) {
    const auto field = fockq::heat_field(f, t, pts, rule);
    for (std::size_t i = 0; i < pts.size(); ++i)
      out += fockq::format_csv_double(t) + "," + fockq::format_csv_double(pts[i].real()) + "," +
             fockq::format_csv_double(pts[i].imag()) + "," + fockq::format_csv_double(field.values[i].real()) + "," +
             fockq::format_csv_double(field.values[i].imag()) + "\n";
  }
  emit(cfg, out);
  return 0;
}

int run_bmo(const RunConfig& cfg) {
  need_t(cfg);
  const auto f = need_symbol(cfg.f_expr, "f");
  const auto& rule = fockq::cached_polar_rule(cfg.quad_order, cfg.quad_angles);
  auto grid = cfg.grid;
  if (fockq::is_radial(f)) grid.n_angular = 1;
  const auto pts = grid.points();
  if (cfg.format == "json") {
    nlohmann::json j;
    j["config"] = cfg.to_json();
    j["f"] = fockq::to_string(f);
    auto& arr = j["points"] = nlohmann::json::array();
    for (double t : cfg.t_list) {
      const auto rep = fockq::oscillation_report(f, t, pts, rule);
      arr.push_back({{"t", t}, {"bmo_estimate", rep.bmo_estimate}, {"heat_sup", rep.heat_sup}});
    }
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  std::string out = "t,bmo_estimate,heat_sup\n";
  for (double t : cfg.t_list) {
    const auto rep = fockq::oscillation_report(f, t, pts, rule);
    out += fockq::format_csv_double(t) + "," + fockq::format_csv_double(rep.bmo_estimate) + "," +
           fockq::format_csv_double(rep.heat_sup) + "\n";
  }
  emit(cfg, out);
  return 0;
}

std::string scenario_usage() {
  std::string s = "available scenarios:";
  for (const auto& n : fockq::scenario_names()) s += " " + n;
  return s;
}

int run_scenario_cmd(const std::string& name, RunConfig cfg) {
  cfg.scenario = name;
  const auto res = fockq::run_scenario(name, cfg);
  for (const auto& a : res.assertions)
    std::cout << (a.passed ? "ok   " : "FAIL ") << a.name << (a.detail.empty() ? "" : "  [" + a.detail + "]")
              << "\n";
  if (!res.passed()) {
    std::cerr << res.record().dump() << "\n";
    return kExitAssertion;
  }
  for (const auto& f : res.files) std::cout << "wrote " << f << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  fockq::kernels::apply_thread_limit_from_env();

  CLI::App app{"Toeplitz quantization on weighted Fock spaces"};
  app.require_subcommand(1);

  FlagSet sweep_flags, nl_flags, heat_flags, bmo_flags, sc_flags;

  auto* sweep = app.add_subcommand("sweep", "semi-commutator norm sweep over t");
  add_common(sweep, sweep_flags);
  add_sweep_flags(sweep, sweep_flags);
  sweep_flags.add(sweep, "--f", "f", "first symbol");
  sweep_flags.add(sweep, "--g", "g", "second symbol");
  sweep_flags.add(sweep, "--t", "t", "decreasing t list, e.g. 0.5,0.1,0.02");

  auto* nl = app.add_subcommand("norm-limit", "heat-transform sup against the symbol sup");
  add_common(nl, nl_flags);
  nl_flags.add(nl, "--f", "f", "symbol");
  nl_flags.add(nl, "--t", "t", "decreasing t list");
  nl_flags.add(nl, "--grid", "grid", "sample grid r0:r1:nr,na");

  auto* heat = app.add_subcommand("heat", "heat transform on a polar grid");
  add_common(heat, heat_flags);
  heat_flags.add(heat, "--f", "f", "symbol");
  heat_flags.add(heat, "--t", "t", "t value or decreasing list");
  heat_flags.add(heat, "--grid", "grid", "sample grid r0:r1:nr,na");
  heat_flags.add(heat, "--quad-order", "quad_order", "radial quadrature order");
  heat_flags.add(heat, "--quad-angles", "quad_angles", "angular quadrature points");

  auto* bmo = app.add_subcommand("bmo", "BMO seminorm estimate per t");
  add_common(bmo, bmo_flags);
  bmo_flags.add(bmo, "--f", "f", "symbol");
  bmo_flags.add(bmo, "--t-list,--t", "t", "decreasing t list");
  bmo_flags.add(bmo, "--grid", "grid", "sample grid r0:r1:nr,na");
  bmo_flags.add(bmo, "--quad-order", "quad_order", "radial quadrature order");
  bmo_flags.add(bmo, "--quad-angles", "quad_angles", "angular quadrature points");

  std::string scenario_name;
  auto* sc = app.add_subcommand("scenario", "run a named scenario with its built-in assertions");
  sc->add_option("name", scenario_name, "scenario name")->required();
  add_common(sc, sc_flags);
  add_sweep_flags(sc, sc_flags);
  sc_flags.add(sc, "--t", "t", "replace the scenario t list");
  sc->footer(scenario_usage());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sweep) return run_sweep(resolve("sweep", sweep_flags));
    if (*nl) return run_norm_limit(resolve("norm-limit", nl_flags));
    if (*heat) return run_heat(resolve("heat", heat_flags));
    if (*bmo) return run_bmo(resolve("bmo", bmo_flags));
    if (*sc) return run_scenario_cmd(scenario_name, resolve("scenario", sc_flags));
  } catch (const fockq::UnknownScenario& e) {
    std::cerr << "error: " << e.what() << "\n" << scenario_usage() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
