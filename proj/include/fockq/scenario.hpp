#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fockq/symbol.hpp"

namespace fockq {

class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnknownScenario : public Error {
 public:
  using Error::Error;
};

/// Effective settings of one CLI run. Empty/zero fields mean "use the
/// command or scenario default".
struct RunConfig {
  std::string command;  // sweep | norm-limit | heat | bmo | scenario
  std::string scenario;
  std::string f_expr;
  std::string g_expr;
  std::vector<double> t_list;
  int basis_dim = 0;
  int tail_dim = 0;
  int quad_order = 64;
  int quad_angles = 128;
  SampleGrid grid{0.0, 4.0, 64, 32};
  bool grid_set = false;
  std::string out;
  std::string format = "csv";
  double threshold = 0.05;
  double tail_tolerance = 1e-10;

  nlohmann::json to_json() const;
};

/// Applies one key = value setting. Keys: command, scenario, f, g, t (comma
/// list), basis_dim, tail_dim, quad_order, quad_angles, grid (r0:r1:nr,na),
/// out, format, threshold, tail_tolerance.
void set_config_key(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat "key = value" file; '#' starts a comment.
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Validates the invariants: t list positive and strictly decreasing,
/// basis_dim <= 4096, tail_dim >= basis_dim when both are set, format known.
void validate(const RunConfig& cfg);

std::vector<double> parse_t_list(const std::string& text);
SampleGrid parse_grid(const std::string& text);

struct Assertion {
  std::string name;
  bool passed;
  std::string detail;
};

struct ScenarioResult {
  std::string name;
  std::vector<Assertion> assertions;
  std::vector<std::string> files;

  bool passed() const;
  /// {"scenario", "passed", "failures": [{"name", "detail"}...]}
  nlohmann::json record() const;
};

const std::vector<std::string>& scenario_names();

/// Runs a named scenario with its built-in defaults, replaced field-wise by
/// any overrides that are set. Throws UnknownScenario for other names.
ScenarioResult run_scenario(const std::string& name, const RunConfig& overrides);

}  // namespace fockq
