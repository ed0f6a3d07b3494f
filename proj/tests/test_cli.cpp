#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fockq/report.hpp"
#include "fockq/scenario.hpp"

using namespace fockq;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const auto d = fs::temp_directory_path() / ("fockq_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_SUITE("cli_runner") {

TEST_CASE("t lists and grids") {
  CHECK(parse_t_list("0.5, 0.1,0.02") == std::vector<double>{0.5, 0.1, 0.02});
  CHECK(parse_t_list("1/4,1/64") == std::vector<double>{0.25, 1.0 / 64});
  CHECK_THROWS_AS(parse_t_list("0.5,,0.1"), ConfigError);
  CHECK_THROWS_AS(parse_t_list("abc"), ConfigError);
  const auto g = parse_grid("0:4:64,32");
  CHECK(g.r_min == 0.0);
  CHECK(g.r_max == 4.0);
  CHECK(g.n_radial == 64);
  CHECK(g.n_angular == 32);
  CHECK_THROWS_AS(parse_grid("0:4,32"), ConfigError);
  CHECK_THROWS_AS(parse_grid("4:0:3,2"), ConfigError);
}

TEST_CASE("config keys and validation") {
  RunConfig cfg;
  set_config_key(cfg, "basis-dim", "128");
  set_config_key(cfg, "tail_dim", "300");
  set_config_key(cfg, "t", "0.5,0.1");
  set_config_key(cfg, "format", "json");
  CHECK(cfg.basis_dim == 128);
  CHECK(cfg.tail_dim == 300);
  CHECK_NOTHROW(validate(cfg));
  CHECK_THROWS_AS(set_config_key(cfg, "colour", "red"), ConfigError);
  CHECK_THROWS_AS(set_config_key(cfg, "basis_dim", "12x"), ConfigError);

  RunConfig bad = cfg;
  bad.t_list = {0.1, 0.5};
  CHECK_THROWS_AS(validate(bad), Error);
  bad = cfg;
  bad.basis_dim = 5000;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = cfg;
  bad.tail_dim = 64;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = cfg;
  bad.format = "xml";
  CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("config file, then overrides") {
  const auto dir = scratch_dir();
  const auto path = dir / "run.cfg";
  std::ofstream(path) << "# example\nf = phase(1)\ng = phase(-1)  # trailing comment\n\nt = 0.5, 0.1\nbasis_dim = 64\n";
  RunConfig cfg;
  apply_config_file(cfg, path.string());
  CHECK(cfg.f_expr == "phase(1)");
  CHECK(cfg.g_expr == "phase(-1)");
  CHECK(cfg.t_list.size() == 2);
  set_config_key(cfg, "basis_dim", "96");
  CHECK(cfg.basis_dim == 96);
  const auto j = cfg.to_json();
  CHECK(j["basis_dim"] == 96);
  CHECK(j["f"] == "phase(1)");

  std::ofstream(dir / "broken.cfg") << "f phase(1)\n";
  CHECK_THROWS_AS(apply_config_file(cfg, (dir / "broken.cfg").string()), ConfigError);
  CHECK_THROWS_AS(apply_config_file(cfg, (dir / "missing.cfg").string()), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("CSV numbers use a fixed 17-digit layout") {
  CHECK(format_csv_double(0.1) == "1.0000000000000001e-01");
  CHECK(format_csv_double(-4.0) == "-4.0000000000000000e+00");
  CHECK(std::stod(format_csv_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("atomic writes replace the target and leave no temp files") {
  const auto dir = scratch_dir() / "nested";
  const auto target = dir / "out.csv";
  write_file_atomic(target.string(), "first\n");
  write_file_atomic(target.string(), "second\n");
  CHECK(slurp(target) == "second\n");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
  fs::remove_all(dir.parent_path());
}

TEST_CASE("sweep reports are deterministic and echo the configuration") {
  SweepConfig cfg;
  cfg.grid = SampleGrid{0.0, 1.0, 2, 2};
  const auto a = t_sweep(coord_z(), coord_zbar(), {1.0, 0.25}, cfg);
  const auto b = t_sweep(coord_z(), coord_zbar(), {1.0, 0.25}, cfg);
  CHECK(sweep_csv(a) == sweep_csv(b));
  RunConfig rc;
  rc.f_expr = "z";
  const auto j = nlohmann::json::parse(sweep_json(a, rc.to_json()));
  CHECK(j["config"]["f"] == "z");
  CHECK(j["points"].size() == 2);
  CHECK(j["verdict"].is_string());
  const std::string csv = sweep_csv(a);
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 3);
}

TEST_CASE("scenario registry") {
  const auto& names = scenario_names();
  for (const char* n : {"example_a", "example_b", "example_c", "buc_decay", "vmo_diagnostic", "norm_limit_step",
                        "covariance_audit"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK_THROWS_AS(run_scenario("no_such_scenario", RunConfig{}), UnknownScenario);
}

TEST_CASE("scenario overrides reach the pipeline") {
  const auto dir = scratch_dir();
  RunConfig o;
  o.out = (dir / "c.json").string();
  o.format = "json";
  o.t_list = {0.5, 0.1};
  const auto res = run_scenario("example_c", o);
  CHECK(res.passed());
  const auto j = nlohmann::json::parse(slurp(o.out));
  CHECK(j["points"].size() == 2);
  CHECK(j["config"]["scenario"] == "example_c");
  CHECK(res.record()["passed"] == true);
  fs::remove_all(dir);
}

TEST_CASE("failure records list the failing assertions") {
  ScenarioResult r;
  r.name = "demo";
  r.assertions = {{"ok", true, ""}, {"bad", false, "1 vs 2"}};
  CHECK_FALSE(r.passed());
  const auto j = r.record();
  CHECK(j["failures"].size() == 1);
  CHECK(j["failures"][0]["name"] == "bad");
}

}
