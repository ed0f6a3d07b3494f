#include "fockq/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

namespace fockq {

namespace {

std::string row(std::initializer_list<std::string> cells) {
  std::string out;
  for (const auto& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  out += '\n';
  return out;
}

std::string fmt(double v) { return format_csv_double(v); }

}  // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename into " + path + ": " + ec.message());
  }
}

std::string format_csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string sweep_csv(const SweepReport& rep) {
  std::string out = row({"t", "semi_comm_norm", "semi_comm_sup", "hankel_f_bound", "hankel_g_bound", "bmo_f",
                         "heat_sup", "N_used", "M_used", "tail_indicator", "method", "flagged"});
  for (const auto& p : rep.points)
    out += row({fmt(p.t), fmt(p.semi_comm_norm), fmt(p.semi_comm_sup), fmt(p.hankel_f_bound),
                fmt(p.hankel_g_bound), fmt(p.bmo_f), fmt(p.heat_sup), std::to_string(p.N_used),
                std::to_string(p.M_used), fmt(p.tail_indicator), p.method, p.flagged ? "1" : "0"});
  return out;
}

nlohmann::json to_json(const SweepConfig& cfg) {
  return {{"basis_dim", cfg.basis_dim},
          {"basis_dims", cfg.basis_dims},
          {"tail_dim", cfg.tail_dim},
          {"n_constant", cfg.n_constant},
          {"n_min", cfg.n_min},
          {"n_cap", cfg.n_cap},
          {"threshold", cfg.threshold},
          {"tail_tolerance", cfg.tail_tolerance},
          {"grid",
           {{"r_min", cfg.grid.r_min},
            {"r_max", cfg.grid.r_max},
            {"n_radial", cfg.grid.n_radial},
            {"n_angular", cfg.grid.n_angular}}},
          {"grid_scales_with_t", cfg.grid_scales_with_t},
          {"quad_order", cfg.quad_order},
          {"quad_angles", cfg.quad_angles}};
}

std::string sweep_json(const SweepReport& rep, const nlohmann::json& run_config) {
  nlohmann::json j;
  j["config"] = run_config;
  j["sweep_config"] = to_json(rep.config);
  j["f"] = rep.f_expr;
  j["g"] = rep.g_expr;
  j["verdict"] = to_string(rep.verdict);
  auto& pts = j["points"] = nlohmann::json::array();
  for (const auto& p : rep.points) {
    nlohmann::json q = {{"t", p.t},
                        {"semi_comm_norm", p.semi_comm_norm},
                        {"semi_comm_sup", p.semi_comm_sup},
                        {"hankel_f_bound", p.hankel_f_bound},
                        {"hankel_g_bound", p.hankel_g_bound},
                        {"bmo_f", p.bmo_f},
                        {"heat_sup", p.heat_sup},
                        {"N_used", p.N_used},
                        {"M_used", p.M_used},
                        {"tail_indicator", p.tail_indicator},
                        {"method", p.method},
                        {"flagged", p.flagged}};
    if (!p.error.empty()) q["error"] = p.error;
    pts.push_back(std::move(q));
  }
  return j.dump(2) + "\n";
}

std::string oscillation_csv(const OscillationReport& rep) {
  std::string out = row({"re_w", "im_w", "re_heat", "im_heat", "mo"});
  for (std::size_t i = 0; i < rep.grid.size(); ++i)
    out += row({fmt(rep.grid[i].real()), fmt(rep.grid[i].imag()), fmt(rep.heat[i].real()),
                fmt(rep.heat[i].imag()), fmt(rep.mo[i])});
  return out;
}

std::string norm_limit_csv(const NormLimitReport& rep) {
  std::string out = row({"t", "lower", "upper", "gap"});
  for (const auto& p : rep.points) out += row({fmt(p.t), fmt(p.lower), fmt(p.upper), fmt(p.gap)});
  return out;
}

std::string norm_limit_json(const NormLimitReport& rep, const nlohmann::json& run_config) {
  nlohmann::json j;
  j["config"] = run_config;
  j["f"] = rep.f_expr;
  j["lower_monotone"] = rep.lower_monotone;
  auto& pts = j["points"] = nlohmann::json::array();
  for (const auto& p : rep.points)
    pts.push_back({{"t", p.t}, {"lower", p.lower}, {"upper", p.upper}, {"gap", p.gap}});
  return j.dump(2) + "\n";
}

}  // namespace fockq
