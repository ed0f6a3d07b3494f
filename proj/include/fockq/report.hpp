#pragma once

#include <string>

#include <json.hpp>

#include "fockq/heat.hpp"
#include "fockq/spectral.hpp"

namespace fockq {

/// Writes to a sibling temp file, then renames over path.
void write_file_atomic(const std::string& path, const std::string& content);

/// %.16e: 17 significant digits, fixed scientific layout.
std::string format_csv_double(double v);

std::string sweep_csv(const SweepReport& rep);
/// run_config is echoed verbatim under "config".
std::string sweep_json(const SweepReport& rep, const nlohmann::json& run_config);

/// Columns re_w, im_w, re_heat, im_heat, mo.
std::string oscillation_csv(const OscillationReport& rep);

std::string norm_limit_csv(const NormLimitReport& rep);
std::string norm_limit_json(const NormLimitReport& rep, const nlohmann::json& run_config);

nlohmann::json to_json(const SweepConfig& cfg);

}  // namespace fockq
