#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "symdet/detect.hpp"

namespace symdet {

inline constexpr int kReportSchemaVersion = 1;

std::string tool_version();

nlohmann::json config_to_json(const DetectConfig& cfg);
DetectConfig config_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const SymmetryReport& report);
/// Inverse of report_to_json; throws InputError on schema mismatches.
SymmetryReport report_from_json(const nlohmann::json& j);

/// Versioned document: schema_version, tool, input, config echo and the report.
nlohmann::json report_document(const SymmetryReport& report, const DetectConfig& cfg, const std::string& input);

/// 2D `angle_rad,residual`, 3D `nx,ny,nz,residual`; header always present, %.17g values,
/// rows sorted by angle / lexicographic normal.
std::string axes_csv(const SymmetryReport& report);
void emit_axes(const SymmetryReport& report, const std::filesystem::path& path);

}  // namespace symdet
