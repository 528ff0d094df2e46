#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "holonomy/evolution.hpp"
#include "holonomy/falsify.hpp"
#include "holonomy/synthesis.hpp"

namespace holo::io {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kMatrixSchema = "holonomy-matrix/1";
inline constexpr const char* kPlanSchema = "holonomy-plan/1";
inline constexpr const char* kReportSchema = "holonomy-report/1";
inline constexpr const char* kFalsifySchema = "holonomy-falsify/1";

nlohmann::json matrix_to_json(const Matrix& m, const std::string& label = "");
Matrix matrix_from_json(const nlohmann::json& j);

struct MatrixFile {
    Matrix matrix;
    std::optional<std::string> label;
};

MatrixFile read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const Matrix& m,
                       const std::string& label = "");

nlohmann::json plan_to_json(const synthesis::TightPlan& plan);
synthesis::TightPlan plan_from_json(const nlohmann::json& j);
synthesis::TightPlan read_plan_file(const std::string& path);

nlohmann::json report_to_json(const evolution::TightnessReport& report,
                              const std::string& mode, double wall_seconds);

nlohmann::json falsify_report_to_json(const falsify::FalsifyReport& report);

/// Writes via a temporary file and rename so readers never observe a
/// partially written document.
void atomic_write(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

}  // namespace holo::io
