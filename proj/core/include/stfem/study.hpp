#ifndef STFEM_STUDY_HPP
#define STFEM_STUDY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stfem/analysis.hpp"
#include "stfem/methods.hpp"

namespace stfem {

// Both halves tau and h together at a fixed ratio.
enum class RefineAxis { None, Tau, H, Both };

std::string_view axis_name(RefineAxis a);
RefineAxis parse_axis(std::string_view s);

enum class ReportFormat { Csv, Json };
ReportFormat parse_format(std::string_view s);

struct StudyConfig {
  MethodSpec method;
  double a = 0.0;
  double b = 1.0;
  std::size_t elements = 16;
  double T = 1.0;
  std::size_t slabs = 8;
  RefineAxis refine = RefineAxis::None;
  int levels = 1;
  std::string solution = "heat_sine";
  std::vector<NormSpec> norms{NormSpec{}};
  bool preflight = true;
  std::string output_path;
  ReportFormat format = ReportFormat::Json;

  void validate() const;
  bool operator==(const StudyConfig&) const;
};

// Flat key-value text with [method], [space], [time], [study], [output] sections; see docs/config_format.md.
StudyConfig parse_config(std::string_view text, StudyConfig base = {});
StudyConfig load_config(const std::string& path, StudyConfig base = {});
void set_config_value(StudyConfig& cfg, std::string_view section, std::string_view key, std::string_view value);

struct LevelResult {
  int level = 0;
  double param = 0.0;
  std::size_t slabs = 0;
  std::size_t elements = 0;
  std::vector<double> errors;
  double max_residual = 0.0;
  std::optional<double> cfl_margin;
  double wall_seconds = 0.0;
  bool operator==(const LevelResult&) const = default;
};

struct PreflightResult {
  std::string axis;         // fixed axis that was doubled
  std::vector<double> finest;
  std::vector<double> doubled;
  bool operator==(const PreflightResult&) const = default;
};

struct StudyReport {
  StudyConfig config;
  std::vector<std::string> norms;
  std::vector<LevelResult> levels;
  std::vector<std::vector<std::optional<double>>> orders;  // [norm][level-1]
  std::optional<PreflightResult> preflight;
  std::string version;
  bool operator==(const StudyReport&) const;
};

inline constexpr std::string_view kVersion = "stfem 0.1.0";

// Runs the levels sequentially. With refine = tau or h and levels >= 2, the finest level is first
// re-solved with the fixed axis doubled; a change above 10% of any error rejects the config.
StudyReport run_study(const StudyConfig& cfg);

nlohmann::json config_to_json(const StudyConfig& cfg);
StudyConfig config_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const StudyReport& r);
StudyReport report_from_json(const nlohmann::json& j);

std::string emit_report(const StudyReport& r, ReportFormat format);
void write_report(const StudyReport& r, ReportFormat format, const std::string& path);

}  // namespace stfem

#endif
