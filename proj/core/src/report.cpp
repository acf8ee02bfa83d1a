#include <cstdio>
#include <fstream>
#include <sstream>

#include "stfem/error.hpp"
#include "stfem/study.hpp"

namespace stfem {

namespace {

nlohmann::json optional_number(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

std::optional<double> number_or_null(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::json report_to_json(const StudyReport& r) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : r.levels) {
    nlohmann::json errors = nlohmann::json::object();
    for (std::size_t k = 0; k < r.norms.size(); ++k) errors[r.norms[k]] = l.errors[k];
    levels.push_back({{"level", l.level},
                      {"param", l.param},
                      {"slabs", l.slabs},
                      {"elements", l.elements},
                      {"errors", errors},
                      {"max_residual", l.max_residual},
                      {"cfl_margin", optional_number(l.cfl_margin)},
                      {"wall_seconds", l.wall_seconds}});
  }
  nlohmann::json eoc = nlohmann::json::object();
  for (std::size_t k = 0; k < r.norms.size(); ++k) {
    nlohmann::json col = nlohmann::json::array();
    for (const auto& o : r.orders[k]) col.push_back(optional_number(o));
    eoc[r.norms[k]] = col;
  }
  nlohmann::json pf;
  if (r.preflight) pf = {{"axis", r.preflight->axis}, {"finest", r.preflight->finest}, {"doubled", r.preflight->doubled}};
  nlohmann::json norms = r.norms;
  return {{"version", r.version}, {"config", config_to_json(r.config)}, {"norms", norms},
          {"levels", levels},     {"eoc", eoc},                         {"preflight", pf}};
}

StudyReport report_from_json(const nlohmann::json& j) {
  StudyReport r;
  r.version = j.at("version");
  r.config = config_from_json(j.at("config"));
  r.norms = j.at("norms").get<std::vector<std::string>>();
  for (const auto& l : j.at("levels")) {
    LevelResult lr;
    lr.level = l.at("level");
    lr.param = l.at("param");
    lr.slabs = l.at("slabs");
    lr.elements = l.at("elements");
    for (const auto& n : r.norms) lr.errors.push_back(l.at("errors").at(n).get<double>());
    lr.max_residual = l.at("max_residual");
    lr.cfl_margin = number_or_null(l.at("cfl_margin"));
    lr.wall_seconds = l.at("wall_seconds");
    r.levels.push_back(std::move(lr));
  }
  for (const auto& n : r.norms) {
    std::vector<std::optional<double>> col;
    for (const auto& o : j.at("eoc").at(n)) col.push_back(number_or_null(o));
    r.orders.push_back(std::move(col));
  }
  const auto& pf = j.at("preflight");
  if (!pf.is_null())
    r.preflight = PreflightResult{pf.at("axis"), pf.at("finest").get<std::vector<double>>(),
                                  pf.at("doubled").get<std::vector<double>>()};
  return r;
}

std::string emit_report(const StudyReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return report_to_json(r).dump(2) + "\n";
  std::ostringstream out;
  out << "level,param";
  for (const auto& n : r.norms) out << "," << n;
  for (const auto& n : r.norms) out << ",eoc_" << n;
  out << "\n";
  for (std::size_t l = 0; l < r.levels.size(); ++l) {
    const auto& lv = r.levels[l];
    out << lv.level << "," << g17(lv.param);
    for (double e : lv.errors) out << "," << g17(e);
    for (std::size_t k = 0; k < r.norms.size(); ++k) {
      out << ",";
      if (l > 0 && r.orders[k][l - 1]) out << g17(*r.orders[k][l - 1]);
    }
    out << "\n";
  }
  return out.str();
}

void write_report(const StudyReport& r, ReportFormat format, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  f << emit_report(r, format);
  if (!f) throw Error(ErrorCode::IoFailure, "write failed for " + path);
}

}  // namespace stfem
