#include <charconv>
#include <fstream>
#include <sstream>

#include "stfem/error.hpp"
#include "stfem/manufactured.hpp"
#include "stfem/study.hpp"

namespace stfem {

std::string_view axis_name(RefineAxis a) {
  switch (a) {
    case RefineAxis::None: return "none";
    case RefineAxis::Tau: return "tau";
    case RefineAxis::H: return "h";
    case RefineAxis::Both: return "both";
  }
  return "none";
}

RefineAxis parse_axis(std::string_view s) {
  for (auto a : {RefineAxis::None, RefineAxis::Tau, RefineAxis::H, RefineAxis::Both})
    if (axis_name(a) == s) return a;
  throw Error(ErrorCode::ConfigInvalid, "refine must be none, tau, h or both, got '" + std::string(s) + "'");
}

ReportFormat parse_format(std::string_view s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw Error(ErrorCode::ConfigInvalid, "format must be csv or json, got '" + std::string(s) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw Error(ErrorCode::ConfigInvalid, std::string(key) + ": expected a number, got '" + std::string(v) + "'");
  return x;
}

long to_int(std::string_view key, std::string_view v) {
  long x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw Error(ErrorCode::ConfigInvalid, std::string(key) + ": expected an integer, got '" + std::string(v) + "'");
  return x;
}

std::size_t to_count(std::string_view key, std::string_view v) {
  const long x = to_int(key, v);
  if (x < 1) throw Error(ErrorCode::ConfigInvalid, std::string(key) + " must be >= 1");
  return static_cast<std::size_t>(x);
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorCode::ConfigInvalid, std::string(key) + ": expected true or false");
}

std::vector<NormSpec> to_norms(std::string_view v) {
  std::vector<NormSpec> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (!item.empty()) out.push_back(NormSpec::parse(item));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  if (out.empty()) throw Error(ErrorCode::ConfigInvalid, "norms list is empty");
  return out;
}

}  // namespace

void set_config_value(StudyConfig& cfg, std::string_view section, std::string_view key, std::string_view value) {
  const std::string where = std::string(section) + "." + std::string(key);
  auto& m = cfg.method;
  if (section == "method") {
    if (key == "scheme") {
      const auto s = parse_scheme(value);
      if (!s) throw Error(ErrorCode::ConfigInvalid, "unknown scheme '" + std::string(value) + "'");
      m.scheme = *s;
    } else if (key == "nu") m.nu = to_double(where, value);
    else if (key == "c") m.c = to_double(where, value);
    else if (key == "delta") m.delta = to_double(where, value);
    else if (key == "cfl_constant") m.cfl_constant = to_double(where, value);
    else if (key == "cfl_override") m.cfl_override = to_bool(where, value);
    else if (key == "rhs_points") m.rhs_points = static_cast<int>(to_int(where, value));
    else if (key == "space_points") m.space_points = static_cast<int>(to_int(where, value));
    else throw Error(ErrorCode::ConfigInvalid, "unknown key " + where);
  } else if (section == "space") {
    if (key == "a") cfg.a = to_double(where, value);
    else if (key == "b") cfg.b = to_double(where, value);
    else if (key == "elements") cfg.elements = to_count(where, value);
    else if (key == "p") m.p = static_cast<int>(to_int(where, value));
    else throw Error(ErrorCode::ConfigInvalid, "unknown key " + where);
  } else if (section == "time") {
    if (key == "T") cfg.T = to_double(where, value);
    else if (key == "slabs") cfg.slabs = to_count(where, value);
    else if (key == "q") m.q = static_cast<int>(to_int(where, value));
    else throw Error(ErrorCode::ConfigInvalid, "unknown key " + where);
  } else if (section == "study") {
    if (key == "refine") cfg.refine = parse_axis(value);
    else if (key == "levels") cfg.levels = static_cast<int>(to_count(where, value));
    else if (key == "solution") cfg.solution = std::string(value);
    else if (key == "norms") cfg.norms = to_norms(value);
    else if (key == "preflight") cfg.preflight = to_bool(where, value);
    else throw Error(ErrorCode::ConfigInvalid, "unknown key " + where);
  } else if (section == "output") {
    if (key == "path") cfg.output_path = std::string(value);
    else if (key == "format") cfg.format = parse_format(value);
    else throw Error(ErrorCode::ConfigInvalid, "unknown key " + where);
  } else {
    throw Error(ErrorCode::ConfigInvalid, "unknown section [" + std::string(section) + "]");
  }
}

StudyConfig parse_config(std::string_view text, StudyConfig base) {
  std::string section;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error(ErrorCode::ConfigInvalid, "line " + std::to_string(lineno) + ": malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::ConfigInvalid, "line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw Error(ErrorCode::ConfigInvalid, "line " + std::to_string(lineno) + ": key outside a section");
    set_config_value(base, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

StudyConfig load_config(const std::string& path, StudyConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

void StudyConfig::validate() const {
  if (levels < 1) throw Error(ErrorCode::ConfigInvalid, "levels must be >= 1");
  if (!(T > 0.0)) throw Error(ErrorCode::ConfigInvalid, "T must be positive");
  if (!(b > a)) throw Error(ErrorCode::ConfigInvalid, "need a < b");
  if (norms.empty()) throw Error(ErrorCode::ConfigInvalid, "no norms requested");
  const auto& sol = get_solution(solution);
  if (!sol.compatible(method.scheme))
    throw Error(ErrorCode::ConfigInvalid, "solution '" + solution + "' does not fit " +
                                              std::string(scheme_name(method.scheme)));
  if (a != 0.0 || b != 1.0) throw Error(ErrorCode::ConfigInvalid, "manufactured solutions live on (0,1)");
  if (method.q < min_time_degree(method.scheme))
    throw Error(ErrorCode::ConfigInvalid, std::string(scheme_name(method.scheme)) + " needs q >= " +
                                              std::to_string(min_time_degree(method.scheme)));
  if (method.p < 1 || method.p > 6) throw Error(ErrorCode::ConfigInvalid, "p must be in 1..6");
  for (const auto& n : norms)
    if (!is_wave(method.scheme) && n.quantity == Quantity::V)
      throw Error(ErrorCode::ConfigInvalid, "velocity norms need a wave scheme");
}

namespace {
bool same_method(const MethodSpec& x, const MethodSpec& y) {
  return x.scheme == y.scheme && x.nu == y.nu && x.c == y.c && x.delta == y.delta && x.q == y.q && x.p == y.p &&
         x.cfl_constant == y.cfl_constant && x.cfl_override == y.cfl_override && x.rhs_points == y.rhs_points &&
         x.space_points == y.space_points;
}
}  // namespace

bool StudyConfig::operator==(const StudyConfig& o) const {
  return same_method(method, o.method) && a == o.a && b == o.b && elements == o.elements && T == o.T &&
         slabs == o.slabs && refine == o.refine && levels == o.levels && solution == o.solution &&
         norms == o.norms && preflight == o.preflight && output_path == o.output_path && format == o.format;
}

nlohmann::json config_to_json(const StudyConfig& c) {
  nlohmann::json norms = nlohmann::json::array();
  for (const auto& n : c.norms) norms.push_back(n.label());
  return nlohmann::json{
      {"method",
       {{"scheme", scheme_name(c.method.scheme)},
        {"nu", c.method.nu},
        {"c", c.method.c},
        {"delta", c.method.delta},
        {"cfl_constant", c.method.cfl_constant},
        {"cfl_override", c.method.cfl_override},
        {"rhs_points", c.method.rhs_points},
        {"space_points", c.method.space_points}}},
      {"space", {{"a", c.a}, {"b", c.b}, {"elements", c.elements}, {"p", c.method.p}}},
      {"time", {{"T", c.T}, {"slabs", c.slabs}, {"q", c.method.q}}},
      {"study",
       {{"refine", axis_name(c.refine)},
        {"levels", c.levels},
        {"solution", c.solution},
        {"norms", norms},
        {"preflight", c.preflight}}},
      {"output", {{"path", c.output_path}, {"format", c.format == ReportFormat::Csv ? "csv" : "json"}}}};
}

StudyConfig config_from_json(const nlohmann::json& j) {
  StudyConfig c;
  const auto& m = j.at("method");
  const auto scheme = parse_scheme(m.at("scheme").get<std::string>());
  if (!scheme) throw Error(ErrorCode::ConfigInvalid, "unknown scheme in report");
  c.method.scheme = *scheme;
  c.method.nu = m.at("nu");
  c.method.c = m.at("c");
  c.method.delta = m.at("delta");
  c.method.cfl_constant = m.at("cfl_constant");
  c.method.cfl_override = m.at("cfl_override");
  c.method.rhs_points = m.at("rhs_points");
  c.method.space_points = m.at("space_points");
  const auto& s = j.at("space");
  c.a = s.at("a");
  c.b = s.at("b");
  c.elements = s.at("elements");
  c.method.p = s.at("p");
  const auto& t = j.at("time");
  c.T = t.at("T");
  c.slabs = t.at("slabs");
  c.method.q = t.at("q");
  const auto& st = j.at("study");
  c.refine = parse_axis(st.at("refine").get<std::string>());
  c.levels = st.at("levels");
  c.solution = st.at("solution");
  c.norms.clear();
  for (const auto& n : st.at("norms")) c.norms.push_back(NormSpec::parse(n.get<std::string>()));
  c.preflight = st.at("preflight");
  const auto& o = j.at("output");
  c.output_path = o.at("path");
  c.format = parse_format(o.at("format").get<std::string>());
  return c;
}

}  // namespace stfem
