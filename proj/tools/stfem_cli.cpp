#include <CLI11.hpp>

#include <cstdio>
#include <deque>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stfem/catalog.hpp"
#include "stfem/error.hpp"
#include "stfem/identities.hpp"
#include "stfem/manufactured.hpp"
#include "stfem/study.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kCflViolation = 3;
constexpr int kSolverFailure = 4;

// Flag values are kept as text and applied through the config parser, so flags and files share validation.
struct Overrides {
  std::optional<std::string> config;
  // deque keeps slot references stable while CLI11 holds them
  std::deque<std::pair<std::pair<std::string, std::string>, std::optional<std::string>>> values;
  bool cfl_override = false;

  std::optional<std::string>& slot(const std::string& section, const std::string& key) {
    values.push_back({{section, key}, std::nullopt});
    return values.back().second;
  }
};

void add_problem_flags(CLI::App* cmd, Overrides& o, bool study) {
  cmd->add_option("--config", o.config, "config file (flat key-value format)");
  cmd->add_option("--method", o.slot("method", "scheme"), "scheme id, see `stfem catalog`");
  cmd->add_option("--q", o.slot("time", "q"), "time degree");
  cmd->add_option("--p", o.slot("space", "p"), "space degree (1..6)");
  cmd->add_option("--elements", o.slot("space", "elements"), "number of elements M");
  cmd->add_option("--slabs", o.slot("time", "slabs"), "number of time slabs N");
  cmd->add_option("--T", o.slot("time", "T"), "final time");
  cmd->add_option("--nu", o.slot("method", "nu"), "diffusion coefficient");
  cmd->add_option("--c", o.slot("method", "c"), "wave speed");
  cmd->add_option("--delta", o.slot("method", "delta"), "damping coefficient (wave-vanilla)");
  cmd->add_option("--cfl-constant", o.slot("method", "cfl_constant"), "C_CFL (0 selects the default)");
  cmd->add_option("--solution", o.slot("study", "solution"), "manufactured solution id");
  cmd->add_option("--norms", o.slot("study", "norms"), "comma-separated norms, e.g. LinfL2,LinfL2:dtu");
  cmd->add_flag("--cfl-override", o.cfl_override, "solve even when the CFL condition is violated");
  cmd->add_option("--out", o.slot("output", "path"), "write the report to this file instead of stdout");
  cmd->add_option("--format", o.slot("output", "format"), "csv or json")->check(CLI::IsMember({"csv", "json"}));
  if (study) {
    cmd->add_option("--refine", o.slot("study", "refine"), "refinement axis")
        ->check(CLI::IsMember({"none", "tau", "h", "both"}));
    cmd->add_option("--levels", o.slot("study", "levels"), "number of refinement levels");
    cmd->add_option("--preflight", o.slot("study", "preflight"), "true/false: fixed-axis contamination check");
  }
}

stfem::StudyConfig build_config(const Overrides& o) {
  stfem::StudyConfig cfg;
  if (o.config) cfg = stfem::load_config(*o.config);
  for (const auto& [where, value] : o.values)
    if (value) stfem::set_config_value(cfg, where.first, where.second, *value);
  if (o.cfl_override) cfg.method.cfl_override = true;
  return cfg;
}

void emit(const stfem::StudyReport& r) {
  if (r.config.output_path.empty()) {
    std::cout << stfem::emit_report(r, r.config.format);
    if (r.config.format == stfem::ReportFormat::Json) std::cout << "\n";
  } else {
    stfem::write_report(r, r.config.format, r.config.output_path);
  }
}

void print_diagnostics(const stfem::StudyReport& r) {
  for (const auto& l : r.levels) {
    std::fprintf(stderr, "level %d: slabs=%zu elements=%zu max_residual=%.3e", l.level, l.slabs, l.elements,
                 l.max_residual);
    if (l.cfl_margin) std::fprintf(stderr, " cfl_margin=%.4g%s", *l.cfl_margin, *l.cfl_margin < 1 ? " (violated)" : "");
    std::fprintf(stderr, " wall=%.3fs\n", l.wall_seconds);
  }
}

int exit_code(const stfem::Error& e) {
  switch (e.code()) {
    case stfem::ErrorCode::CflViolation:
      return kCflViolation;
    case stfem::ErrorCode::ConfigInvalid:
    case stfem::ErrorCode::UnknownSolutionId:
    case stfem::ErrorCode::InvalidDegree:
    case stfem::ErrorCode::InvalidCount:
    case stfem::ErrorCode::IoFailure:
    case stfem::ErrorCode::IncompatibleDimensions:
      return kConfigError;
    default:
      return kSolverFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"space-time finite element solver and convergence harness"};
  app.require_subcommand(1);

  Overrides solve_flags, study_flags;
  auto* solve = app.add_subcommand("solve", "single run, prints errors and solver diagnostics");
  add_problem_flags(solve, solve_flags, false);
  auto* study = app.add_subcommand("study", "refinement study with experimental orders");
  add_problem_flags(study, study_flags, true);

  auto* list = app.add_subcommand("list-solutions", "list manufactured solutions");

  std::uint64_t seed = stfem::kDefaultSeed;
  auto* verify = app.add_subcommand("verify", "run the algebraic identity suite");
  verify->add_option("--seed", seed, "random seed");

  std::string catalog_out;
  auto* catalog = app.add_subcommand("catalog", "print the method catalog (markdown)");
  catalog->add_option("--out", catalog_out, "write to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*solve || *study) {
      auto cfg = build_config(*solve ? solve_flags : study_flags);
      if (*solve) {
        cfg.refine = stfem::RefineAxis::None;
        cfg.levels = 1;
      }
      const auto report = stfem::run_study(cfg);
      print_diagnostics(report);
      emit(report);
      return kOk;
    }
    if (*list) {
      for (const auto& s : stfem::list_solutions()) {
        const char* eq = s.equation == stfem::Equation::Heat ? "heat" : s.equation == stfem::Equation::Wave ? "wave" : "any";
        std::printf("%-22s %-5s %s\n", s.id.c_str(), eq, s.description.c_str());
      }
      return kOk;
    }
    if (*verify) {
      bool all = true;
      for (const auto& r : stfem::run_identity_suite(seed)) {
        std::printf("%s %-9s %-90s worst=%.3e\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), r.name.c_str(), r.worst);
        if (!r.detail.empty()) std::printf("     %s\n", r.detail.c_str());
        all = all && r.passed;
      }
      return all ? kOk : kSolverFailure;
    }
    if (*catalog) {
      const auto text = stfem::render_catalog();
      if (catalog_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(catalog_out);
        f << text;
        if (!f) throw stfem::Error(stfem::ErrorCode::IoFailure, "cannot write " + catalog_out);
      }
      return kOk;
    }
  } catch (const stfem::Error& e) {
    std::fprintf(stderr, "stfem: %s\n", e.what());
    return exit_code(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "stfem: %s\n", e.what());
    return kSolverFailure;
  }
  return kOk;
}
