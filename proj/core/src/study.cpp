#include <chrono>
#include <cmath>
#include <sstream>

#include "stfem/error.hpp"
#include "stfem/manufactured.hpp"
#include "stfem/study.hpp"

namespace stfem {

namespace {

struct LevelRun {
  std::vector<double> errors;
  double max_residual = 0.0;
  std::optional<double> cfl_margin;
  double seconds = 0.0;
};

LevelRun run_level(const StudyConfig& cfg, const ManufacturedSolution& sol, std::size_t slabs, std::size_t elements,
                   bool diagnostic = false) {
  const auto start = std::chrono::steady_clock::now();
  const PhysicalParams prm{cfg.method.nu, cfg.method.c, cfg.method.delta, cfg.method.q};
  const bool wave = is_wave(cfg.method.scheme);
  const auto space = build_space(cfg.a, cfg.b, elements, cfg.method.p);
  const auto mesh = TimeMesh::uniform(cfg.T, slabs);
  MethodSpec spec = cfg.method;
  // The pre-flight re-solve refines the fixed axis and may leave the CFL region of the study itself.
  if (diagnostic) spec.cfl_override = true;
  const auto s = solve(spec, space, mesh, sol.problem(prm, cfg.T, wave));
  LevelRun r;
  r.errors = error_norms(s, space, sol.exact(prm), cfg.norms);
  r.max_residual = s.diagnostics.max_residual;
  r.cfl_margin = s.diagnostics.cfl_margin;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

bool StudyReport::operator==(const StudyReport& o) const {
  return config == o.config && norms == o.norms && levels == o.levels && orders == o.orders &&
         preflight == o.preflight && version == o.version;
}

StudyReport run_study(const StudyConfig& cfg) {
  cfg.validate();
  const auto& sol = get_solution(cfg.solution);
  const PhysicalParams prm{cfg.method.nu, cfg.method.c, cfg.method.delta, cfg.method.q};
  const auto check = validate_solution(sol, prm, cfg.T);
  if (!check.passed)
    throw Error(ErrorCode::ConfigInvalid, "manufactured solution '" + sol.id + "' fails its derivative check");

  StudyReport rep;
  rep.config = cfg;
  rep.version = std::string(kVersion);
  for (const auto& n : cfg.norms) rep.norms.push_back(n.label());

  auto resolution = [&](int level) {
    const std::size_t f = std::size_t{1} << level;
    const bool t = cfg.refine == RefineAxis::Tau || cfg.refine == RefineAxis::Both;
    const bool h = cfg.refine == RefineAxis::H || cfg.refine == RefineAxis::Both;
    return std::pair{cfg.slabs * (t ? f : 1), cfg.elements * (h ? f : 1)};
  };

  std::optional<LevelRun> finest;
  const int last = cfg.levels - 1;
  if (cfg.preflight && cfg.levels >= 2 && (cfg.refine == RefineAxis::Tau || cfg.refine == RefineAxis::H)) {
    const auto [N, M] = resolution(last);
    finest = run_level(cfg, sol, N, M);
    const bool fixed_h = cfg.refine == RefineAxis::Tau;
    const auto doubled = fixed_h ? run_level(cfg, sol, N, 2 * M, true) : run_level(cfg, sol, 2 * N, M, true);
    PreflightResult pf{fixed_h ? "h" : "tau", finest->errors, doubled.errors};
    for (std::size_t k = 0; k < cfg.norms.size(); ++k) {
      const double e = finest->errors[k], d = doubled.errors[k];
      if (e == 0.0 && d == 0.0) continue;
      if (std::abs(e - d) > 0.1 * e) {
        std::ostringstream msg;
        msg << "pre-flight: fixed " << pf.axis << "-axis (" << (fixed_h ? "M=" : "N=") << (fixed_h ? M : N)
            << ") contaminates " << rep.norms[k] << ": finest error " << e << ", with " << pf.axis
            << "-axis doubled " << d << "; refine the fixed " << pf.axis << " axis";
        throw Error(ErrorCode::ConfigInvalid, msg.str());
      }
    }
    rep.preflight = pf;
  }

  for (int level = 0; level < cfg.levels; ++level) {
    const auto [N, M] = resolution(level);
    const LevelRun r = (level == last && finest) ? *finest : run_level(cfg, sol, N, M);
    LevelResult lr;
    lr.level = level;
    lr.param = cfg.refine == RefineAxis::H ? (cfg.b - cfg.a) / static_cast<double>(M) : cfg.T / static_cast<double>(N);
    lr.slabs = N;
    lr.elements = M;
    lr.errors = r.errors;
    lr.max_residual = r.max_residual;
    lr.cfl_margin = r.cfl_margin;
    lr.wall_seconds = r.seconds;
    rep.levels.push_back(std::move(lr));
  }

  rep.orders.assign(cfg.norms.size(), {});
  for (std::size_t k = 0; k < cfg.norms.size(); ++k) {
    std::vector<double> params, errors;
    bool positive = true;
    for (const auto& l : rep.levels) {
      params.push_back(l.param);
      errors.push_back(l.errors[k]);
      positive = positive && l.errors[k] > 0.0;
    }
    if (rep.levels.size() >= 2 && positive && cfg.refine != RefineAxis::None) {
      const auto t = compute_eoc(params, errors);
      for (double o : t.orders) rep.orders[k].push_back(o);
    } else {
      rep.orders[k].assign(rep.levels.empty() ? 0 : rep.levels.size() - 1, std::nullopt);
    }
  }
  return rep;
}

}  // namespace stfem
