#include "stfem/catalog.hpp"

#include <sstream>

#include "stfem/error.hpp"

namespace stfem {

namespace {

NormSpec ns(const char* text) { return NormSpec::parse(text); }

std::string order(const char* var, int offset) {
  if (offset == 0) return var;
  return std::string(var) + (offset > 0 ? "+" : "") + std::to_string(offset);
}

}  // namespace

const std::vector<CatalogEntry>& method_catalog() {
  static const std::vector<CatalogEntry> entries{
      {Scheme::HeatJamet, "discontinuous Galerkin in time for the heat equation",
       "broken P_q in time x V_h", "broken P_q in time x V_h",
       "sum_n (dt u, w)_{Q_n} + ([u]_n, w(t_n^+)) + nu (grad u, grad w)_{Q_n}; first slab (u(0^+) - u0, w(0^+))",
       "weak, through the jump term at t_0 with Pi_h u0", "none", {{ns("LinfL2"), 1, 1}}},
      {Scheme::HeatAzizMonk, "continuous Galerkin in time for the heat equation",
       "continuous P_q in time x V_h", "broken P_{q-1} in time x V_h",
       "sum_n (dt u, w)_{Q_n} + nu (grad u, grad w)_{Q_n}",
       "strong, u(0) = Pi_h u0", "none", {{ns("LinfL2"), 1, 1}}},
      {Scheme::WaveVanilla, "single-field discontinuous Galerkin in time for the second-order wave equation",
       "broken P_q in time x V_h", "broken P_q in time x V_h",
       "sum_n (dtt u, dt w)_{Q_n} + ([dt u]_n, dt w(t_n^+)) + c^2 (grad u, grad dt w)_{Q_n} + c^2 ([grad u]_n, "
       "grad w(t_n^+)) + delta (dt u, dt w)_{Q_n}",
       "weak, through the jump terms at t_0 with Pi_h v0 and R_h u0",
       "tau <= C_CFL h_min / c, C_CFL = 0.25/((q+1)^{3/2}(p+1)) by default",
       {{ns("LinfH1semi"), 0, 1}, {ns("LinfL2:dtu"), 1, 0}}},
      {Scheme::WaveFrenchPeterson, "two-field continuous Galerkin in time for the first-order wave system",
       "continuous P_q in time x V_h, for u and v", "broken P_{q-1} in time x V_h, two fields",
       "sum_n c^2 (grad dt u, grad z)_{Q_n} - c^2 (grad v, grad z)_{Q_n} + (dt v, w)_{Q_n} + c^2 (grad u, grad w)_{Q_n}",
       "strong, u(0) = R_h u0 and v(0) = Pi_h v0", "none",
       {{ns("LinfL2:v"), 1, 1}, {ns("LinfH1semi"), 0, 1}}},
      {Scheme::WaveJohnson, "two-field discontinuous Galerkin in time for the first-order wave system",
       "broken P_q in time x V_h, for u and v", "broken P_q in time x V_h, two fields",
       "sum_n c^2 (grad v, grad z)_{Q_n} - c^2 (grad dt u, grad z)_{Q_n} - c^2 ([grad u]_n, grad z(t_n^+)) + "
       "(dt v, w)_{Q_n} + ([v]_n, w(t_n^+)) + c^2 (grad u, grad w)_{Q_n}",
       "weak, through the jump terms at t_0 with R_h u0 and Pi_h v0", "no CFL required",
       {{ns("LinfL2:v"), 1, 1}, {ns("LinfH1semi"), 0, 1}}},
      {Scheme::WaveWalkington, "single-field DG-CG in time for the second-order wave equation",
       "continuous P_q in time x V_h", "broken P_{q-1} in time x V_h",
       "sum_n (dtt u, w)_{Q_n} + ([dt u]_n, w(t_n^+)) + c^2 (grad u, grad w)_{Q_n}",
       "strong u(0) = R_h u0; dt u(0) = Pi_h v0 weakly through the jump term", "none",
       {{ns("LinfL2:dtu"), 1, 0}, {ns("LinfH1semi"), 0, 1}}},
  };
  return entries;
}

const CatalogEntry& catalog_entry(Scheme s) {
  for (const auto& e : method_catalog())
    if (e.scheme == s) return e;
  throw Error(ErrorCode::ConfigInvalid, "no catalog entry for scheme");
}

const RateEntry& catalog_rate(Scheme s, const NormSpec& norm) {
  for (const auto& r : catalog_entry(s).rates)
    if (r.norm == norm) return r;
  throw Error(ErrorCode::ConfigInvalid,
              "no catalog rate for " + norm.label() + " of " + std::string(scheme_name(s)));
}

const std::vector<AcceptanceCriterion>& acceptance_criteria() {
  static const std::vector<AcceptanceCriterion> list{
      {"C1", "Legendre orthogonality int L_i L_j = tau/(2i+1) delta_ij, i,j <= 8", "1e-11 tau"},
      {"C2", "Radau rule exact to degree 2q, fails at degree 2q+1, q <= 6", "1e-13; failure > 1e-6"},
      {"C3", "weight-function identities, continuous and broken, 100 random fields per q <= 5", "1e-11 scale"},
      {"C4", "Pi_{q-1}/phi kernel value tau(q-1)/(2q-1)|a|^2, q = 1..6", "1e-11 scale"},
      {"C5", "left Thomee/phi kernel value tau^2 q/(2(2q-1)^2), q = 2..6", "1e-11 scale"},
      {"C6", "left Thomee projection of degree q-1 maps L_q to -L_{q-1}, q = 2..6", "1e-11"},
      {"C7", "reconstruction energy identity, random broken fields, N <= 8, q <= 4", "1e-11 scale"},
      {"C8", "Thomee orthogonality chain, quadrature swept until stable", "1e-11 scale"},
      {"C9", "inverse estimate with (q+1)^3, 500 polynomials per q <= 6; extremal ratio >= 0.3", "ratio <= 1"},
      {"C10", "Walkington trace bound, 500 random w per q = 2..5", "ratio <= 1"},
      {"C11", "French-Peterson reduction Pi_{q-1} v = dt u on solved instances", "1e-9"},
      {"C12", "weak partial bounds with f = 0 for all six schemes", "slack 1e-9"},
      {"EX", "exactness: discrete-space manufactured solutions for every scheme, M = 16, N = 8", "1e-8 relative"},
      {"C13", "heat-jamet tau-order q+1 (q = 0,1,2) and h-order p+1 (p = 1,2) in LinfL2", "+-0.2 / +-0.15"},
      {"C14", "heat-aziz-monk tau-order q+1 (q = 1,2) and h-order p+1 in C0L2", "+-0.2 / +-0.15"},
      {"C15", "wave-vanilla within CFL, q = 2: grad tau-order q+1, dt tau-order q; damped delta = 1 alike", "+-0.25"},
      {"C16", "wave-french-peterson velocity tau-order q+1, q = 1,2", "+-0.25"},
      {"C17", "wave-johnson velocity tau-order q+1, q = 1,2, with tau = 10 h", "+-0.25"},
      {"C18", "wave-walkington dt tau-order q and grad tau-order q+1, q = 2,3", "+-0.25"},
      {"C19", "CFL guard: tau = 100 h/c exits with code 3; with override completes with diagnostics", "exit codes"},
  };
  return list;
}

std::string render_catalog() {
  std::ostringstream o;
  o << "# Method catalog\n\n"
    << "Generated by `stfem catalog` from the constants used by the test suite. Do not edit by hand.\n\n"
    << "Notation: V_h is the continuous P_p finite element space on (0,1) with homogeneous Dirichlet conditions, "
       "Q_n = (0,1) x I_n, [w]_n = w(t_n^+) - w(t_n^-), R_h is the Ritz projection and Pi_h the L2 projection.\n";
  for (const auto& e : method_catalog()) {
    o << "\n## " << scheme_name(e.scheme) << "\n\n"
      << "- origin: " << e.origin << "\n"
      << "- minimum time degree: q >= " << min_time_degree(e.scheme) << "\n"
      << "- trial space: " << e.trial_space << "\n"
      << "- test space: " << e.test_space << "\n"
      << "- form: " << e.form << "\n"
      << "- initial condition: " << e.initial_condition << "\n"
      << "- time step restriction: " << e.cfl << "\n\n"
      << "| norm | h-order | tau-order |\n|---|---|---|\n";
    for (const auto& r : e.rates)
      o << "| " << r.norm.label() << " | " << order("p", r.h_offset) << " | " << order("q", r.tau_offset) << " |\n";
  }
  o << "\n## Acceptance criteria\n\n| id | criterion | tolerance |\n|---|---|---|\n";
  for (const auto& c : acceptance_criteria()) o << "| " << c.id << " | " << c.title << " | " << c.tolerance << " |\n";
  return o.str();
}

}  // namespace stfem
