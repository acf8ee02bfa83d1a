#ifndef STFEM_ANALYSIS_HPP
#define STFEM_ANALYSIS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stfem/methods.hpp"
#include "stfem/spatial.hpp"
#include "stfem/timeops.hpp"

namespace stfem {

enum class NormKind { LinfL2, L2QT, LinfH1semi, L2H1semi, JumpSeminorm, TraceL2AtT };

// Which time-dependent quantity a norm is applied to.
enum class Quantity { U, DtU, V };

struct NormSpec {
  NormKind kind = NormKind::LinfL2;
  Quantity quantity = Quantity::U;

  // "<kind>[:<quantity>]", e.g. "LinfL2", "LinfL2:dtu", "LinfL2:v"
  static NormSpec parse(std::string_view text);
  std::string label() const;
  bool operator==(const NormSpec&) const = default;
};

std::string_view norm_name(NormKind k);
std::optional<NormKind> parse_norm_kind(std::string_view name);
std::string_view quantity_name(Quantity q);

// Discrete norms of an FE-valued field. LinfL2/LinfH1semi sample Chebyshev(2q+5) points per slab
// plus both one-sided slab endpoints; L2QT/L2H1semi use Gauss-Legendre with exactness 2q+3.
double eval_norm(NormKind kind, const TimePolyField& field, const FeSpace& space, const SpatialOperators& ops);
double eval_norm(NormKind kind, const Solution& sol, const FeSpace& space, const SpatialOperators& ops);

struct ExactSolution {
  SpaceTimeFunction u;
  SpaceTimeFunction ux;
  SpaceTimeFunction ut;
  SpaceTimeFunction utx;
};

// Errors of the discrete quantities against the exact solution. Spatial (and L2-in-time) quadrature is
// refined until two successive levels agree to 1e-3 relative; QuadratureNotConverged after 5 levels.
std::vector<double> error_norms(const Solution& sol, const FeSpace& space, const ExactSolution& exact,
                                const std::vector<NormSpec>& norms);
double error_norm(NormKind kind, const TimePolyField& field, const FeSpace& space, const SpaceTimeFunction& value,
                  const SpaceTimeFunction& dx);

struct EocTable {
  std::vector<double> params;
  std::vector<double> errors;
  std::vector<double> orders;  // orders[k] from levels k and k+1
};

EocTable compute_eoc(std::vector<double> params, std::vector<double> errors);

struct VerificationConstants {
  double c_inv;   // (q+1)^3
  double c_pi_t;  // (q+1)^2
  double c_si;    // measured Radau Lebesgue constant
  double c_cfl;
};

VerificationConstants verification_constants(int q, int p, double cfl_constant = 0.0);

// Weak partial bound with f = 0 at every node t_n: lhs(n) <= rhs.
struct EnergyBound {
  std::vector<double> lhs;
  double rhs = 0.0;
  double max_excess() const;  // max_n lhs(n) - rhs
};

EnergyBound weak_partial_bound(const Solution& sol, const FeSpace& space, const ProblemData& data);

}  // namespace stfem

#endif
