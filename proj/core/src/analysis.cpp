#include "stfem/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stfem/error.hpp"
#include "stfem/temporal.hpp"

namespace stfem {

std::string_view norm_name(NormKind k) {
  switch (k) {
    case NormKind::LinfL2: return "LinfL2";
    case NormKind::L2QT: return "L2QT";
    case NormKind::LinfH1semi: return "LinfH1semi";
    case NormKind::L2H1semi: return "L2H1semi";
    case NormKind::JumpSeminorm: return "JumpSeminorm";
    case NormKind::TraceL2AtT: return "TraceL2AtT";
  }
  return "unknown";
}

std::optional<NormKind> parse_norm_kind(std::string_view name) {
  for (auto k : {NormKind::LinfL2, NormKind::L2QT, NormKind::LinfH1semi, NormKind::L2H1semi, NormKind::JumpSeminorm,
                 NormKind::TraceL2AtT})
    if (norm_name(k) == name) return k;
  return std::nullopt;
}

std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::U: return "u";
    case Quantity::DtU: return "dtu";
    case Quantity::V: return "v";
  }
  return "u";
}

NormSpec NormSpec::parse(std::string_view text) {
  NormSpec s;
  const auto colon = text.find(':');
  const auto kind = parse_norm_kind(text.substr(0, colon));
  if (!kind) throw Error(ErrorCode::ConfigInvalid, "unknown norm '" + std::string(text) + "'");
  s.kind = *kind;
  if (colon != std::string_view::npos) {
    const auto q = text.substr(colon + 1);
    if (q == "u") s.quantity = Quantity::U;
    else if (q == "dtu") s.quantity = Quantity::DtU;
    else if (q == "v") s.quantity = Quantity::V;
    else throw Error(ErrorCode::ConfigInvalid, "unknown norm quantity '" + std::string(q) + "'");
  }
  return s;
}

std::string NormSpec::label() const {
  std::string s(norm_name(kind));
  if (quantity != Quantity::U) s += ":" + std::string(quantity_name(quantity));
  return s;
}

namespace {

// Slab-local sample points: both endpoints and Chebyshev(2q+5) interior points.
std::vector<double> linf_samples(int q) {
  auto pts = chebyshev_points(2 * q + 5);
  pts.insert(pts.begin(), -1.0);
  pts.push_back(1.0);
  return pts;
}

bool is_linf(NormKind k) { return k == NormKind::LinfL2 || k == NormKind::LinfH1semi; }
bool is_gradient(NormKind k) { return k == NormKind::LinfH1semi || k == NormKind::L2H1semi; }

double quad_form(const DenseMatrix& a, std::span<const double> x) { return dot(x, matvec(a, x)); }

}  // namespace

double eval_norm(NormKind kind, const TimePolyField& field, const FeSpace& space, const SpatialOperators& ops) {
  if (field.dim() != space.dofs()) throw Error(ErrorCode::IncompatibleDimensions, "field and space differ in size");
  const auto& mat = is_gradient(kind) ? ops.stiffness : ops.mass;
  const int q = field.degree();
  switch (kind) {
    case NormKind::LinfL2:
    case NormKind::LinfH1semi: {
      double best = 0.0;
      const auto pts = linf_samples(q);
      for (std::size_t n = 0; n < field.slabs(); ++n)
        for (double s : pts) best = std::max(best, quad_form(mat, field.value_reference(n, s)));
      return std::sqrt(best);
    }
    case NormKind::L2QT:
    case NormKind::L2H1semi: {
      const auto rule = gauss_legendre(q + 2);
      double acc = 0.0;
      for (std::size_t n = 0; n < field.slabs(); ++n)
        for (std::size_t g = 0; g < rule.size(); ++g)
          acc += 0.5 * field.mesh().width(n) * rule.weights[g] * quad_form(mat, field.value_reference(n, rule.nodes[g]));
      return std::sqrt(acc);
    }
    case NormKind::JumpSeminorm: {
      const std::size_t N = field.slabs();
      double acc = quad_form(mat, field.trace_right(N - 1)) + quad_form(mat, field.trace_left(0));
      for (std::size_t n = 1; n < N; ++n) acc += quad_form(mat, jump(field, n));
      return std::sqrt(acc);
    }
    case NormKind::TraceL2AtT:
      return std::sqrt(quad_form(mat, field.trace_right(field.slabs() - 1)));
  }
  return 0.0;
}

double eval_norm(NormKind kind, const Solution& sol, const FeSpace& space, const SpatialOperators& ops) {
  return eval_norm(kind, sol.u, space, ops);
}

namespace {

double spatial_error_sq(const FeSpace& space, std::span<const double> dofs, const SpaceTimeFunction& exact, double t,
                        bool gradient, int points) {
  const auto s = sample_fe(space, dofs, points);
  double acc = 0.0;
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    const double e = exact(s.x[k], t) - (gradient ? s.dx[k] : s.value[k]);
    acc += s.w[k] * e * e;
  }
  return acc;
}

double error_at_level(NormKind kind, const TimePolyField& field, const FeSpace& space, const SpaceTimeFunction& value,
                      const SpaceTimeFunction& dx, int level) {
  const bool grad = is_gradient(kind);
  const auto& exact = grad ? dx : value;
  const int sp = space.degree() + 3 + 2 * level;
  const int q = field.degree();
  const auto& mesh = field.mesh();
  switch (kind) {
    case NormKind::LinfL2:
    case NormKind::LinfH1semi: {
      double best = 0.0;
      const auto pts = linf_samples(q);
      for (std::size_t n = 0; n < field.slabs(); ++n)
        for (double s : pts)
          best = std::max(best, spatial_error_sq(space, field.value_reference(n, s), exact,
                                                 mesh.from_reference(n, s), grad, sp));
      return std::sqrt(best);
    }
    case NormKind::L2QT:
    case NormKind::L2H1semi: {
      const auto rule = gauss_legendre(q + 2 + level);
      double acc = 0.0;
      for (std::size_t n = 0; n < field.slabs(); ++n)
        for (std::size_t g = 0; g < rule.size(); ++g)
          acc += 0.5 * mesh.width(n) * rule.weights[g] *
                 spatial_error_sq(space, field.value_reference(n, rule.nodes[g]), exact,
                                  mesh.from_reference(n, rule.nodes[g]), grad, sp);
      return std::sqrt(acc);
    }
    case NormKind::JumpSeminorm: {
      const std::size_t N = field.slabs();
      double acc = spatial_error_sq(space, field.trace_right(N - 1), exact, mesh.final_time(), false, sp) +
                   spatial_error_sq(space, field.trace_left(0), exact, 0.0, false, sp);
      const SpaceTimeFunction zero = [](double, double) { return 0.0; };
      for (std::size_t n = 1; n < N; ++n) acc += spatial_error_sq(space, jump(field, n), zero, 0.0, false, sp);
      return std::sqrt(acc);
    }
    case NormKind::TraceL2AtT:
      return std::sqrt(
          spatial_error_sq(space, field.trace_right(field.slabs() - 1), exact, mesh.final_time(), false, sp));
  }
  return 0.0;
}

}  // namespace

double error_norm(NormKind kind, const TimePolyField& field, const FeSpace& space, const SpaceTimeFunction& value,
                  const SpaceTimeFunction& dx) {
  if (field.dim() != space.dofs()) throw Error(ErrorCode::IncompatibleDimensions, "field and space differ in size");
  double prev = error_at_level(kind, field, space, value, dx, 0);
  for (int level = 1; level < 5; ++level) {
    const double cur = error_at_level(kind, field, space, value, dx, level);
    if (std::abs(cur - prev) <= 1e-3 * std::max(cur, prev) + 1e-14) return cur;
    prev = cur;
  }
  throw Error(ErrorCode::QuadratureNotConverged, std::string(norm_name(kind)) + " after 5 levels");
}

std::vector<double> error_norms(const Solution& sol, const FeSpace& space, const ExactSolution& exact,
                                const std::vector<NormSpec>& norms) {
  std::optional<TimePolyField> dtu, vel;
  std::vector<double> out;
  for (const auto& spec : norms) {
    const TimePolyField* field = &sol.u;
    const SpaceTimeFunction* value = &exact.u;
    const SpaceTimeFunction* dx = &exact.ux;
    if (spec.quantity != Quantity::U) {
      value = &exact.ut;
      dx = &exact.utx;
      if (spec.quantity == Quantity::V && sol.v) {
        field = &*sol.v;
      } else {
        if (!dtu) dtu = sol.u.derivative();
        field = &*dtu;
      }
    }
    if (!*value || !*dx) throw Error(ErrorCode::ConfigInvalid, "exact solution lacks data for " + spec.label());
    out.push_back(error_norm(spec.kind, *field, space, *value, *dx));
  }
  return out;
}

EocTable compute_eoc(std::vector<double> params, std::vector<double> errors) {
  if (params.size() != errors.size()) throw Error(ErrorCode::DimensionMismatch, "params and errors differ in length");
  if (params.size() < 2) throw Error(ErrorCode::TooFewLevels, "need at least 2 levels");
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!(errors[k] > 0.0)) throw Error(ErrorCode::NonPositiveError, "error at level " + std::to_string(k));
    if (!(params[k] > 0.0) || (k > 0 && !(params[k] < params[k - 1])))
      throw Error(ErrorCode::ConfigInvalid, "refinement parameters must be positive and strictly decreasing");
  }
  EocTable t{std::move(params), std::move(errors), {}};
  for (std::size_t k = 0; k + 1 < t.errors.size(); ++k)
    t.orders.push_back(std::log(t.errors[k] / t.errors[k + 1]) / std::log(t.params[k] / t.params[k + 1]));
  return t;
}

VerificationConstants verification_constants(int q, int p, double cfl_constant) {
  const double qq = q + 1.0;
  return {qq * qq * qq, qq * qq, radau_lebesgue_constant(q),
          cfl_constant > 0.0 ? cfl_constant : default_cfl_constant(q, p)};
}

double EnergyBound::max_excess() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double l : lhs) m = std::max(m, l - rhs);
  return m;
}

namespace {

double exact_sq(const FeSpace& space, const SpaceFunction& f) {
  if (!f) return 0.0;
  const auto rule = gauss_legendre(space.degree() + 8);
  double acc = 0.0;
  for (std::size_t e = 0; e < space.elements(); ++e) {
    const auto r = map_rule(rule, space.element_left(e), space.element_left(e) + space.h());
    for (std::size_t g = 0; g < r.size(); ++g) acc += r.weights[g] * f(r.nodes[g]) * f(r.nodes[g]);
  }
  return acc;
}

}  // namespace

EnergyBound weak_partial_bound(const Solution& sol, const FeSpace& space, const ProblemData& data) {
  const auto ops = assemble(space);
  const auto& M = ops.mass;
  const auto& K = ops.stiffness;
  const auto& u = sol.u;
  const auto& mesh = u.mesh();
  const std::size_t N = u.slabs();
  const double c2 = sol.spec.c * sol.spec.c;
  const double nu = sol.spec.nu;
  EnergyBound b;
  const auto rule = gauss_legendre(u.degree() + 2);

  // int_{I_n} x(t)^T A x(t) dt for a field
  auto slab_integral = [&](const TimePolyField& f, const DenseMatrix& a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t g = 0; g < rule.size(); ++g)
      acc += 0.5 * mesh.width(n) * rule.weights[g] * quad_form(a, f.value_reference(n, rule.nodes[g]));
    return acc;
  };

  switch (sol.spec.scheme) {
    case Scheme::HeatJamet: {
      b.rhs = exact_sq(space, data.u0);
      double grad = 0.0, jumps = 0.0;
      const double init = 0.25 * quad_form(M, u.trace_left(0));
      for (std::size_t n = 0; n < N; ++n) {
        grad += slab_integral(u, K, n);
        if (n > 0) jumps += quad_form(M, jump(u, n));
        b.lhs.push_back(0.5 * quad_form(M, u.trace_right(n)) + 0.5 * nu * grad + 0.5 * jumps + init);
      }
      break;
    }
    case Scheme::HeatAzizMonk: {
      b.rhs = 0.5 * exact_sq(space, data.u0);
      TimePolyField pu(mesh, std::max(u.degree() - 1, 0), u.dim());
      for (std::size_t n = 0; n < N; ++n)
        for (int i = 0; i < u.degree(); ++i) std::copy_n(u.coeff(n, i).begin(), u.dim(), pu.coeff(n, i).begin());
      double grad = 0.0;
      for (std::size_t n = 0; n < N; ++n) {
        grad += slab_integral(pu, K, n);
        b.lhs.push_back(0.5 * quad_form(M, u.trace_right(n)) + 0.25 * nu * grad);
      }
      break;
    }
    case Scheme::WaveVanilla:
    case Scheme::WaveWalkington:
    case Scheme::WaveJohnson: {
      // Vanilla and Johnson: jump form in (dt u or v, grad u). Walkington: dt u jumps, u continuous.
      const auto vel = velocity_field(sol);
      b.rhs = exact_sq(space, data.v0) + c2 * exact_sq(space, data.du0);
      const bool walk = sol.spec.scheme == Scheme::WaveWalkington;
      double jumps = 0.0;
      const double init = 0.25 * quad_form(M, vel.trace_left(0)) +
                          (walk ? 0.5 : 0.25) * c2 * quad_form(K, u.trace_left(0));
      for (std::size_t n = 0; n < N; ++n) {
        if (n > 0) {
          jumps += quad_form(M, jump(vel, n));
          if (!walk) jumps += c2 * quad_form(K, jump(u, n));
        }
        b.lhs.push_back(0.5 * quad_form(M, vel.trace_right(n)) + 0.5 * c2 * quad_form(K, u.trace_right(n)) +
                        0.5 * jumps + init);
      }
      break;
    }
    case Scheme::WaveFrenchPeterson: {
      const auto& v = *sol.v;
      b.rhs = 0.5 * (exact_sq(space, data.v0) + c2 * exact_sq(space, data.du0));
      for (std::size_t n = 0; n < N; ++n)
        b.lhs.push_back(0.5 * (quad_form(M, v.trace_right(n)) + c2 * quad_form(K, u.trace_right(n))));
      break;
    }
  }
  return b;
}

}  // namespace stfem
