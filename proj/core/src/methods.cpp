#include "stfem/methods.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "stfem/error.hpp"
#include "stfem/temporal.hpp"

namespace stfem {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::HeatJamet: return "heat-jamet";
    case Scheme::HeatAzizMonk: return "heat-aziz-monk";
    case Scheme::WaveVanilla: return "wave-vanilla";
    case Scheme::WaveFrenchPeterson: return "wave-french-peterson";
    case Scheme::WaveJohnson: return "wave-johnson";
    case Scheme::WaveWalkington: return "wave-walkington";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes)
    if (scheme_name(s) == name) return s;
  return std::nullopt;
}

bool is_wave(Scheme s) { return s != Scheme::HeatJamet && s != Scheme::HeatAzizMonk; }

int min_time_degree(Scheme s) {
  switch (s) {
    case Scheme::HeatJamet: return 0;
    case Scheme::WaveVanilla:
    case Scheme::WaveWalkington: return 2;
    default: return 1;
  }
}

bool has_velocity_field(Scheme s) { return s == Scheme::WaveFrenchPeterson || s == Scheme::WaveJohnson; }

double default_cfl_constant(int q, int p) { return 0.25 / (std::pow(q + 1.0, 1.5) * (p + 1.0)); }

namespace {

enum class Source { U, V };

struct Term {
  int test_field;
  int trial_field;
  bool stiffness;
  double coef;
  DenseMatrix time;  // ntest x (q+1)
};

struct History {
  int test_field;
  bool stiffness;
  double coef;
  std::vector<double> time;  // ntest
  Source source;
};

struct Load {
  int test_field;
  int test_deriv;
};

struct SlabForm {
  int fields = 1;
  int ntest = 0;
  std::vector<bool> continuous;
  std::vector<Term> terms;
  std::vector<History> history;
  std::vector<Load> loads;
};

// Reference-to-physical time matrices on a slab of width tau.
class TimeMatrices {
 public:
  TimeMatrices(int q, double tau) : q_(q), tau_(tau), rule_(gauss_legendre(q + 3)) {}

  // int L_j^{(a)} L_i^{(b)} dt for tests i < ntest, trials j <= q
  DenseMatrix integral(int a, int b, int ntest) const {
    DenseMatrix m(ntest, q_ + 1);
    const double scale = std::pow(2.0 / tau_, a + b) * 0.5 * tau_;
    for (std::size_t g = 0; g < rule_.size(); ++g) {
      const auto pa = legendre_all(q_, rule_.nodes[g], a);
      const auto pb = legendre_all(q_, rule_.nodes[g], b);
      for (int i = 0; i < ntest; ++i)
        for (int j = 0; j <= q_; ++j) m(i, j) += scale * rule_.weights[g] * pa[j] * pb[i];
    }
    return m;
  }

  // L_j^{(a)}(t_left^+) L_i^{(b)}(t_left^+)
  DenseMatrix left_product(int a, int b, int ntest) const {
    DenseMatrix m(ntest, q_ + 1);
    const double scale = std::pow(2.0 / tau_, a + b);
    for (int i = 0; i < ntest; ++i)
      for (int j = 0; j <= q_; ++j) m(i, j) = scale * legendre_at_left(j, a) * legendre_at_left(i, b);
    return m;
  }

  std::vector<double> left_values(int b, int ntest) const {
    std::vector<double> v(ntest);
    for (int i = 0; i < ntest; ++i) v[i] = std::pow(2.0 / tau_, b) * legendre_at_left(i, b);
    return v;
  }

 private:
  int q_;
  double tau_;
  QuadratureRule rule_;
};

SlabForm make_form(const MethodSpec& s, double tau) {
  const int q = s.q;
  const TimeMatrices tm(q, tau);
  const double c2 = s.c * s.c;
  SlabForm f;
  switch (s.scheme) {
    case Scheme::HeatJamet:
      f.ntest = q + 1;
      f.continuous = {false};
      f.terms.push_back({0, 0, false, 1.0, tm.integral(1, 0, q + 1) + tm.left_product(0, 0, q + 1)});
      f.terms.push_back({0, 0, true, s.nu, tm.integral(0, 0, q + 1)});
      f.history.push_back({0, false, 1.0, tm.left_values(0, q + 1), Source::U});
      f.loads.push_back({0, 0});
      break;
    case Scheme::HeatAzizMonk:
      f.ntest = q;
      f.continuous = {true};
      f.terms.push_back({0, 0, false, 1.0, tm.integral(1, 0, q)});
      f.terms.push_back({0, 0, true, s.nu, tm.integral(0, 0, q)});
      f.loads.push_back({0, 0});
      break;
    case Scheme::WaveVanilla:
      f.ntest = q + 1;
      f.continuous = {false};
      f.terms.push_back({0, 0, false, 1.0, tm.integral(2, 1, q + 1) + tm.left_product(1, 1, q + 1)});
      if (s.delta != 0.0) f.terms.push_back({0, 0, false, s.delta, tm.integral(1, 1, q + 1)});
      f.terms.push_back({0, 0, true, c2, tm.integral(0, 1, q + 1) + tm.left_product(0, 0, q + 1)});
      f.history.push_back({0, false, 1.0, tm.left_values(1, q + 1), Source::V});
      f.history.push_back({0, true, c2, tm.left_values(0, q + 1), Source::U});
      f.loads.push_back({0, 1});
      break;
    case Scheme::WaveFrenchPeterson:
      f.fields = 2;
      f.ntest = q;
      f.continuous = {true, true};
      f.terms.push_back({0, 1, true, c2, tm.integral(0, 0, q)});
      f.terms.push_back({0, 0, true, -c2, tm.integral(1, 0, q)});
      f.terms.push_back({1, 1, false, 1.0, tm.integral(1, 0, q)});
      f.terms.push_back({1, 0, true, c2, tm.integral(0, 0, q)});
      f.loads.push_back({1, 0});
      break;
    case Scheme::WaveJohnson:
      f.fields = 2;
      f.ntest = q + 1;
      f.continuous = {false, false};
      f.terms.push_back({0, 1, true, c2, tm.integral(0, 0, q + 1)});
      f.terms.push_back({0, 0, true, -c2, tm.integral(1, 0, q + 1) + tm.left_product(0, 0, q + 1)});
      f.history.push_back({0, true, -c2, tm.left_values(0, q + 1), Source::U});
      f.terms.push_back({1, 1, false, 1.0, tm.integral(1, 0, q + 1) + tm.left_product(0, 0, q + 1)});
      f.terms.push_back({1, 0, true, c2, tm.integral(0, 0, q + 1)});
      f.history.push_back({1, false, 1.0, tm.left_values(0, q + 1), Source::V});
      f.loads.push_back({1, 0});
      break;
    case Scheme::WaveWalkington:
      f.ntest = q;
      f.continuous = {true};
      f.terms.push_back({0, 0, false, 1.0, tm.integral(2, 0, q) + tm.left_product(1, 0, q)});
      f.terms.push_back({0, 0, true, c2, tm.integral(0, 0, q)});
      f.history.push_back({0, false, 1.0, tm.left_values(0, q), Source::V});
      f.loads.push_back({0, 0});
      break;
  }
  return f;
}

void validate(const MethodSpec& s, const FeSpace& space) {
  if (s.q < min_time_degree(s.scheme) || s.q > 12)
    throw Error(ErrorCode::InvalidDegree, std::string(scheme_name(s.scheme)) + " needs q >= " +
                                              std::to_string(min_time_degree(s.scheme)));
  if (s.p != space.degree()) throw Error(ErrorCode::InvalidDegree, "method p differs from the space degree");
  if (!is_wave(s.scheme) && !(s.nu > 0.0)) throw Error(ErrorCode::ConfigInvalid, "nu must be positive");
  if (is_wave(s.scheme) && !(s.c > 0.0)) throw Error(ErrorCode::ConfigInvalid, "c must be positive");
  if (s.delta < 0.0) throw Error(ErrorCode::ConfigInvalid, "delta must be nonnegative");
  if (s.delta != 0.0 && s.scheme != Scheme::WaveVanilla)
    throw Error(ErrorCode::ConfigInvalid, "damping is only available for wave-vanilla");
}

}  // namespace

struct SlabStepper::Impl {
  MethodSpec spec;
  const FeSpace& space;
  const SpatialOperators& ops;
  TimeMesh mesh;
  ProblemData data;
  std::size_t nsp;

  struct Cached {
    SlabForm form;
    DenseMatrix bm, bk;  // (nb x nb) time blocks multiplying M and K
    std::vector<DenseMatrix> reduced;  // per term: time * E_trial
    std::vector<std::vector<double>> offset;  // per term: time * e0 (continuous trial fields)
    LuFactors lu;
  };
  std::unordered_map<std::uint64_t, Cached> cache;
  std::size_t factorizations = 0;

  int free_coefs(const SlabForm& f, int field) const { return f.continuous[field] ? spec.q : spec.q + 1; }
  int field_offset(const SlabForm& f, int field) const {
    int o = 0;
    for (int k = 0; k < field; ++k) o += free_coefs(f, k);
    return o;
  }

  const Cached& get(double tau) {
    const auto key = std::bit_cast<std::uint64_t>(tau);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Cached c;
    c.form = make_form(spec, tau);
    const int nb = c.form.fields * c.form.ntest;
    c.bm = DenseMatrix(nb, nb);
    c.bk = DenseMatrix(nb, nb);
    for (const auto& t : c.form.terms) {
      const int q = spec.q;
      DenseMatrix red;
      std::vector<double> off(c.form.ntest, 0.0);
      if (c.form.continuous[t.trial_field]) {
        // L coefficients U = E W + e0 * left trace, U_0 = left - sum_{j>=1} (-1)^j U_j
        red = DenseMatrix(c.form.ntest, q);
        for (int i = 0; i < c.form.ntest; ++i) {
          off[i] = t.time(i, 0);
          for (int j = 1; j <= q; ++j) red(i, j - 1) = t.time(i, j) - legendre_at_left(j) * t.time(i, 0);
        }
      } else {
        red = t.time;
      }
      DenseMatrix& target = t.stiffness ? c.bk : c.bm;
      const int r0 = t.test_field * c.form.ntest;
      const int c0 = field_offset(c.form, t.trial_field);
      for (int i = 0; i < c.form.ntest; ++i)
        for (std::size_t j = 0; j < red.cols(); ++j) target(r0 + i, c0 + j) += t.coef * red(i, j);
      c.reduced.push_back(std::move(red));
      c.offset.push_back(std::move(off));
    }
    DenseMatrix a = kron(ops.mass, c.bm);
    a += kron(ops.stiffness, c.bk);
    try {
      c.lu = lu_factor(std::move(a));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularMatrix)
        throw Error(ErrorCode::SingularSlabSystem, std::string(scheme_name(spec.scheme)) + ": " + e.what());
      throw;
    }
    ++factorizations;
    return cache.emplace(key, std::move(c)).first->second;
  }
};

SlabStepper::SlabStepper(MethodSpec spec, const FeSpace& space, const SpatialOperators& ops, TimeMesh mesh,
                         ProblemData data)
    : impl_(std::make_unique<Impl>(Impl{spec, space, ops, std::move(mesh), std::move(data), space.dofs(), {}, 0})) {
  validate(spec, space);
}

SlabStepper::~SlabStepper() = default;
SlabStepper::SlabStepper(SlabStepper&&) noexcept = default;

std::size_t SlabStepper::factorizations() const noexcept { return impl_->factorizations; }

SlabState SlabStepper::initial_state() const {
  const auto& I = *impl_;
  SlabState s;
  if (!is_wave(I.spec.scheme)) {
    s.u = l2_project_space(I.space, I.ops, I.data.u0);
    s.v.assign(I.nsp, 0.0);
  } else {
    s.u = ritz_project_space(I.space, I.ops, I.data.du0);
    s.v = l2_project_space(I.space, I.ops, I.data.v0);
  }
  return s;
}

SlabStepper::StepResult SlabStepper::step(std::size_t slab, const SlabState& prev) {
  auto& I = *impl_;
  const int q = I.spec.q;
  const double tau = I.mesh.width(slab);
  const auto& c = I.get(tau);
  const auto& form = c.form;
  const int nb = form.fields * form.ntest;
  const std::size_t nsp = I.nsp;
  std::vector<double> rhs(nsp * nb, 0.0);

  auto add_block = [&](int test_field, std::span<const double> tvec, std::span<const double> svec, double coef) {
    for (std::size_t x = 0; x < nsp; ++x)
      for (int i = 0; i < form.ntest; ++i) rhs[x * nb + test_field * form.ntest + i] += coef * tvec[i] * svec[x];
  };

  const auto& mass = I.ops.mass;
  const auto& stiff = I.ops.stiffness;
  const auto mu = matvec(mass, prev.u), ku = matvec(stiff, prev.u);
  const auto mv = matvec(mass, prev.v), kv = matvec(stiff, prev.v);
  auto pick = [&](bool stiffness, Source src) -> const std::vector<double>& {
    if (src == Source::U) return stiffness ? ku : mu;
    return stiffness ? kv : mv;
  };

  for (const auto& h : form.history) add_block(h.test_field, h.time, pick(h.stiffness, h.source), h.coef);
  for (std::size_t k = 0; k < form.terms.size(); ++k) {
    const auto& t = form.terms[k];
    if (!form.continuous[t.trial_field]) continue;
    const Source src = t.trial_field == 0 ? Source::U : Source::V;
    add_block(t.test_field, c.offset[k], pick(t.stiffness, src), -t.coef);
  }

  if (!form.loads.empty()) {
    const auto rule = gauss_legendre(I.spec.rhs_points > 0 ? I.spec.rhs_points : 2 * q + 10);
    std::vector<double> tv(form.ntest);
    for (std::size_t g = 0; g < rule.size(); ++g) {
      const double s = rule.nodes[g];
      const double t = I.mesh.from_reference(slab, s);
      const auto load = load_vector(I.space, [&](double x) { return I.data.f(x, t); }, I.spec.space_points);
      for (const auto& l : form.loads) {
        const auto p = legendre_all(q, s, l.test_deriv);
        const double scale = 0.5 * tau * rule.weights[g] * std::pow(2.0 / tau, l.test_deriv);
        for (int i = 0; i < form.ntest; ++i) tv[i] = scale * p[i];
        add_block(l.test_field, tv, load, 1.0);
      }
    }
  }

  const auto x = c.lu.solve(rhs);

  std::vector<double> ax(rhs.size(), 0.0);
  kron_matvec_add(mass, c.bm, x, ax);
  kron_matvec_add(stiff, c.bk, x, ax);
  double rnorm = 0.0;
  for (std::size_t k = 0; k < ax.size(); ++k) rnorm = std::max(rnorm, std::abs(ax[k] - rhs[k]));
  const double bnorm = norm_inf(rhs);

  StepResult r;
  r.residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  for (int field = 0; field < form.fields; ++field) {
    std::vector<double> coeffs((q + 1) * nsp, 0.0);
    const int off = I.field_offset(form, field);
    const bool cont = form.continuous[field];
    const auto& left = field == 0 ? prev.u : prev.v;
    for (std::size_t xs = 0; xs < nsp; ++xs) {
      if (cont) {
        double c0 = left[xs];
        for (int j = 1; j <= q; ++j) {
          const double w = x[xs * nb + off + j - 1];
          coeffs[j * nsp + xs] = w;
          c0 -= legendre_at_left(j) * w;
        }
        coeffs[xs] = c0;
      } else {
        for (int j = 0; j <= q; ++j) coeffs[j * nsp + xs] = x[xs * nb + off + j];
      }
    }
    (field == 0 ? r.u : r.v) = std::move(coeffs);
  }

  r.end.u.assign(nsp, 0.0);
  r.end.v.assign(nsp, 0.0);
  for (int j = 0; j <= q; ++j)
    for (std::size_t xs = 0; xs < nsp; ++xs) r.end.u[xs] += r.u[j * nsp + xs];
  if (form.fields == 2) {
    for (int j = 0; j <= q; ++j)
      for (std::size_t xs = 0; xs < nsp; ++xs) r.end.v[xs] += r.v[j * nsp + xs];
  } else if (is_wave(I.spec.scheme)) {
    for (int j = 1; j <= q; ++j) {
      const double d = legendre_at_right(j, 1) * 2.0 / tau;
      for (std::size_t xs = 0; xs < nsp; ++xs) r.end.v[xs] += d * r.u[j * nsp + xs];
    }
  }
  return r;
}

std::optional<double> check_cfl(const MethodSpec& spec, const FeSpace& space, const TimeMesh& mesh) {
  if (spec.scheme != Scheme::WaveVanilla) return std::nullopt;
  const double cc = spec.cfl_constant > 0.0 ? spec.cfl_constant : default_cfl_constant(spec.q, spec.p);
  const double limit = cc * space.h_min() / spec.c;
  const double margin = limit / mesh.max_width();
  if (margin < 1.0 && !spec.cfl_override)
    throw Error(ErrorCode::CflViolation, "tau = " + std::to_string(mesh.max_width()) + " exceeds " +
                                             std::to_string(limit) + " (C_CFL h_min / c)");
  return margin;
}

Solution solve(const MethodSpec& spec, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data) {
  validate(spec, space);
  Solution sol;
  sol.spec = spec;
  sol.diagnostics.cfl_margin = check_cfl(spec, space, mesh);
  sol.diagnostics.cfl_violated = sol.diagnostics.cfl_margin && *sol.diagnostics.cfl_margin < 1.0;
  const auto ops = assemble(space);
  SlabStepper stepper(spec, space, ops, mesh, data);
  const std::size_t nsp = space.dofs();
  const int q = spec.q;
  const auto cont = [&](bool c) { return c ? Continuity::Continuous : Continuity::Broken; };
  const bool cg = spec.scheme == Scheme::HeatAzizMonk || spec.scheme == Scheme::WaveFrenchPeterson ||
                  spec.scheme == Scheme::WaveWalkington;
  std::vector<double> ucoef(mesh.slabs() * (q + 1) * nsp), vcoef;
  const bool two = has_velocity_field(spec.scheme);
  if (two) vcoef.resize(ucoef.size());
  SlabState state = stepper.initial_state();
  for (std::size_t n = 0; n < mesh.slabs(); ++n) {
    auto r = stepper.step(n, state);
    std::copy(r.u.begin(), r.u.end(), ucoef.begin() + n * (q + 1) * nsp);
    if (two) std::copy(r.v.begin(), r.v.end(), vcoef.begin() + n * (q + 1) * nsp);
    sol.diagnostics.residuals.push_back(r.residual);
    sol.diagnostics.max_residual = std::max(sol.diagnostics.max_residual, r.residual);
    state = std::move(r.end);
  }
  sol.diagnostics.factorizations = stepper.factorizations();
  sol.u = TimePolyField(mesh, q, nsp, cont(cg), std::move(ucoef));
  if (two)
    sol.v = TimePolyField(mesh, q, nsp, cont(spec.scheme == Scheme::WaveFrenchPeterson), std::move(vcoef));
  return sol;
}

namespace {
Solution solve_as(MethodSpec spec, Scheme s, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data) {
  spec.scheme = s;
  return solve(spec, space, mesh, data);
}
}  // namespace

Solution solve_heat_jamet(MethodSpec spec, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data) {
  return solve_as(spec, Scheme::HeatJamet, space, mesh, data);
}
Solution solve_heat_aziz_monk(MethodSpec spec, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data) {
  return solve_as(spec, Scheme::HeatAzizMonk, space, mesh, data);
}
Solution solve_wave_vanilla(MethodSpec spec, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data) {
  return solve_as(spec, Scheme::WaveVanilla, space, mesh, data);
}
Solution solve_wave_french_peterson(MethodSpec spec, const FeSpace& space, const TimeMesh& mesh,
                                    const ProblemData& data) {
  return solve_as(spec, Scheme::WaveFrenchPeterson, space, mesh, data);
}
Solution solve_wave_johnson(MethodSpec spec, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data) {
  return solve_as(spec, Scheme::WaveJohnson, space, mesh, data);
}
Solution solve_wave_walkington(MethodSpec spec, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data) {
  return solve_as(spec, Scheme::WaveWalkington, space, mesh, data);
}

TimePolyField velocity_field(const Solution& sol) { return sol.v ? *sol.v : sol.u.derivative(); }

double french_peterson_reduction_defect(const Solution& sol) {
  if (!sol.v) throw Error(ErrorCode::IncompatibleDimensions, "solution has no velocity field");
  const auto du = sol.u.derivative();
  const int q = sol.u.degree();
  double defect = 0.0;
  for (std::size_t n = 0; n < sol.u.slabs(); ++n) {
    double scale = 1.0, diff = 0.0;
    for (int i = 0; i <= q; ++i)
      for (double x : sol.v->coeff(n, i)) scale = std::max(scale, std::abs(x));
    for (int i = 0; i < q; ++i) {
      const auto a = sol.v->coeff(n, i), b = du.coeff(n, i);
      for (std::size_t d = 0; d < a.size(); ++d) diff = std::max(diff, std::abs(a[d] - b[d]));
    }
    defect = std::max(defect, diff / scale);
  }
  return defect;
}

}  // namespace stfem
