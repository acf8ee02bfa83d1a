#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "stfem/error.hpp"
#include "stfem/methods.hpp"
#include "stfem/temporal.hpp"

using namespace stfem;

namespace {

constexpr double pi = std::numbers::pi;

ProblemData smooth_data() {
  ProblemData d;
  d.T = 1.0;
  d.f = [](double x, double t) { return std::sin(2 * t + 0.3) * x * (1 - x) + std::cos(t) * std::sin(3 * pi * x); };
  d.u0 = [](double x) { return std::sin(pi * x) + x * (1 - x); };
  d.du0 = [](double x) { return pi * std::cos(pi * x) + 1 - 2 * x; };
  d.v0 = [](double x) { return x * x * (1 - x); };
  return d;
}

ProblemData zero_data() {
  ProblemData d;
  d.f = [](double, double) { return 0.0; };
  d.u0 = d.du0 = d.v0 = [](double) { return 0.0; };
  return d;
}

MethodSpec make_spec(Scheme s, int q, int p) {
  MethodSpec m;
  m.scheme = s;
  m.q = q;
  m.p = p;
  m.nu = 0.7;
  m.c = 1.3;
  m.delta = s == Scheme::WaveVanilla ? 0.4 : 0.0;
  m.cfl_override = true;
  return m;
}

using Vec = std::vector<double>;

// Accumulates a residual vector and the largest contributing term.
struct Residual {
  Vec r;
  double scale = 0.0;
  explicit Residual(std::size_t n) : r(n, 0.0) {}
  void add(const Vec& v, double coef) {
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += coef * v[k];
    scale = std::max(scale, std::abs(coef) * norm_inf(v));
  }
};

// Plugs the discrete solution into the space-time form by Gauss quadrature in time, with test functions
// from the explicit Legendre formula. Only the spatial mass and stiffness matrices are shared with the solver.
// Returns the largest residual relative to the largest term of the whole form (some test rows,
// e.g. the constant test of wave-vanilla, contain a single term that vanishes at the solution).
double galerkin_residual(const Solution& sol, const FeSpace& space, const TimeMesh& mesh, const ProblemData& data) {
  const auto ops = assemble(space);
  const auto& spec = sol.spec;
  const int q = spec.q;
  const double c2 = spec.c * spec.c;
  const std::size_t nsp = space.dofs();
  auto M = [&](const Vec& x) { return matvec(ops.mass, x); };
  auto K = [&](const Vec& x) { return matvec(ops.stiffness, x); };
  const auto pi_u0 = l2_project_space(space, ops, data.u0);
  const auto ritz_u0 = ritz_project_space(space, ops, data.du0);
  const auto pi_v0 = l2_project_space(space, ops, data.v0);
  const auto& u = sol.u;

  double worst = 0.0, res = 0.0, scale = 0.0;
  // strong initial conditions
  if (spec.scheme == Scheme::HeatAzizMonk)
    for (std::size_t k = 0; k < nsp; ++k) worst = std::max(worst, std::abs(u.trace_left(0)[k] - pi_u0[k]));
  if (spec.scheme == Scheme::WaveFrenchPeterson || spec.scheme == Scheme::WaveWalkington)
    for (std::size_t k = 0; k < nsp; ++k) worst = std::max(worst, std::abs(u.trace_left(0)[k] - ritz_u0[k]));
  if (spec.scheme == Scheme::WaveFrenchPeterson)
    for (std::size_t k = 0; k < nsp; ++k) worst = std::max(worst, std::abs(sol.v->trace_left(0)[k] - pi_v0[k]));

  for (std::size_t n = 0; n < mesh.slabs(); ++n) {
    const double a = mesh.left(n), b = mesh.right(n);
    const auto rule = map_rule(gauss_legendre(20), a, b);
    const auto jump_of = [&](const TimePolyField& f, int deriv, const Vec& init) {
      Vec plus = f.value(n, a, deriv), minus = n == 0 ? init : f.value(n - 1, a, deriv);
      for (std::size_t k = 0; k < nsp; ++k) plus[k] -= minus[k];
      return plus;
    };
    const bool cg_tests = spec.scheme == Scheme::HeatAzizMonk || spec.scheme == Scheme::WaveFrenchPeterson ||
                          spec.scheme == Scheme::WaveWalkington;
    const int top = cg_tests ? q - 1 : q;
    for (int i = 0; i <= top; ++i) {
      const double Li_a = oracle::shifted(i, a, b, a), dLi_a = oracle::dshifted(i, a, b, a);
      // time integrals int g(t) L_i and int g(t) L_i'
      auto integral = [&](const std::function<Vec(double)>& g, bool deriv_test) {
        Vec acc(nsp, 0.0);
        for (std::size_t k = 0; k < rule.size(); ++k) {
          const double t = rule.nodes[k];
          const double w = rule.weights[k] * (deriv_test ? oracle::dshifted(i, a, b, t) : oracle::shifted(i, a, b, t));
          const auto gv = g(t);
          for (std::size_t d = 0; d < nsp; ++d) acc[d] += w * gv[d];
        }
        return acc;
      };
      auto F = [&](double t) { return load_vector(space, [&](double x) { return data.f(x, t); }, 12); };
      auto U = [&](int deriv) { return [&, deriv](double t) { return u.value(n, t, deriv); }; };
      auto V = [&](int deriv) { return [&, deriv](double t) { return sol.v->value(n, t, deriv); }; };

      Residual r0(nsp), r1(nsp);
      switch (spec.scheme) {
        case Scheme::HeatJamet:
          r0.add(M(integral(U(1), false)), 1.0);
          r0.add(M(jump_of(u, 0, pi_u0)), Li_a);
          r0.add(K(integral(U(0), false)), spec.nu);
          r0.add(integral(F, false), -1.0);
          break;
        case Scheme::HeatAzizMonk:
          r0.add(M(integral(U(1), false)), 1.0);
          r0.add(K(integral(U(0), false)), spec.nu);
          r0.add(integral(F, false), -1.0);
          break;
        case Scheme::WaveVanilla:
          r0.add(M(integral(U(2), true)), 1.0);
          r0.add(M(jump_of(u, 1, pi_v0)), dLi_a);
          r0.add(M(integral(U(1), true)), spec.delta);
          r0.add(K(integral(U(0), true)), c2);
          r0.add(K(jump_of(u, 0, ritz_u0)), c2 * Li_a);
          r0.add(integral(F, true), -1.0);
          break;
        case Scheme::WaveFrenchPeterson:
          r0.add(K(integral(U(1), false)), c2);
          r0.add(K(integral(V(0), false)), -c2);
          r1.add(M(integral(V(1), false)), 1.0);
          r1.add(K(integral(U(0), false)), c2);
          r1.add(integral(F, false), -1.0);
          break;
        case Scheme::WaveJohnson:
          r0.add(K(integral(V(0), false)), c2);
          r0.add(K(integral(U(1), false)), -c2);
          r0.add(K(jump_of(u, 0, ritz_u0)), -c2 * Li_a);
          r1.add(M(integral(V(1), false)), 1.0);
          r1.add(M(jump_of(*sol.v, 0, pi_v0)), Li_a);
          r1.add(K(integral(U(0), false)), c2);
          r1.add(integral(F, false), -1.0);
          break;
        case Scheme::WaveWalkington:
          r0.add(M(integral(U(2), false)), 1.0);
          r0.add(M(jump_of(u, 1, pi_v0)), Li_a);
          r0.add(K(integral(U(0), false)), c2);
          r0.add(integral(F, false), -1.0);
          break;
      }
      res = std::max({res, norm_inf(r0.r), norm_inf(r1.r)});
      scale = std::max({scale, r0.scale, r1.scale});
    }
  }
  return std::max(worst, res / scale);
}

const TimeMesh kMesh({0.0, 0.2, 0.5, 0.6, 1.0});

}  // namespace

TEST(Methods, GalerkinResidualAllSchemes) {
  const auto space = build_space(0, 1, 6, 2);
  for (Scheme s : kAllSchemes)
    for (int q = min_time_degree(s); q <= min_time_degree(s) + 1; ++q) {
      const auto data = smooth_data();
      const auto sol = solve(make_spec(s, q, 2), space, kMesh, data);
      EXPECT_LE(galerkin_residual(sol, space, kMesh, data), 1e-9) << scheme_name(s) << " q=" << q;
      EXPECT_LE(sol.diagnostics.max_residual, 1e-9);
    }
}

TEST(Methods, ZeroDataGivesZero) {
  const auto space = build_space(0, 1, 5, 3);
  for (Scheme s : kAllSchemes) {
    const auto sol = solve(make_spec(s, min_time_degree(s) + 1, 3), space, kMesh, zero_data());
    for (double c : sol.u.coefficients()) EXPECT_EQ(c, 0.0);
    if (sol.v) {
      for (double c : sol.v->coefficients()) EXPECT_EQ(c, 0.0);
    }
  }
}

TEST(Methods, DeterministicAndRestartable) {
  const auto space = build_space(0, 1, 5, 2);
  const auto ops = assemble(space);
  const auto data = smooth_data();
  for (Scheme s : kAllSchemes) {
    const auto spec = make_spec(s, min_time_degree(s) + 1, 2);
    const auto a = solve(spec, space, kMesh, data);
    const auto b = solve(spec, space, kMesh, data);
    EXPECT_EQ(a.u.coefficients(), b.u.coefficients()) << scheme_name(s);
    // re-solve each slab from the stored trace of the previous one
    SlabStepper stepper(spec, space, ops, kMesh, data);
    std::vector<SlabState> ends{stepper.initial_state()};
    for (std::size_t n = 0; n < kMesh.slabs(); ++n) ends.push_back(stepper.step(n, ends.back()).end);
    SlabStepper fresh(spec, space, ops, kMesh, data);
    for (std::size_t n = kMesh.slabs(); n-- > 0;) {
      const auto r = fresh.step(n, ends[n]);
      const auto ref = a.u.slab_coeffs(n);
      ASSERT_EQ(r.u.size(), ref.size());
      for (std::size_t k = 0; k < ref.size(); ++k) EXPECT_EQ(r.u[k], ref[k]) << scheme_name(s) << " slab " << n;
    }
  }
}

TEST(Methods, UnconditionalSolvability) {
  for (Scheme s : {Scheme::HeatJamet, Scheme::HeatAzizMonk, Scheme::WaveFrenchPeterson, Scheme::WaveJohnson,
                   Scheme::WaveWalkington})
    for (int q = min_time_degree(s); q <= min_time_degree(s) + 2; ++q)
      for (int p : {1, 3})
        for (double tau : {1e-3, 1.0, 10.0})
          for (double coef : {1e-3, 10.0}) {
            auto spec = make_spec(s, q, p);
            spec.nu = coef;
            spec.c = coef;
            const auto space = build_space(0, 1, 8, p);
            EXPECT_NO_THROW(solve(spec, space, TimeMesh({0.0, tau}), smooth_data()))
                << scheme_name(s) << " q=" << q << " p=" << p << " tau=" << tau << " coef=" << coef;
          }
}

TEST(Methods, CflGuard) {
  const auto space = build_space(0, 1, 10, 2);
  auto spec = make_spec(Scheme::WaveVanilla, 2, 2);
  spec.cfl_override = false;
  const double C = default_cfl_constant(2, 2);
  EXPECT_DOUBLE_EQ(C, 0.25 / (std::pow(3.0, 1.5) * 3.0));
  const auto mesh = TimeMesh::uniform(1.0, 4);
  try {
    check_cfl(spec, space, mesh);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CflViolation);
  }
  EXPECT_THROW(solve(spec, space, mesh, smooth_data()), Error);
  spec.cfl_override = true;
  const auto sol = solve(spec, space, mesh, smooth_data());
  ASSERT_TRUE(sol.diagnostics.cfl_margin);
  EXPECT_NEAR(*sol.diagnostics.cfl_margin, C * 0.1 / 1.3 / 0.25, 1e-14);
  EXPECT_TRUE(sol.diagnostics.cfl_violated);
  EXPECT_FALSE(check_cfl(make_spec(Scheme::WaveJohnson, 1, 2), space, mesh));
}

TEST(Methods, DegreeValidation) {
  const auto space = build_space(0, 1, 4, 1);
  for (Scheme s : kAllSchemes) {
    if (min_time_degree(s) == 0) continue;
    try {
      solve(make_spec(s, min_time_degree(s) - 1, 1), space, kMesh, smooth_data());
      FAIL() << scheme_name(s);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidDegree);
    }
  }
}

TEST(Methods, FrenchPetersonReduction) {
  const auto space = build_space(0, 1, 6, 2);
  for (int q = 1; q <= 3; ++q) {
    const auto sol = solve(make_spec(Scheme::WaveFrenchPeterson, q, 2), space, kMesh, smooth_data());
    EXPECT_LE(french_peterson_reduction_defect(sol), 1e-9);
  }
}

TEST(Methods, SchemeNames) {
  for (Scheme s : kAllSchemes) EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  EXPECT_FALSE(parse_scheme("heat"));
  EXPECT_EQ(min_time_degree(Scheme::HeatJamet), 0);
  EXPECT_EQ(min_time_degree(Scheme::WaveVanilla), 2);
  EXPECT_EQ(min_time_degree(Scheme::WaveWalkington), 2);
  EXPECT_TRUE(has_velocity_field(Scheme::WaveJohnson));
  EXPECT_FALSE(has_velocity_field(Scheme::WaveWalkington));
}
