#include <gtest/gtest.h>

#include <cmath>

#include "stfem/analysis.hpp"
#include "stfem/error.hpp"

using namespace stfem;

namespace {

// u(x,t) = x(1-x) t on one slab (0,1): t = (L_0 + L_1)/2.
Solution linear_in_time(const FeSpace& space) {
  const auto ops = assemble(space);
  const auto shape = l2_project_space(space, ops, [](double x) { return x * (1 - x); });
  const TimeMesh mesh({0.0, 1.0});
  TimePolyField u(mesh, 1, space.dofs(), Continuity::Broken);
  for (std::size_t k = 0; k < space.dofs(); ++k) {
    u.coeff(0, 0)[k] = 0.5 * shape[k];
    u.coeff(0, 1)[k] = 0.5 * shape[k];
  }
  Solution s;
  s.spec.scheme = Scheme::HeatJamet;
  s.spec.q = 1;
  s.spec.p = space.degree();
  s.u = u;
  return s;
}

}  // namespace

TEST(Norms, ClosedFormsOfKnownField) {
  const auto space = build_space(0, 1, 4, 2);
  const auto ops = assemble(space);
  const auto s = linear_in_time(space);
  EXPECT_NEAR(eval_norm(NormKind::LinfL2, s.u, space, ops), std::sqrt(1.0 / 30), 1e-13);
  EXPECT_NEAR(eval_norm(NormKind::L2QT, s.u, space, ops), std::sqrt(1.0 / 90), 1e-13);
  EXPECT_NEAR(eval_norm(NormKind::LinfH1semi, s.u, space, ops), std::sqrt(1.0 / 3), 1e-13);
  EXPECT_NEAR(eval_norm(NormKind::L2H1semi, s.u, space, ops), std::sqrt(1.0 / 9), 1e-13);
  EXPECT_NEAR(eval_norm(NormKind::TraceL2AtT, s.u, space, ops), std::sqrt(1.0 / 30), 1e-13);
}

TEST(Norms, JumpSeminormOfPiecewiseConstant) {
  // values 1, 3 on two slabs times phi: jump seminorm^2 = |u(0+)|^2 + |[u]_1|^2 + |u(T-)|^2 in L2
  const auto space = build_space(0, 1, 4, 2);
  const auto ops = assemble(space);
  const auto shape = l2_project_space(space, ops, [](double x) { return x * (1 - x); });
  TimePolyField u(TimeMesh({0.0, 0.5, 1.0}), 0, space.dofs());
  for (std::size_t k = 0; k < space.dofs(); ++k) {
    u.coeff(0, 0)[k] = shape[k];
    u.coeff(1, 0)[k] = 3 * shape[k];
  }
  EXPECT_NEAR(eval_norm(NormKind::JumpSeminorm, u, space, ops), std::sqrt((1 + 4 + 9) / 30.0), 1e-13);
}

TEST(Errors, ZeroForExactFieldAndNormOfExactForZeroField) {
  const auto space = build_space(0, 1, 4, 2);
  const auto s = linear_in_time(space);
  ExactSolution ex{[](double x, double t) { return x * (1 - x) * t; }, [](double x, double t) { return (1 - 2 * x) * t; },
                   [](double x, double) { return x * (1 - x); }, [](double x, double) { return 1 - 2 * x; }};
  const std::vector<NormSpec> norms{NormSpec::parse("LinfL2"), NormSpec::parse("L2QT"), NormSpec::parse("LinfH1semi"),
                                    NormSpec::parse("L2H1semi"), NormSpec::parse("LinfL2:dtu")};
  for (double e : error_norms(s, space, ex, norms)) EXPECT_NEAR(e, 0.0, 1e-13);
  Solution z = s;
  z.u = TimePolyField(s.u.mesh(), 1, space.dofs());
  const auto e = error_norms(z, space, ex, norms);
  EXPECT_NEAR(e[0], std::sqrt(1.0 / 30), 1e-12);
  EXPECT_NEAR(e[1], std::sqrt(1.0 / 90), 1e-12);
  EXPECT_NEAR(e[4], std::sqrt(1.0 / 30), 1e-12);
}

TEST(Errors, QuadratureRefinementConverges) {
  // a non-polynomial exact solution forces the refinement loop
  const auto space = build_space(0, 1, 4, 1);
  const auto s = linear_in_time(space);
  const double e = error_norm(NormKind::L2QT, s.u, space, [](double x, double t) { return std::sin(3 * x) * std::exp(t); },
                              [](double x, double t) { return 3 * std::cos(3 * x) * std::exp(t); });
  EXPECT_GT(e, 0.0);
  EXPECT_TRUE(std::isfinite(e));
}

TEST(NormSpecs, ParseAndLabel) {
  const auto n = NormSpec::parse("LinfL2:dtu");
  EXPECT_EQ(n.kind, NormKind::LinfL2);
  EXPECT_EQ(n.quantity, Quantity::DtU);
  EXPECT_EQ(n.label(), "LinfL2:dtu");
  EXPECT_EQ(NormSpec::parse("L2QT").label(), "L2QT");
  EXPECT_THROW(NormSpec::parse("Linf"), Error);
  EXPECT_THROW(NormSpec::parse("LinfL2:w"), Error);
}

TEST(Eoc, Arithmetic) {
  const auto t = compute_eoc({0.1, 0.05, 0.025}, {1e-2, 1.25e-3, 1.5625e-4});
  ASSERT_EQ(t.orders.size(), 2u);
  EXPECT_NEAR(t.orders[0], 3.0, 1e-12);
  EXPECT_NEAR(t.orders[1], 3.0, 1e-12);
  const auto h = compute_eoc({1, 0.5, 0.25}, {4, 2, 1});
  EXPECT_NEAR(h.orders[1], 1.0, 1e-14);
}

TEST(Eoc, Errors) {
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoFailure;
  };
  EXPECT_EQ(code([] { compute_eoc({0.1}, {1.0}); }), ErrorCode::TooFewLevels);
  EXPECT_EQ(code([] { compute_eoc({0.1, 0.05}, {1.0, 0.0}); }), ErrorCode::NonPositiveError);
  EXPECT_EQ(code([] { compute_eoc({0.1, 0.05}, {1.0}); }), ErrorCode::DimensionMismatch);
}

TEST(Constants, Registry) {
  for (int q = 0; q <= 8; ++q) {
    const auto c = verification_constants(q, 2);
    EXPECT_DOUBLE_EQ(c.c_inv, std::pow(q + 1.0, 3));
    EXPECT_DOUBLE_EQ(c.c_pi_t, std::pow(q + 1.0, 2));
    EXPECT_GT(c.c_si, 0.0);
    EXPECT_LE(c.c_si, 2 * std::sqrt(q + 1.0));
    EXPECT_GT(c.c_cfl, 0.0);
  }
}
