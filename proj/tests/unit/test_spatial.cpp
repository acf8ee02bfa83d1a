#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "stfem/error.hpp"
#include "stfem/spatial.hpp"

using namespace stfem;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(FeSpace, Validation) {
  EXPECT_THROW(FeSpace(0, 1, 1, 1), Error);
  EXPECT_THROW(FeSpace(0, 1, 4, 0), Error);
  EXPECT_THROW(FeSpace(0, 1, 4, 7), Error);
  const FeSpace s(0, 1, 4, 3);
  EXPECT_EQ(s.dofs(), 11u);
  EXPECT_EQ(s.dof(0, 0), -1);
  EXPECT_EQ(s.dof(3, 3), -1);
  EXPECT_EQ(s.dof(1, 0), s.dof(0, 3));
  try {
    s.locate(1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfDomain);
  }
}

TEST(FeSpace, ShapePartitionOfUnity) {
  for (int p = 1; p <= 6; ++p) {
    const FeSpace s(0, 1, 3, p);
    std::vector<double> phi(p + 1), dphi(p + 1);
    for (double xi : {-0.9, -0.3, 0.2, 0.77}) {
      s.shape(xi, phi, dphi);
      double a = 0, b = 0;
      for (int k = 0; k <= p; ++k) {
        a += phi[k];
        b += dphi[k];
      }
      EXPECT_NEAR(a, 1.0, 1e-13);
      EXPECT_NEAR(b, 0.0, 1e-11);
    }
  }
}

TEST(Assembly, LinearElementsByHand) {
  const std::size_t M = 5;
  const auto s = build_space(0, 1, M, 1);
  const auto ops = assemble(s);
  const double h = 1.0 / M;
  for (std::size_t i = 0; i < s.dofs(); ++i)
    for (std::size_t j = 0; j < s.dofs(); ++j) {
      const long d = static_cast<long>(i) - static_cast<long>(j);
      const double m = d == 0 ? 4 * h / 6 : (std::abs(d) == 1 ? h / 6 : 0.0);
      const double k = d == 0 ? 2 / h : (std::abs(d) == 1 ? -1 / h : 0.0);
      EXPECT_NEAR(ops.mass(i, j), m, 1e-15);
      EXPECT_NEAR(ops.stiffness(i, j), k, 1e-12);
    }
}

TEST(Assembly, QuadraticFormsIntegrateExactly) {
  // u = x(1-x) is in V_h for p >= 2: u^T M u = 1/30, u^T K u = 1/3.
  for (int p = 2; p <= 6; ++p) {
    const auto s = build_space(0, 1, 3, p);
    const auto ops = assemble(s);
    std::vector<double> u(s.dofs());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double x = s.dof_coordinate(i);
      u[i] = x * (1 - x);
    }
    EXPECT_NEAR(dot(u, matvec(ops.mass, u)), 1.0 / 30.0, 1e-14);
    EXPECT_NEAR(dot(u, matvec(ops.stiffness, u)), 1.0 / 3.0, 1e-13);
  }
}

TEST(Projection, L2AndRitzReproduceDiscreteFunctions) {
  const auto s = build_space(0, 1, 4, 3);
  const auto ops = assemble(s);
  auto f = [](double x) { return x * (1 - x) * (x + 0.5); };
  auto df = [](double x) { return -3 * x * x + x + 0.5; };
  const auto a = l2_project_space(s, ops, f);
  const auto b = ritz_project_space(s, ops, df);
  for (double x : {0.1, 0.37, 0.5, 0.93}) {
    EXPECT_NEAR(evaluate_fe(s, a, x), f(x), 1e-13);
    EXPECT_NEAR(evaluate_fe(s, b, x), f(x), 1e-13);
    EXPECT_NEAR(evaluate_fe_derivative(s, b, x), df(x), 1e-12);
  }
}

TEST(Projection, RitzRatesForLinearElements) {
  // u = sin(pi x): |u - R_h u|_{H1} ~ h, |u - R_h u|_{L2} ~ h^2.
  auto u = [](double x) { return std::sin(pi * x); };
  auto du = [](double x) { return pi * std::cos(pi * x); };
  std::vector<double> e0, e1;
  for (std::size_t M : {8u, 16u, 32u}) {
    const auto s = build_space(0, 1, M, 1);
    const auto ops = assemble(s);
    const auto r = ritz_project_space(s, ops, du);
    e0.push_back(std::sqrt(oracle::simpson([&](double x) { return std::pow(u(x) - evaluate_fe(s, r, x), 2); }, 0, 1, 6400)));
    // derivative error element by element to avoid kinks inside Simpson panels
    double g = 0;
    for (std::size_t e = 0; e < M; ++e) {
      const double a = s.element_left(e), b = a + s.h();
      g += oracle::simpson([&](double x) { return std::pow(du(x) - evaluate_fe_derivative(s, r, x), 2); }, a + 1e-12,
                           b - 1e-12, 50);
    }
    e1.push_back(std::sqrt(g));
  }
  EXPECT_NEAR(std::log2(e0[1] / e0[2]), 2.0, 0.1);
  EXPECT_NEAR(std::log2(e1[1] / e1[2]), 1.0, 0.1);
}

TEST(Loads, AgainstClosedForms) {
  // (1, phi_i) = h for interior hat functions; (g, phi_i') with g = x gives -h (integration by parts).
  const auto s = build_space(0, 1, 4, 1);
  const auto f = load_vector(s, [](double) { return 1.0; });
  const auto g = derivative_load_vector(s, [](double x) { return x; });
  for (std::size_t i = 0; i < s.dofs(); ++i) {
    EXPECT_NEAR(f[i], 0.25, 1e-15);
    EXPECT_NEAR(g[i], -0.25, 1e-15);
  }
}

TEST(Sampling, ValuesAndWeights) {
  const auto s = build_space(0, 1, 4, 2);
  const auto ops = assemble(s);
  const auto u = l2_project_space(s, ops, [](double x) { return x * (1 - x); });
  const auto smp = sample_fe(s, u, 5);
  double sum = 0, sq = 0;
  for (std::size_t k = 0; k < smp.x.size(); ++k) {
    sum += smp.w[k];
    sq += smp.w[k] * smp.value[k] * smp.value[k];
    EXPECT_NEAR(smp.dx[k], 1 - 2 * smp.x[k], 1e-13);
  }
  EXPECT_NEAR(sum, 1.0, 1e-14);
  EXPECT_NEAR(sq, 1.0 / 30.0, 1e-14);
}
