#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stfem/error.hpp"
#include "stfem/temporal.hpp"
#include "stfem/timeops.hpp"

using namespace stfem;

namespace {

const TimeMesh kMesh({0.0, 0.3, 0.8, 1.0, 1.7});

std::vector<double> smooth(double t) { return {std::sin(3 * t) + 0.2, std::exp(t) * std::cos(t)}; }
std::vector<double> dsmooth(double t) {
  return {3 * std::cos(3 * t), std::exp(t) * (std::cos(t) - std::sin(t))};
}

// int_{I_n} (f(t) - g.value(n,t))_d L_j(t) dt by composite Simpson.
double residual_moment(const TimeFunction& f, const TimePolyField& g, std::size_t n, int j, std::size_t d,
                       int deriv = 0) {
  const double a = kMesh.left(n), b = kMesh.right(n);
  return oracle::simpson([&](double t) { return (f(t)[d] - g.value(n, t, deriv)[d]) * oracle::shifted(j, a, b, t); }, a,
                         b);
}

TimePolyField random_broken(std::mt19937_64& rng, int q, std::size_t dim) {
  return TimePolyField(kMesh, q, dim, Continuity::Broken, oracle::random_vector(rng, kMesh.slabs() * (q + 1) * dim));
}

}  // namespace

TEST(TimePolyField, ValueIsLegendreSum) {
  std::mt19937_64 rng(1);
  const auto f = random_broken(rng, 3, 2);
  for (std::size_t n = 0; n < kMesh.slabs(); ++n) {
    const double t = 0.5 * (kMesh.left(n) + kMesh.right(n)) + 0.1 * kMesh.width(n);
    for (std::size_t d = 0; d < 2; ++d) {
      double s = 0.0;
      for (int i = 0; i <= 3; ++i) s += f.coeff(n, i)[d] * oracle::shifted(i, kMesh.left(n), kMesh.right(n), t);
      EXPECT_NEAR(f.value(n, t)[d], s, 1e-13);
    }
  }
}

TEST(TimePolyField, ContinuityEnforced) {
  std::mt19937_64 rng(2);
  auto c = oracle::random_vector(rng, kMesh.slabs() * 3);
  try {
    TimePolyField(kMesh, 2, 1, Continuity::Continuous, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ContinuityViolated);
  }
}

TEST(TimePolyField, JumpAndTraces) {
  std::mt19937_64 rng(3);
  const auto f = random_broken(rng, 2, 1);
  const auto j = jump(f, 2);
  EXPECT_NEAR(j[0], f.trace_left(2)[0] - f.trace_right(1)[0], 1e-15);
  EXPECT_NEAR(slab_trace(f, 2, TraceSide::Minus)[0], f.value(1, kMesh.node(2))[0], 1e-13);
  EXPECT_THROW(jump(f, 0), Error);
  EXPECT_THROW(jump(f, kMesh.slabs()), Error);
}

TEST(TimePolyField, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(4);
  const auto f = random_broken(rng, 4, 1);
  const auto df = f.derivative();
  EXPECT_EQ(df.degree(), 3);
  const double t = 0.55, h = 1e-6;
  EXPECT_NEAR(df.value(1, t)[0], (f.value(1, t + h)[0] - f.value(1, t - h)[0]) / (2 * h), 1e-6);
}

TEST(Projection, L2ReproducesPolynomialsAndIsOrthogonal) {
  std::mt19937_64 rng(5);
  const auto p = random_broken(rng, 2, 2);
  const auto same = project_l2_time(kMesh, 2, 2, as_slab_function(p), {0, 2});
  for (std::size_t k = 0; k < p.coefficients().size(); ++k)
    EXPECT_NEAR(same.coefficients()[k], p.coefficients()[k], 1e-13);
  for (int q = 0; q <= 4; ++q) {
    const auto pi = project_l2_time(kMesh, q, 2, as_slab_function(smooth));
    for (std::size_t n = 0; n < kMesh.slabs(); ++n)
      for (int j = 0; j <= q; ++j)
        for (std::size_t d = 0; d < 2; ++d) EXPECT_NEAR(residual_moment(smooth, pi, n, j, d), 0.0, 1e-10);
  }
}

TEST(Projection, QuadratureGuard) {
  std::mt19937_64 rng(6);
  const auto p = random_broken(rng, 6, 1);
  try {
    project_l2_time(kMesh, 3, 1, as_slab_function(p), {2, 6});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::QuadratureUnderresolved);
  }
}

TEST(Projection, ThomeeRightAndLeft) {
  for (int q = 1; q <= 4; ++q) {
    const auto r = project_thomee(kMesh, q, 2, as_slab_function(smooth), Side::Right);
    const auto l = project_thomee(kMesh, q, 2, as_slab_function(smooth), Side::Left);
    for (std::size_t n = 0; n < kMesh.slabs(); ++n) {
      for (std::size_t d = 0; d < 2; ++d) {
        EXPECT_NEAR(r.trace_right(n)[d], smooth(kMesh.right(n))[d], 1e-13);
        EXPECT_NEAR(l.trace_left(n)[d], smooth(kMesh.left(n))[d], 1e-13);
        for (int j = 0; j < q; ++j) {
          EXPECT_NEAR(residual_moment(smooth, r, n, j, d), 0.0, 1e-10);
          EXPECT_NEAR(residual_moment(smooth, l, n, j, d), 0.0, 1e-10);
        }
      }
    }
  }
}

TEST(Projection, AzizMonkMatchesBothEnds) {
  for (int q = 1; q <= 4; ++q) {
    const auto p = project_aziz_monk(kMesh, q, 2, as_slab_function(smooth));
    EXPECT_EQ(p.continuity(), Continuity::Continuous);
    for (std::size_t n = 0; n < kMesh.slabs(); ++n)
      for (std::size_t d = 0; d < 2; ++d) {
        EXPECT_NEAR(p.trace_left(n)[d], smooth(kMesh.left(n))[d], 1e-13);
        EXPECT_NEAR(p.trace_right(n)[d], smooth(kMesh.right(n))[d], 1e-13);
        for (int j = 0; j + 2 <= q; ++j) EXPECT_NEAR(residual_moment(smooth, p, n, j, d), 0.0, 1e-10);
      }
  }
}

TEST(Projection, WalkingtonDerivativeIsThomee) {
  for (int q = 2; q <= 4; ++q) {
    const auto p = project_walkington(kMesh, q, 2, as_slab_function(smooth), as_slab_function(dsmooth));
    for (std::size_t n = 0; n < kMesh.slabs(); ++n)
      for (std::size_t d = 0; d < 2; ++d) {
        EXPECT_NEAR(p.trace_left(n)[d], smooth(kMesh.left(n))[d], 1e-12);
        EXPECT_NEAR(p.value(n, kMesh.right(n), 1)[d], dsmooth(kMesh.right(n))[d], 1e-11);
        for (int j = 0; j + 1 < q; ++j) EXPECT_NEAR(residual_moment(dsmooth, p, n, j, d, 1), 0.0, 1e-10);
      }
  }
  EXPECT_THROW(project_walkington(kMesh, 1, 2, as_slab_function(smooth), as_slab_function(dsmooth)), Error);
}

TEST(Projection, RadauInterpolationHitsNodes) {
  for (int q = 0; q <= 5; ++q) {
    const auto p = interpolate_radau(kMesh, q, 2, as_slab_function(smooth));
    const auto r = gauss_radau_left(q);
    for (std::size_t n = 0; n < kMesh.slabs(); ++n)
      for (double s : r.nodes) {
        const double t = kMesh.from_reference(n, s);
        for (std::size_t d = 0; d < 2; ++d) EXPECT_NEAR(p.value(n, t)[d], smooth(t)[d], 1e-12);
      }
  }
}

TEST(Projection, RadauLebesgueQ1IsTwo) {
  // nodes -1, 1/3: sum of |Lagrange basis| peaks at s = 1 with 1/2 + 3/2.
  EXPECT_NEAR(radau_lebesgue_constant(1), 2.0, 1e-12);
}

TEST(Projection, RadauLebesgueQ2Independent) {
  const auto r = gauss_radau_left(2);
  double best = 0.0;
  for (int k = 0; k <= 40000; ++k) {
    const double s = -1.0 + 2.0 * k / 40000;
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      double l = 1.0;
      for (int j = 0; j < 3; ++j)
        if (j != i) l *= (s - r.nodes[j]) / (r.nodes[i] - r.nodes[j]);
      sum += std::abs(l);
    }
    best = std::max(best, sum);
  }
  EXPECT_NEAR(radau_lebesgue_constant(2), best, 1e-6);
}

TEST(Reconstruction, DefiningRelation) {
  std::mt19937_64 rng(7);
  for (int q = 0; q <= 4; ++q) {
    const auto v = random_broken(rng, q, 2);
    const std::vector<double> init{0.3, -0.4};
    const auto r = reconstruct(v, init);
    EXPECT_EQ(r.degree(), q + 1);
    EXPECT_EQ(r.continuity(), Continuity::Continuous);
    EXPECT_NEAR(r.trace_left(0)[0], init[0], 1e-13);
    for (std::size_t n = 0; n < kMesh.slabs(); ++n) {
      const auto prev = n == 0 ? init : v.trace_right(n - 1);
      const double a = kMesh.left(n), b = kMesh.right(n);
      for (int i = 0; i <= q; ++i)
        for (std::size_t d = 0; d < 2; ++d) {
          const double lhs = oracle::simpson([&](double t) { return r.value(n, t, 1)[d] * oracle::shifted(i, a, b, t); }, a, b);
          const double rhs = oracle::simpson([&](double t) { return v.value(n, t, 1)[d] * oracle::shifted(i, a, b, t); }, a, b) +
                             (v.trace_left(n)[d] - prev[d]) * (i % 2 ? -1.0 : 1.0);
          EXPECT_NEAR(lhs, rhs, 1e-9);
        }
      // reconstruction meets the left-sided trace at every node
      for (std::size_t d = 0; d < 2; ++d) EXPECT_NEAR(r.trace_right(n)[d], v.trace_right(n)[d], 1e-11);
    }
  }
}

TEST(Reconstruction, SmoothVariantInterpolatesNodes) {
  for (int q = 0; q <= 3; ++q) {
    const auto r = reconstruct_smooth(kMesh, q, 2, smooth, dsmooth, smooth(0.0));
    for (std::size_t n = 0; n < kMesh.slabs(); ++n)
      for (std::size_t d = 0; d < 2; ++d) {
        EXPECT_NEAR(r.trace_right(n)[d], smooth(kMesh.right(n))[d], 1e-11);
        for (int j = 0; j <= q; ++j) EXPECT_NEAR(residual_moment(dsmooth, r, n, j, d, 1), 0.0, 1e-10);
      }
  }
}

TEST(Weights, StandardAndWalkington) {
  EXPECT_DOUBLE_EQ(weight_lambda(WeightKind::Standard, 0.5, 3), 1.0);
  EXPECT_DOUBLE_EQ(weight_lambda(WeightKind::Walkington, 0.5, 2), 1.0 / 10.0);
  // phi(t_{n-1}) = 1, phi(t_n) = 1/2
  EXPECT_DOUBLE_EQ(weight_eval(WeightKind::Standard, kMesh, 1, 2, 0.3), 1.0);
  EXPECT_NEAR(weight_eval(WeightKind::Standard, kMesh, 1, 2, 0.8), 0.5, 1e-15);
}

TEST(Weights, DerivativeMoments) {
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; j <= 6; ++j) {
      const double m = oracle::simpson([&](double s) { return oracle::dlegendre(j, s) * oracle::legendre(i, s); }, -1, 1, 20000);
      EXPECT_NEAR(legendre_derivative_moment(i, j), m, 1e-10);
    }
}
