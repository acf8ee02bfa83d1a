#include "stfem/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "stfem/analysis.hpp"
#include "stfem/methods.hpp"
#include "stfem/spatial.hpp"
#include "stfem/temporal.hpp"
#include "stfem/timeops.hpp"

namespace stfem {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

TimeMesh random_mesh(Rng& rng, std::size_t slabs) {
  std::vector<double> nodes{0.0};
  for (std::size_t n = 0; n < slabs; ++n) nodes.push_back(nodes.back() + uniform(rng, 0.1, 2.0));
  return TimeMesh(std::move(nodes));
}

TimePolyField random_field(Rng& rng, const TimeMesh& mesh, int q, std::size_t dim) {
  std::vector<double> c(mesh.slabs() * (q + 1) * dim);
  std::normal_distribution<double> nd;
  for (double& x : c) x = nd(rng);
  return TimePolyField(mesh, q, dim, Continuity::Broken, std::move(c));
}

double sq(std::span<const double> v) { return dot(v, v); }

std::vector<double> diff(std::span<const double> a, std::span<const double> b) {
  std::vector<double> d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
  return d;
}

// Gauss-Legendre integral over a slab of a scalar function of t.
double slab_integral(const TimeMesh& mesh, std::size_t slab, int points, const std::function<double(double)>& f) {
  const auto r = map_rule(gauss_legendre(points), mesh.left(slab), mesh.right(slab));
  double acc = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) acc += r.weights[k] * f(r.nodes[k]);
  return acc;
}

CheckResult finish(std::string id, std::string name, double worst, double tol, std::string detail = {}) {
  return {std::move(id), std::move(name), worst <= tol, worst, std::move(detail)};
}

}  // namespace

CheckResult check_legendre_orthogonality(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const TimeMesh mesh({0.0, uniform(rng, 0.1, 3.0), 3.5 + uniform(rng, 0.1, 3.0)});
    for (std::size_t slab = 0; slab < 2; ++slab) {
      const double tau = mesh.width(slab);
      for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) {
          const double v = slab_integral(mesh, slab, 10, [&](double t) {
            return legendre_shifted_eval(i, mesh, slab, t) * legendre_shifted_eval(j, mesh, slab, t);
          });
          const double expected = i == j ? tau / (2 * i + 1) : 0.0;
          worst = std::max(worst, std::abs(v - expected) / tau);
        }
    }
  }
  return finish("1", "Legendre orthogonality int L_i L_j = tau/(2i+1) delta_ij, i,j <= 8", worst, 1e-11);
}

CheckResult check_radau_exactness() {
  double worst = 0.0, weakest_failure = 1e300;
  for (int q = 0; q <= 6; ++q) {
    const auto r = gauss_radau_left(q);
    for (int k = 0; k <= 2 * q + 1; ++k) {
      double s = 0.0;
      for (std::size_t g = 0; g < r.size(); ++g) s += r.weights[g] * std::pow(r.nodes[g], k);
      const double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
      if (k <= 2 * q) worst = std::max(worst, std::abs(s - exact));
      else weakest_failure = std::min(weakest_failure, std::abs(s - exact));
    }
  }
  std::ostringstream d;
  d << "smallest degree-(2q+1) defect " << weakest_failure;
  CheckResult c = finish("2", "Radau rule exact to degree 2q, fails at 2q+1 (q <= 6)", worst, 1e-13, d.str());
  c.passed = c.passed && weakest_failure > 1e-6;
  return c;
}

CheckResult check_weight_identities(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int q = 0; q <= 5; ++q)
    for (int trial = 0; trial < 100; ++trial) {
      const auto mesh = random_mesh(rng, 2);
      const auto v = random_field(rng, mesh, q, 3);
      const std::size_t n = 1;
      const double lam = weight_lambda(WeightKind::Standard, mesh.width(n), q);
      const double vdv = slab_integral(mesh, n, q + 4, [&](double t) {
        return weight_eval(WeightKind::Standard, mesh, n, q, t) * dot(v.value(n, t, 1), v.value(n, t));
      });
      const double l2 = slab_integral(mesh, n, q + 4, [&](double t) { return sq(v.value(n, t)); });
      const auto right = v.trace_right(n), left_plus = v.trace_left(n), left_minus = v.trace_right(n - 1);
      const auto jmp = diff(left_plus, left_minus);

      const double cont_rhs = 0.25 * sq(right) - 0.5 * sq(left_plus) + 0.5 * lam * l2;
      const double scale_c = 0.25 * sq(right) + 0.5 * sq(left_plus) + 0.5 * lam * l2;
      worst = std::max(worst, std::abs(vdv - cont_rhs) / scale_c);

      const double broken_lhs = vdv + dot(jmp, left_plus);
      const double broken_rhs = 0.25 * sq(right) + 0.5 * sq(jmp) - 0.5 * sq(left_minus) + 0.5 * lam * l2;
      const double scale_b = 0.25 * sq(right) + 0.5 * sq(jmp) + 0.5 * sq(left_minus) + 0.5 * lam * l2;
      worst = std::max(worst, std::abs(broken_lhs - broken_rhs) / scale_b);
    }
  return finish("3", "weight-function identities, continuous and broken (100 fields per q <= 5)", worst, 1e-11);
}

CheckResult check_projection_kernel(std::uint64_t seed) {
  Rng rng(seed);
  double worst_kernel = 0.0, worst_full = 0.0;
  for (int q = 1; q <= 6; ++q)
    for (int trial = 0; trial < 20; ++trial) {
      const auto mesh = random_mesh(rng, 2);
      const std::size_t n = 1;
      const double tau = mesh.width(n), t0 = mesh.left(n);
      std::vector<double> alpha{uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2)};
      const double a2 = sq(alpha);
      const double kernel = slab_integral(mesh, n, q + 3, [&](double t) {
        return (t - t0) * a2 * legendre_shifted_eval(q - 1, mesh, n, t) * legendre_shifted_eval(q - 1, mesh, n, t, 1);
      });
      const double expected = tau * (q - 1) / (2.0 * q - 1) * a2;
      worst_kernel = std::max(worst_kernel, std::abs(kernel - expected) / (tau * a2));

      // Full quantity -int phi dt u . (Id - Pi_{q-1}) u for u in P_q with top coefficient alpha.
      const auto u = random_field(rng, mesh, q, 3);
      const auto pu = project_l2_time(mesh, q - 1, 3, as_slab_function(u), {0, q});
      const double full = -slab_integral(mesh, n, q + 3, [&](double t) {
        return weight_eval(WeightKind::Standard, mesh, n, q, t) * dot(u.value(n, t, 1), diff(u.value(n, t), pu.value(n, t)));
      });
      const double top = sq(u.coeff(n, q));
      const double expected_full = q / (2.0 * (2 * q + 1)) * top;
      worst_full = std::max(worst_full, std::abs(full - expected_full) / std::max(top, 1e-300));
    }
  std::ostringstream d;
  d << "kernel int (t-t_{n-1}) a L_{q-1} . a L'_{q-1} = tau(q-1)/(2q-1)|a|^2: " << worst_kernel
    << "; full -int phi dt u (Id-Pi_{q-1})u = q/(2(2q+1))|a_q|^2: " << worst_full;
  return finish("4", "projection/weight kernel value tau(q-1)/(2q-1)|a|^2, q = 1..6", std::max(worst_kernel, worst_full),
                1e-11, d.str());
}

CheckResult check_left_thomee_kernel(std::uint64_t seed) {
  Rng rng(seed);
  double worst_kernel = 0.0, worst_full = 0.0;
  for (int q = 2; q <= 6; ++q)
    for (int trial = 0; trial < 20; ++trial) {
      const auto mesh = random_mesh(rng, 2);
      const std::size_t n = 1;
      const double tau = mesh.width(n);
      auto lq1 = [&](double t) { return legendre_shifted_eval(q - 1, mesh, n, t); };
      const SlabFunction g = [&](std::size_t s, double t) {
        return std::vector<double>{(t - mesh.left(s)) * legendre_shifted_eval(q - 1, mesh, s, t)};
      };
      const auto pg = project_thomee(mesh, q - 1, 1, g, Side::Left, {0, q});
      const double kernel = slab_integral(mesh, n, q + 3, [&](double t) {
        return lq1(t) * (g(n, t)[0] - pg.value(n, t)[0]);
      });
      const double expected = tau * tau * q / (2.0 * (2 * q - 1) * (2 * q - 1));
      worst_kernel = std::max(worst_kernel, std::abs(kernel - expected) / (tau * tau));

      const SlabFunction phiw = [&](std::size_t s, double t) {
        return std::vector<double>{weight_eval(WeightKind::Standard, mesh, s, q, t) *
                                   legendre_shifted_eval(q - 1, mesh, s, t)};
      };
      const auto pw = project_thomee(mesh, q - 1, 1, phiw, Side::Left, {0, q});
      const double full = -slab_integral(mesh, n, q + 3, [&](double t) {
        return lq1(t) * (phiw(n, t)[0] - pw.value(n, t)[0]);
      });
      const double expected_full = weight_lambda(WeightKind::Standard, tau, q) * expected;
      worst_full = std::max(worst_full, std::abs(full - expected_full) / tau);
    }
  std::ostringstream d;
  d << "kernel int L_{q-1} (Id - P~)((t-t_{n-1}) L_{q-1}) = tau^2 q/(2(2q-1)^2): " << worst_kernel
    << "; full -int w (Id - P~)(phi w) = lambda_n tau^2 q/(2(2q-1)^2): " << worst_full;
  return finish("5", "left Thomee kernel value tau^2 q/(2(2q-1)^2), q = 2..6", std::max(worst_kernel, worst_full),
                1e-11, d.str());
}

CheckResult check_left_thomee_of_legendre(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int q = 2; q <= 6; ++q) {
    const auto mesh = random_mesh(rng, 3);
    const SlabFunction lq = [&](std::size_t n, double t) {
      return std::vector<double>{legendre_shifted_eval(q, mesh, n, t)};
    };
    const auto p = project_thomee(mesh, q - 1, 1, lq, Side::Left, {0, q});
    for (std::size_t n = 0; n < mesh.slabs(); ++n)
      for (int i = 0; i < q; ++i) worst = std::max(worst, std::abs(p.coeff(n, i)[0] - (i == q - 1 ? -1.0 : 0.0)));
  }
  return finish("6", "left Thomee projection of degree q-1 maps L_q to -L_{q-1}, q = 2..6", worst, 1e-11);
}

CheckResult check_reconstruction_energy(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t N = 1; N <= 8; ++N)
    for (int q = 0; q <= 4; ++q)
      for (int trial = 0; trial < 3; ++trial) {
        const auto mesh = random_mesh(rng, N);
        const auto v = random_field(rng, mesh, q, 2);
        const std::vector<double> zero(2, 0.0);
        const auto r = reconstruct(v, zero);
        double lhs = 0.0, jumps = 0.0;
        const double init = sq(v.trace_left(0));
        for (std::size_t n = 0; n < N; ++n) {
          lhs += slab_integral(mesh, n, q + 3, [&](double t) { return dot(r.value(n, t, 1), v.value(n, t)); });
          if (n > 0) jumps += sq(jump(v, n));
          const double rhs = 0.5 * (sq(v.trace_right(n)) + jumps + init);
          worst = std::max(worst, std::abs(lhs - rhs) / std::max(rhs, 1e-300));
        }
      }
  return finish("7", "reconstruction energy identity, N <= 8, q <= 4", worst, 1e-11);
}

CheckResult check_thomee_chain(std::uint64_t seed) {
  Rng rng(seed);
  const TimeFunction v = [](double t) {
    return std::vector<double>{std::sin(2 * t) + 0.3, std::exp(-t) * std::cos(3 * t), t * t - 0.5 * t + 0.7};
  };
  const TimeFunction dv = [](double t) {
    return std::vector<double>{2 * std::cos(2 * t), -std::exp(-t) * (std::cos(3 * t) + 3 * std::sin(3 * t)),
                               2 * t - 0.5};
  };
  double worst = 0.0;
  int max_points = 0;
  for (int q = 0; q <= 4; ++q) {
    const auto mesh = random_mesh(rng, 4);
    const auto w = random_field(rng, mesh, q, 3);
    double rhs = dot(v(0.0), w.trace_left(0));
    for (std::size_t n = 0; n < mesh.slabs(); ++n)
      rhs += slab_integral(mesh, n, 40, [&](double t) { return dot(dv(t), w.value(n, t)); });
    double prev = 0.0, lhs = 0.0;
    const std::vector<double> zero(3, 0.0);
    for (int m = q + 2; m <= 60; m += 2) {
      const auto p = project_thomee(mesh, q, 3, as_slab_function(v), Side::Right, {m, -1});
      const auto r = reconstruct(p, zero);
      lhs = 0.0;
      for (std::size_t n = 0; n < mesh.slabs(); ++n)
        lhs += slab_integral(mesh, n, q + 3, [&](double t) { return dot(r.value(n, t, 1), w.value(n, t)); });
      max_points = std::max(max_points, m);
      if (m > q + 2 && std::abs(lhs - prev) <= 1e-15 * std::max(1.0, std::abs(lhs))) break;
      prev = lhs;
    }
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  std::ostringstream d;
  d << "quadrature swept up to " << max_points << " points";
  return finish("8", "Thomee orthogonality chain int dt R(P v) w = int dt v w + v(0) w(0)", worst, 1e-11, d.str());
}

CheckResult check_inverse_estimate(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0, best_extremal = 0.0;
  std::ostringstream d;
  for (int q = 0; q <= 6; ++q) {
    const double bound = std::pow(q + 1.0, 3);
    auto ratio = [&](const TimePolyField& w, const TimeMesh& mesh) {
      double sup = 0.0;
      for (int k = 0; k <= 1000; ++k) sup = std::max(sup, sq(w.value_reference(0, -1.0 + 2.0 * k / 1000)));
      const double l2 = slab_integral(mesh, 0, q + 2, [&](double t) { return sq(w.value(0, t)); });
      return sup * mesh.width(0) / (bound * l2);
    };
    for (int trial = 0; trial < 500; ++trial) {
      const auto mesh = random_mesh(rng, 1);
      worst = std::max(worst, ratio(random_field(rng, mesh, q, 1), mesh));
    }
    const auto mesh = random_mesh(rng, 1);
    TimePolyField ext(mesh, q, 1);
    for (int i = 0; i <= q; ++i) ext.coeff(0, i)[0] = 2 * i + 1;
    const double r = ratio(ext, mesh);
    best_extremal = std::max(best_extremal, r);
    d << "q=" << q << ":" << r << " ";
  }
  CheckResult c = finish("9", "inverse estimate sup|w|^2 <= (q+1)^3/tau |w|^2_{L2}, q <= 6", worst, 1.0 + 1e-12,
                         "largest random ratio " + std::to_string(worst) + "; extremal ratios " + d.str());
  c.passed = c.passed && best_extremal >= 0.3;
  return c;
}

CheckResult check_walkington_trace(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int q = 2; q <= 5; ++q)
    for (int trial = 0; trial < 500; ++trial) {
      const auto mesh = random_mesh(rng, 1);
      const auto w = random_field(rng, mesh, q - 1, 2);
      const SlabFunction phiw = [&](std::size_t n, double t) {
        auto v = w.value(n, t);
        const double phi = weight_eval(WeightKind::Walkington, mesh, n, q, t);
        for (double& x : v) x *= phi;
        return v;
      };
      const auto p = project_l2_time(mesh, q - 1, 2, phiw, {0, q});
      const auto at_left = diff(phiw(0, mesh.left(0)), p.trace_left(0));
      const double lhs = std::sqrt(sq(at_left));
      const double lam = weight_lambda(WeightKind::Walkington, mesh.width(0), q);
      const double l2 = slab_integral(mesh, 0, q + 2, [&](double t) { return sq(w.value(0, t)); });
      worst = std::max(worst, lhs / (0.5 * std::sqrt(lam) * std::sqrt(l2)));
    }
  return finish("10", "Walkington trace bound |(Id-Pi_{q-1})(phi~ w)(t+)| <= sqrt(lambda~)/2 |w|, q = 2..5", worst,
                1.0, "largest ratio " + std::to_string(worst));
}

namespace {

ProblemData smooth_wave_data(bool forced) {
  constexpr double pi = std::numbers::pi;
  ProblemData d;
  d.T = 1.0;
  d.f = [forced](double x, double t) { return forced ? std::cos(2 * t) * std::sin(3 * pi * x) + x * (1 - x) : 0.0; };
  d.u0 = [](double x) { return std::sin(pi * x) + 0.5 * std::sin(2 * pi * x); };
  d.du0 = [](double x) { return pi * std::cos(pi * x) + pi * std::cos(2 * pi * x); };
  d.v0 = [](double x) { return 3.0 * x * (1 - x) * (1 + x); };
  return d;
}

}  // namespace

CheckResult check_french_peterson_reduction() {
  double worst = 0.0;
  const auto space = build_space(0.0, 1.0, 8, 2);
  for (int q = 1; q <= 3; ++q) {
    MethodSpec spec;
    spec.scheme = Scheme::WaveFrenchPeterson;
    spec.q = q;
    spec.p = 2;
    spec.c = 1.3;
    const auto sol = solve(spec, space, TimeMesh::uniform(1.0, 6), smooth_wave_data(true));
    worst = std::max(worst, french_peterson_reduction_defect(sol));
  }
  return finish("11", "French-Peterson reduction Pi_{q-1} v = dt u on solved instances, q = 1..3", worst, 1e-9);
}

CheckResult check_energy_bounds() {
  double worst = -1e300;
  std::ostringstream d;
  const auto space = build_space(0.0, 1.0, 8, 2);
  for (Scheme s : kAllSchemes) {
    for (int q : {min_time_degree(s), min_time_degree(s) + 1}) {
      MethodSpec spec;
      spec.scheme = s;
      spec.q = q;
      spec.p = 2;
      spec.nu = 0.7;
      spec.c = 1.3;
      std::size_t N = 8;
      if (s == Scheme::WaveVanilla)
        N = static_cast<std::size_t>(std::ceil(1.0 / (default_cfl_constant(q, 2) * space.h() / spec.c))) + 1;
      auto data = smooth_wave_data(false);
      if (!is_wave(s)) data.v0 = [](double) { return 0.0; };
      const auto sol = solve(spec, space, TimeMesh::uniform(1.0, N), data);
      const auto b = weak_partial_bound(sol, space, data);
      worst = std::max(worst, b.max_excess());
      d << scheme_name(s) << "(q=" << q << "):" << b.max_excess() << " ";
    }
  }
  return finish("12", "weak partial bounds with f = 0 for all six schemes (slack 1e-9)", worst, 1e-9,
                "max(lhs - rhs): " + d.str());
}

CheckResult check_pi_stability(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int q = 0; q <= 6; ++q)
    for (int trial = 0; trial < 20; ++trial) {
      const auto mesh = random_mesh(rng, 1);
      double a[4], b[4];
      for (int k = 0; k < 4; ++k) {
        a[k] = uniform(rng, -1, 1);
        b[k] = uniform(rng, 0, 6);
      }
      const TimeFunction v = [&](double t) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += a[k] * std::cos((k + 1) * 2.0 * t + b[k]);
        return std::vector<double>{s};
      };
      const auto p = project_l2_time(mesh, q, 1, as_slab_function(v));
      double vmax = 0.0, pmax = 0.0;
      for (int k = 0; k < 1000; ++k) {
        const double t = mesh.from_reference(0, -1.0 + 2.0 * k / 999);
        vmax = std::max(vmax, std::abs(v(t)[0]));
        pmax = std::max(pmax, std::abs(p.value(0, t)[0]));
      }
      worst = std::max(worst, pmax / ((q + 1.0) * (q + 1.0) * vmax));
    }
  return finish("aux-pi", "L2 time projection stability |Pi_q v|_inf <= (q+1)^2 |v|_inf, q <= 6", worst, 1.0);
}

CheckResult check_radau_lebesgue() {
  double worst = 0.0, prev = 0.0;
  bool monotone = true;
  std::ostringstream d;
  for (int q = 0; q <= 8; ++q) {
    const double l = radau_lebesgue_constant(q);
    d << "q=" << q << ":" << l << " ";
    worst = std::max(worst, l / (2.0 * std::sqrt(q + 1.0)));
    monotone = monotone && l >= prev;
    prev = l;
  }
  CheckResult c = finish("aux-radau", "Radau Lebesgue constant nondecreasing and <= 2 sqrt(q+1), q <= 8", worst,
                         1.0, d.str());
  c.passed = c.passed && monotone;
  return c;
}

std::vector<CheckResult> run_identity_suite(std::uint64_t seed) {
  return {check_legendre_orthogonality(seed), check_radau_exactness(),
          check_weight_identities(seed),      check_projection_kernel(seed),
          check_left_thomee_kernel(seed),     check_left_thomee_of_legendre(seed),
          check_reconstruction_energy(seed),  check_thomee_chain(seed),
          check_inverse_estimate(seed),       check_walkington_trace(seed),
          check_french_peterson_reduction(),  check_energy_bounds(),
          check_pi_stability(seed),           check_radau_lebesgue()};
}

}  // namespace stfem
