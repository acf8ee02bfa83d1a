#include "stfem/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stfem/error.hpp"

namespace stfem {

TimeMesh::TimeMesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw Error(ErrorCode::InvalidCount, "time mesh needs at least one slab");
  if (nodes_.front() != 0.0) throw Error(ErrorCode::InvalidCount, "time mesh must start at t_0 = 0");
  for (std::size_t n = 1; n < nodes_.size(); ++n)
    if (!(nodes_[n] > nodes_[n - 1]))
      throw Error(ErrorCode::InvalidCount, "time nodes must be strictly increasing");
}

TimeMesh TimeMesh::uniform(double T, std::size_t slabs) {
  if (slabs == 0 || !(T > 0.0)) throw Error(ErrorCode::InvalidCount, "uniform mesh needs T > 0 and N >= 1");
  std::vector<double> nodes(slabs + 1);
  for (std::size_t n = 0; n <= slabs; ++n) nodes[n] = T * static_cast<double>(n) / static_cast<double>(slabs);
  nodes.back() = T;
  return TimeMesh(std::move(nodes));
}

double TimeMesh::max_width() const {
  double w = 0.0;
  for (std::size_t n = 0; n < slabs(); ++n) w = std::max(w, width(n));
  return w;
}

double TimeMesh::to_reference(std::size_t slab, double t) const {
  if (slab >= slabs()) throw Error(ErrorCode::IndexOutOfRange, "slab " + std::to_string(slab));
  const double a = left(slab), b = right(slab), tau = b - a;
  if (t < a - 1e-12 * tau || t > b + 1e-12 * tau)
    throw Error(ErrorCode::OutOfSlab, "t = " + std::to_string(t) + " outside slab " + std::to_string(slab));
  return std::clamp((2.0 * t - a - b) / tau, -1.0, 1.0);
}

double TimeMesh::from_reference(std::size_t slab, double s) const {
  return 0.5 * (1.0 - s) * left(slab) + 0.5 * (1.0 + s) * right(slab);
}

std::vector<double> legendre_all(int n, double s, int deriv) {
  std::vector<double> p(n + 1), dp(n + 1), ddp(n + 1);
  p[0] = 1.0;
  dp[0] = 0.0;
  ddp[0] = 0.0;
  if (n >= 1) {
    p[1] = s;
    dp[1] = 1.0;
    ddp[1] = 0.0;
  }
  for (int k = 1; k < n; ++k) {
    p[k + 1] = ((2 * k + 1) * s * p[k] - k * p[k - 1]) / (k + 1);
    dp[k + 1] = dp[k - 1] + (2 * k + 1) * p[k];
    ddp[k + 1] = ddp[k - 1] + (2 * k + 1) * dp[k];
  }
  if (deriv == 0) return p;
  if (deriv == 1) return dp;
  if (deriv == 2) return ddp;
  throw Error(ErrorCode::InvalidDegree, "legendre derivative order above 2");
}

double legendre(int i, double s, int deriv) { return legendre_all(i, s, deriv)[i]; }

namespace {
double right_derivative(int i, int deriv) {
  // P_i^{(k)}(1) = prod_{m<k} (i-m)(i+m+1) / (2^k k!)
  double v = 1.0;
  for (int m = 0; m < deriv; ++m) v *= static_cast<double>((i - m) * (i + m + 1)) / (2.0 * (m + 1));
  return v;
}
}  // namespace

double legendre_at_right(int i, int deriv) { return i < deriv ? 0.0 : right_derivative(i, deriv); }

double legendre_at_left(int i, int deriv) {
  const double sign = ((i + deriv) % 2 == 0) ? 1.0 : -1.0;
  return sign * legendre_at_right(i, deriv);
}

double legendre_shifted_eval(int i, const TimeMesh& mesh, std::size_t slab, double t, int deriv) {
  const double s = mesh.to_reference(slab, t);
  return legendre(i, s, deriv) * std::pow(2.0 / mesh.width(slab), deriv);
}

QuadratureRule gauss_legendre(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidCount, "Gauss-Legendre needs m >= 1");
  QuadratureRule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto p = legendre_all(m, x, 0);
      const auto dp = legendre_all(m, x, 1);
      const double dx = p[m] / dp[m];
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double d = legendre(m, x, 1);
    r.nodes[m - 1 - i] = x;
    r.weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * d * d);
  }
  return r;
}

QuadratureRule gauss_radau_left(int q) {
  if (q < 0 || q > 12) throw Error(ErrorCode::InvalidDegree, "Gauss-Radau supports 0 <= q <= 12");
  QuadratureRule r;
  r.nodes.assign(q + 1, -1.0);
  r.weights.assign(q + 1, 0.0);
  const double qq = static_cast<double>(q + 1) * (q + 1);
  r.weights[0] = 2.0 / qq;
  for (int j = 1; j <= q; ++j) {
    // Chebyshev-Gauss-Radau seed, Newton on P_q + P_{q+1}
    double x = -std::cos(2.0 * std::numbers::pi * j / (2 * q + 1));
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const auto p = legendre_all(q + 1, x, 0);
      const auto dp = legendre_all(q + 1, x, 1);
      const double dx = (p[q] + p[q + 1]) / (dp[q] + dp[q + 1]);
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) throw Error(ErrorCode::QuadratureNotConverged, "Radau Newton iteration did not converge");
    const double pq = legendre(q, x, 0);
    r.nodes[j] = x;
    r.weights[j] = (1.0 - x) / (qq * pq * pq);
  }
  return r;
}

QuadratureRule gauss_lobatto(int m) {
  if (m < 2) throw Error(ErrorCode::InvalidCount, "Gauss-Lobatto needs m >= 2");
  const int n = m - 1;
  QuadratureRule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  r.nodes[0] = -1.0;
  r.nodes[n] = 1.0;
  for (int j = 1; j < n; ++j) {
    double x = -std::cos(std::numbers::pi * j / n);
    for (int it = 0; it < 100; ++it) {
      const double dx = legendre(n, x, 1) / legendre(n, x, 2);
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[j] = x;
  }
  for (int j = 0; j <= n; ++j) {
    const double p = legendre(n, r.nodes[j], 0);
    r.weights[j] = 2.0 / (n * (n + 1) * p * p);
  }
  return r;
}

std::vector<double> chebyshev_points(int m) {
  std::vector<double> x(m);
  for (int k = 0; k < m; ++k) x[m - 1 - k] = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * m));
  return x;
}

QuadratureRule map_rule(const QuadratureRule& ref, double a, double b) {
  QuadratureRule r = ref;
  for (std::size_t k = 0; k < r.size(); ++k) {
    r.nodes[k] = 0.5 * (1.0 - ref.nodes[k]) * a + 0.5 * (1.0 + ref.nodes[k]) * b;
    r.weights[k] = 0.5 * (b - a) * ref.weights[k];
  }
  return r;
}

}  // namespace stfem
