#include "stfem/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stfem/error.hpp"
#include "stfem/temporal.hpp"

namespace stfem {

FeSpace::FeSpace(double a, double b, std::size_t elements, int degree)
    : a_(a), b_(b), elements_(elements), degree_(degree) {
  if (degree < 1 || degree > 6) throw Error(ErrorCode::InvalidDegree, "spatial degree must be in 1..6");
  if (elements < 2) throw Error(ErrorCode::InvalidCount, "need at least 2 elements");
  if (!(b > a)) throw Error(ErrorCode::InvalidCount, "empty spatial domain");
  ref_nodes_ = gauss_lobatto(degree + 1).nodes;
  bary_.assign(degree + 1, 1.0);
  for (int k = 0; k <= degree; ++k)
    for (int m = 0; m <= degree; ++m)
      if (m != k) bary_[k] /= ref_nodes_[k] - ref_nodes_[m];
}

long FeSpace::dof(std::size_t e, int k) const {
  const long g = static_cast<long>(e) * degree_ + k;
  if (g == 0 || g == static_cast<long>(elements_) * degree_) return -1;
  return g - 1;
}

double FeSpace::dof_coordinate(std::size_t i) const {
  const std::size_t g = i + 1;
  const std::size_t e = std::min(g / degree_, elements_ - 1);
  const int k = static_cast<int>(g - e * degree_);
  return element_left(e) + 0.5 * h() * (ref_nodes_[k] + 1.0);
}

std::size_t FeSpace::locate(double x) const {
  const double tol = 1e-12 * (b_ - a_);
  if (x < a_ - tol || x > b_ + tol) throw Error(ErrorCode::OutOfDomain, "x = " + std::to_string(x));
  const double r = (x - a_) / h();
  return std::min(static_cast<std::size_t>(std::max(r, 0.0)), elements_ - 1);
}

void FeSpace::shape(double xi, std::span<double> phi, std::span<double> dphi) const {
  const int n = degree_ + 1;
  for (int k = 0; k < n; ++k) {
    double v = bary_[k], dv = 0.0;
    for (int m = 0; m < n; ++m) {
      if (m == k) continue;
      dv = dv * (xi - ref_nodes_[m]) + v;
      v *= xi - ref_nodes_[m];
    }
    phi[k] = v;
    dphi[k] = dv;
  }
}

FeSpace build_space(double a, double b, std::size_t elements, int degree) { return FeSpace(a, b, elements, degree); }

SpatialOperators assemble(const FeSpace& space) {
  const std::size_t n = space.dofs();
  const int p = space.degree();
  SpatialOperators ops{DenseMatrix(n, n), DenseMatrix(n, n)};
  const auto rule = gauss_legendre(p + 2);
  const double jac = 0.5 * space.h();
  std::vector<double> phi(p + 1), dphi(p + 1);
  for (std::size_t e = 0; e < space.elements(); ++e)
    for (std::size_t g = 0; g < rule.size(); ++g) {
      space.shape(rule.nodes[g], phi, dphi);
      const double w = rule.weights[g];
      for (int k = 0; k <= p; ++k) {
        const long i = space.dof(e, k);
        if (i < 0) continue;
        for (int l = 0; l <= p; ++l) {
          const long j = space.dof(e, l);
          if (j < 0) continue;
          ops.mass(i, j) += w * jac * phi[k] * phi[l];
          ops.stiffness(i, j) += w * dphi[k] * dphi[l] / jac;
        }
      }
    }
  return ops;
}

namespace {

std::vector<double> assemble_load(const FeSpace& space, const SpaceFunction& f, int points, bool derivative) {
  const int p = space.degree();
  const auto rule = gauss_legendre(points > 0 ? points : p + 4);
  const double jac = 0.5 * space.h();
  std::vector<double> out(space.dofs(), 0.0), phi(p + 1), dphi(p + 1);
  for (std::size_t e = 0; e < space.elements(); ++e) {
    const double xl = space.element_left(e);
    for (std::size_t g = 0; g < rule.size(); ++g) {
      const double xi = rule.nodes[g];
      space.shape(xi, phi, dphi);
      const double fx = f(xl + jac * (xi + 1.0));
      for (int k = 0; k <= p; ++k) {
        const long i = space.dof(e, k);
        if (i < 0) continue;
        out[i] += derivative ? rule.weights[g] * fx * dphi[k] : rule.weights[g] * jac * fx * phi[k];
      }
    }
  }
  return out;
}

}  // namespace

std::vector<double> load_vector(const FeSpace& space, const SpaceFunction& f, int points) {
  return assemble_load(space, f, points, false);
}

std::vector<double> derivative_load_vector(const FeSpace& space, const SpaceFunction& g, int points) {
  return assemble_load(space, g, points, true);
}

std::vector<double> l2_project_space(const FeSpace& space, const SpatialOperators& ops, const SpaceFunction& f) {
  return lu_solve(ops.mass, load_vector(space, f));
}

std::vector<double> ritz_project_space(const FeSpace& space, const SpatialOperators& ops, const SpaceFunction& du) {
  return lu_solve(ops.stiffness, derivative_load_vector(space, du));
}

namespace {

double evaluate(const FeSpace& space, std::span<const double> dofs, double x, bool derivative) {
  if (dofs.size() != space.dofs()) throw Error(ErrorCode::DimensionMismatch, "dof vector length");
  const std::size_t e = space.locate(x);
  const int p = space.degree();
  const double xi = std::clamp(2.0 * (x - space.element_left(e)) / space.h() - 1.0, -1.0, 1.0);
  std::vector<double> phi(p + 1), dphi(p + 1);
  space.shape(xi, phi, dphi);
  double s = 0.0;
  for (int k = 0; k <= p; ++k) {
    const long i = space.dof(e, k);
    if (i >= 0) s += dofs[i] * (derivative ? dphi[k] * 2.0 / space.h() : phi[k]);
  }
  return s;
}

}  // namespace

double evaluate_fe(const FeSpace& space, std::span<const double> dofs, double x) {
  return evaluate(space, dofs, x, false);
}

double evaluate_fe_derivative(const FeSpace& space, std::span<const double> dofs, double x) {
  return evaluate(space, dofs, x, true);
}

ElementSamples sample_fe(const FeSpace& space, std::span<const double> dofs, int points) {
  if (dofs.size() != space.dofs()) throw Error(ErrorCode::DimensionMismatch, "dof vector length");
  const int p = space.degree();
  const auto rule = gauss_legendre(points);
  const double jac = 0.5 * space.h();
  ElementSamples s;
  const std::size_t total = space.elements() * rule.size();
  s.x.reserve(total);
  s.w.reserve(total);
  s.value.reserve(total);
  s.dx.reserve(total);
  std::vector<double> phi(p + 1), dphi(p + 1);
  for (std::size_t e = 0; e < space.elements(); ++e) {
    const double xl = space.element_left(e);
    for (std::size_t g = 0; g < rule.size(); ++g) {
      space.shape(rule.nodes[g], phi, dphi);
      double v = 0.0, d = 0.0;
      for (int k = 0; k <= p; ++k) {
        const long i = space.dof(e, k);
        if (i < 0) continue;
        v += dofs[i] * phi[k];
        d += dofs[i] * dphi[k] / jac;
      }
      s.x.push_back(xl + jac * (rule.nodes[g] + 1.0));
      s.w.push_back(rule.weights[g] * jac);
      s.value.push_back(v);
      s.dx.push_back(d);
    }
  }
  return s;
}

}  // namespace stfem
