#ifndef STFEM_SPATIAL_HPP
#define STFEM_SPATIAL_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stfem/linalg.hpp"

namespace stfem {

using SpaceFunction = std::function<double(double)>;

// Conforming P_p Lagrange space on a uniform mesh of (a,b) with homogeneous Dirichlet
// conditions. Element nodes are Gauss-Lobatto points; only interior nodes carry DOFs.
class FeSpace {
 public:
  FeSpace(double a, double b, std::size_t elements, int degree);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t elements() const noexcept { return elements_; }
  int degree() const noexcept { return degree_; }
  double h() const noexcept { return (b_ - a_) / static_cast<double>(elements_); }
  double h_min() const noexcept { return h(); }
  std::size_t dofs() const noexcept { return elements_ * degree_ - 1; }

  double element_left(std::size_t e) const { return a_ + h() * static_cast<double>(e); }
  const std::vector<double>& reference_nodes() const noexcept { return ref_nodes_; }
  // Interior DOF index of local node k on element e, -1 on the boundary.
  long dof(std::size_t e, int k) const;
  double dof_coordinate(std::size_t i) const;
  std::size_t locate(double x) const;

  // Shape values and d/dxi at reference point xi in [-1,1].
  void shape(double xi, std::span<double> phi, std::span<double> dphi) const;

 private:
  double a_, b_;
  std::size_t elements_;
  int degree_;
  std::vector<double> ref_nodes_;
  std::vector<double> bary_;
};

FeSpace build_space(double a, double b, std::size_t elements, int degree);

struct SpatialOperators {
  DenseMatrix mass;
  DenseMatrix stiffness;
};

SpatialOperators assemble(const FeSpace& space);

// (f, phi_k) and (g, phi_k') with `points` Gauss points per element (0 selects p+4).
std::vector<double> load_vector(const FeSpace& space, const SpaceFunction& f, int points = 0);
std::vector<double> derivative_load_vector(const FeSpace& space, const SpaceFunction& g, int points = 0);

std::vector<double> l2_project_space(const FeSpace& space, const SpatialOperators& ops, const SpaceFunction& f);
// Ritz projection from the derivative du of the target function.
std::vector<double> ritz_project_space(const FeSpace& space, const SpatialOperators& ops, const SpaceFunction& du);

double evaluate_fe(const FeSpace& space, std::span<const double> dofs, double x);
double evaluate_fe_derivative(const FeSpace& space, std::span<const double> dofs, double x);

// Values (and x-derivatives) of the FE function at mapped quadrature points of every element.
struct ElementSamples {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> value;
  std::vector<double> dx;
};
ElementSamples sample_fe(const FeSpace& space, std::span<const double> dofs, int points);

}  // namespace stfem

#endif
