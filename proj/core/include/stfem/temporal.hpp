#ifndef STFEM_TEMPORAL_HPP
#define STFEM_TEMPORAL_HPP

#include <cstddef>
#include <vector>

namespace stfem {

// Nodes 0 = t_0 < t_1 < ... < t_N; slab n (0-based) is (t_n, t_{n+1}).
class TimeMesh {
 public:
  TimeMesh() = default;
  explicit TimeMesh(std::vector<double> nodes);
  static TimeMesh uniform(double T, std::size_t slabs);

  std::size_t slabs() const noexcept { return nodes_.empty() ? 0 : nodes_.size() - 1; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  double node(std::size_t n) const { return nodes_.at(n); }
  double left(std::size_t slab) const { return nodes_.at(slab); }
  double right(std::size_t slab) const { return nodes_.at(slab + 1); }
  double width(std::size_t slab) const { return right(slab) - left(slab); }
  double final_time() const { return nodes_.back(); }
  double max_width() const;

  // Reference coordinate s in [-1,1] of t in slab; throws OutOfSlab beyond 1e-12 tau.
  double to_reference(std::size_t slab, double t) const;
  double from_reference(std::size_t slab, double s) const;

 private:
  std::vector<double> nodes_;
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const noexcept { return nodes.size(); }
};

// Values of P_0..P_n at s (reference Legendre on [-1,1]); deriv selects d^k/ds^k, k <= 2.
std::vector<double> legendre_all(int n, double s, int deriv = 0);
double legendre(int i, double s, int deriv = 0);
// P_i^{(k)}(-1) and P_i^{(k)}(1) in closed form.
double legendre_at_left(int i, int deriv = 0);
double legendre_at_right(int i, int deriv = 0);

// Shifted Legendre polynomial L_i on a slab, normalized so L_i(t_{n+1}) = 1.
double legendre_shifted_eval(int i, const TimeMesh& mesh, std::size_t slab, double t, int deriv = 0);

QuadratureRule gauss_legendre(int m);
QuadratureRule gauss_radau_left(int q);
// Gauss-Lobatto: m >= 2 points including both endpoints.
QuadratureRule gauss_lobatto(int m);
// m Chebyshev-Gauss points cos((2k+1)pi/(2m)) in increasing order.
std::vector<double> chebyshev_points(int m);

QuadratureRule map_rule(const QuadratureRule& ref, double a, double b);

}  // namespace stfem

#endif
