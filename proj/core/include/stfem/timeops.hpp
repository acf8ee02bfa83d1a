#ifndef STFEM_TIMEOPS_HPP
#define STFEM_TIMEOPS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stfem/temporal.hpp"

namespace stfem {

enum class Continuity { Broken, Continuous };

// Piecewise polynomial in time with values in R^dim. Coefficients are stored per slab
// in the shifted Legendre basis, layout [slab][i][d].
class TimePolyField {
 public:
  TimePolyField() = default;
  TimePolyField(TimeMesh mesh, int degree, std::size_t dim, Continuity continuity = Continuity::Broken);
  // Validates continuity to 1e-12 relative when continuity == Continuous.
  TimePolyField(TimeMesh mesh, int degree, std::size_t dim, Continuity continuity, std::vector<double> coeffs);

  const TimeMesh& mesh() const noexcept { return mesh_; }
  int degree() const noexcept { return degree_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t slabs() const noexcept { return mesh_.slabs(); }
  Continuity continuity() const noexcept { return continuity_; }

  std::span<double> coeff(std::size_t slab, int i);
  std::span<const double> coeff(std::size_t slab, int i) const;
  std::span<double> slab_coeffs(std::size_t slab);
  std::span<const double> slab_coeffs(std::size_t slab) const;
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

  std::vector<double> value(std::size_t slab, double t, int deriv = 0) const;
  std::vector<double> value_reference(std::size_t slab, double s, int deriv = 0) const;
  std::vector<double> trace_left(std::size_t slab) const;
  std::vector<double> trace_right(std::size_t slab) const;

  // Broken time derivative, degree max(q-1, 0).
  TimePolyField derivative() const;
  // max_n |v(t_n^+) - v(t_n^-)| / max(1, |v|)
  double continuity_defect() const;

 private:
  TimeMesh mesh_;
  int degree_ = 0;
  std::size_t dim_ = 0;
  Continuity continuity_ = Continuity::Broken;
  std::vector<double> coeffs_;
};

// Input to the projection operators; slab tells broken inputs which side to evaluate.
using SlabFunction = std::function<std::vector<double>(std::size_t slab, double t)>;
using TimeFunction = std::function<std::vector<double>(double t)>;

SlabFunction as_slab_function(const TimePolyField& v, int deriv = 0);
SlabFunction as_slab_function(TimeFunction v);

struct ProjectionOptions {
  int points = 0;        // Gauss-Legendre points; 0 selects 2q+10
  int input_degree = -1; // polynomial degree of the input when known
};

enum class Side { Right, Left };

TimePolyField project_l2_time(const TimeMesh& mesh, int q, std::size_t dim, const SlabFunction& v,
                              ProjectionOptions opts = {});
TimePolyField project_thomee(const TimeMesh& mesh, int q, std::size_t dim, const SlabFunction& v, Side side,
                             ProjectionOptions opts = {});
TimePolyField project_aziz_monk(const TimeMesh& mesh, int q, std::size_t dim, const SlabFunction& v,
                                ProjectionOptions opts = {});
TimePolyField project_walkington(const TimeMesh& mesh, int q, std::size_t dim, const SlabFunction& v,
                                 const SlabFunction& dv, ProjectionOptions opts = {});
TimePolyField interpolate_radau(const TimeMesh& mesh, int q, std::size_t dim, const SlabFunction& v);
double radau_lebesgue_constant(int q, int samples = 4001);

// Continuous degree q+1 reconstruction of a broken degree q field, R(t_0) = v_init.
TimePolyField reconstruct(const TimePolyField& v, std::span<const double> v_init);
TimePolyField reconstruct_smooth(const TimeMesh& mesh, int q, std::size_t dim, const TimeFunction& v,
                                 const TimeFunction& dv, std::span<const double> v_init, ProjectionOptions opts = {});

enum class WeightKind { Standard, Walkington };
double weight_lambda(WeightKind kind, double tau, int q);
double weight_eval(WeightKind kind, const TimeMesh& mesh, std::size_t slab, int q, double t);

enum class TraceSide { Minus, Plus };
std::vector<double> slab_trace(const TimePolyField& v, std::size_t node, TraceSide side);
// [v]_n = v(t_n^+) - v(t_n^-) for interior nodes 1 <= n <= N-1.
std::vector<double> jump(const TimePolyField& v, std::size_t node);

// Reference Legendre coefficient matrix of d/ds: D[i][j] = int_{-1}^{1} P_j' P_i ds.
double legendre_derivative_moment(int i, int j);

}  // namespace stfem

#endif
