#include "stfem/timeops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stfem/error.hpp"
#include "stfem/linalg.hpp"

namespace stfem {

namespace {

void axpy(std::span<double> y, double a, std::span<const double> x) {
  for (std::size_t d = 0; d < y.size(); ++d) y[d] += a * x[d];
}

int default_points(int q, const ProjectionOptions& opts) { return opts.points > 0 ? opts.points : 2 * q + 10; }

void check_exactness(int q, int points, const ProjectionOptions& opts) {
  if (opts.input_degree < 0) return;
  const int needed = q + std::max(opts.input_degree, q);
  if (2 * points - 1 < needed)
    throw Error(ErrorCode::QuadratureUnderresolved, "exactness " + std::to_string(2 * points - 1) + " below " +
                                                        std::to_string(needed));
}

// L2 Legendre coefficients 0..deg of v on one slab, layout [i][d].
std::vector<double> l2_coefficients(const TimeMesh& mesh, std::size_t slab, int deg, std::size_t dim,
                                    const SlabFunction& v, const QuadratureRule& rule) {
  std::vector<double> c((deg + 1) * dim, 0.0);
  if (deg < 0) return c;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double s = rule.nodes[k];
    const auto vals = v(slab, mesh.from_reference(slab, s));
    if (vals.size() != dim) throw Error(ErrorCode::DimensionMismatch, "function value has wrong dimension");
    const auto p = legendre_all(deg, s);
    for (int i = 0; i <= deg; ++i) axpy({c.data() + i * dim, dim}, 0.5 * (2 * i + 1) * rule.weights[k] * p[i], vals);
  }
  return c;
}

std::vector<double> sum_coeffs(std::span<const double> c, int deg, std::size_t dim, bool alternate) {
  std::vector<double> s(dim, 0.0);
  for (int i = 0; i <= deg; ++i) axpy(s, (alternate && i % 2 == 1) ? -1.0 : 1.0, c.subspan(i * dim, dim));
  return s;
}

void check_degree(int q, int min_q, const char* what) {
  if (q < min_q) throw Error(ErrorCode::InvalidDegree, std::string(what) + " needs q >= " + std::to_string(min_q));
}

}  // namespace

TimePolyField::TimePolyField(TimeMesh mesh, int degree, std::size_t dim, Continuity continuity)
    : mesh_(std::move(mesh)), degree_(degree), dim_(dim), continuity_(continuity) {
  if (degree < 0) throw Error(ErrorCode::InvalidDegree, "negative time degree");
  coeffs_.assign(mesh_.slabs() * (degree_ + 1) * dim_, 0.0);
}

TimePolyField::TimePolyField(TimeMesh mesh, int degree, std::size_t dim, Continuity continuity,
                             std::vector<double> coeffs)
    : TimePolyField(std::move(mesh), degree, dim, continuity) {
  if (coeffs.size() != coeffs_.size()) throw Error(ErrorCode::DimensionMismatch, "coefficient vector length");
  coeffs_ = std::move(coeffs);
  if (continuity_ == Continuity::Continuous && continuity_defect() > 1e-12)
    throw Error(ErrorCode::ContinuityViolated, "trace mismatch " + std::to_string(continuity_defect()));
}

std::span<double> TimePolyField::coeff(std::size_t slab, int i) {
  return {coeffs_.data() + (slab * (degree_ + 1) + i) * dim_, dim_};
}
std::span<const double> TimePolyField::coeff(std::size_t slab, int i) const {
  return {coeffs_.data() + (slab * (degree_ + 1) + i) * dim_, dim_};
}
std::span<double> TimePolyField::slab_coeffs(std::size_t slab) {
  return {coeffs_.data() + slab * (degree_ + 1) * dim_, (degree_ + 1) * dim_};
}
std::span<const double> TimePolyField::slab_coeffs(std::size_t slab) const {
  return {coeffs_.data() + slab * (degree_ + 1) * dim_, (degree_ + 1) * dim_};
}

std::vector<double> TimePolyField::value_reference(std::size_t slab, double s, int deriv) const {
  if (slab >= slabs()) throw Error(ErrorCode::IndexOutOfRange, "slab " + std::to_string(slab));
  const auto p = legendre_all(degree_, s, deriv);
  const double scale = std::pow(2.0 / mesh_.width(slab), deriv);
  std::vector<double> out(dim_, 0.0);
  for (int i = 0; i <= degree_; ++i) axpy(out, scale * p[i], coeff(slab, i));
  return out;
}

std::vector<double> TimePolyField::value(std::size_t slab, double t, int deriv) const {
  return value_reference(slab, mesh_.to_reference(slab, t), deriv);
}

std::vector<double> TimePolyField::trace_left(std::size_t slab) const {
  return sum_coeffs(slab_coeffs(slab), degree_, dim_, true);
}

std::vector<double> TimePolyField::trace_right(std::size_t slab) const {
  return sum_coeffs(slab_coeffs(slab), degree_, dim_, false);
}

TimePolyField TimePolyField::derivative() const {
  const int dq = std::max(degree_ - 1, 0);
  TimePolyField d(mesh_, dq, dim_, Continuity::Broken);
  for (std::size_t n = 0; n < slabs(); ++n) {
    const double scale = 2.0 / mesh_.width(n);
    for (int k = 0; k < degree_; ++k)
      for (int m = k + 1; m <= degree_; m += 2) axpy(d.coeff(n, k), scale * (2 * k + 1), coeff(n, m));
  }
  return d;
}

double TimePolyField::continuity_defect() const {
  double defect = 0.0;
  for (std::size_t n = 1; n < slabs(); ++n) {
    const auto a = trace_right(n - 1), b = trace_left(n);
    double diff = 0.0, scale = 1.0;
    for (std::size_t d = 0; d < dim_; ++d) {
      diff = std::max(diff, std::abs(a[d] - b[d]));
      scale = std::max({scale, std::abs(a[d]), std::abs(b[d])});
    }
    defect = std::max(defect, diff / scale);
  }
  return defect;
}

SlabFunction as_slab_function(const TimePolyField& v, int deriv) {
  return [&v, deriv](std::size_t slab, double t) { return v.value(slab, t, deriv); };
}

SlabFunction as_slab_function(TimeFunction v) {
  return [v = std::move(v)](std::size_t, double t) { return v(t); };
}

TimePolyField project_l2_time(const TimeMesh& mesh, int q, std::size_t dim, const SlabFunction& v,
                              ProjectionOptions opts) {
  check_degree(q, 0, "L2 projection");
  const int m = default_points(q, opts);
  check_exactness(q, m, opts);
  const auto rule = gauss_legendre(m);
  TimePolyField out(mesh, q, dim);
  for (std::size_t n = 0; n < mesh.slabs(); ++n) {
    const auto c = l2_coefficients(mesh, n, q, dim, v, rule);
    std::copy(c.begin(), c.end(), out.slab_coeffs(n).begin());
  }
  return out;
}

TimePolyField project_thomee(const TimeMesh& mesh, int q, std::size_t dim, const SlabFunction& v, Side side,
                             ProjectionOptions opts) {
  check_degree(q, 0, "Thomee projection");
  const int m = default_points(q, opts);
  check_exactness(q, m, opts);
  const auto rule = gauss_legendre(m);
  TimePolyField out(mesh, q, dim);
  for (std::size_t n = 0; n < mesh.slabs(); ++n) {
    const auto c = l2_coefficients(mesh, n, q - 1, dim, v, rule);
    auto oc = out.slab_coeffs(n);
    std::copy(c.begin(), c.end(), oc.begin());
    const bool right = side == Side::Right;
    auto target = v(n, right ? mesh.right(n) : mesh.left(n));
    const auto partial = sum_coeffs(c, q - 1, dim, !right);
    const double sign = (right || q % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t d = 0; d < dim; ++d) out.coeff(n, q)[d] = sign * (target[d] - partial[d]);
  }
  return out;
}

TimePolyField project_aziz_monk(const TimeMesh& mesh, int q, std::size_t dim, const SlabFunction& v,
                                ProjectionOptions opts) {
  check_degree(q, 1, "Aziz-Monk projection");
  const int m = default_points(q, opts);
  check_exactness(q, m, opts);
  const auto rule = gauss_legendre(m);
  TimePolyField out(mesh, q, dim, Continuity::Continuous);
  const double sq = q % 2 == 0 ? 1.0 : -1.0;
  for (std::size_t n = 0; n < mesh.slabs(); ++n) {
    const auto c = l2_coefficients(mesh, n, q - 2, dim, v, rule);
    std::copy(c.begin(), c.end(), out.slab_coeffs(n).begin());
    const auto vr = v(n, mesh.right(n));
    const auto vl = v(n, mesh.left(n));
    const auto pr = sum_coeffs(c, q - 2, dim, false);
    const auto pl = sum_coeffs(c, q - 2, dim, true);
    for (std::size_t d = 0; d < dim; ++d) {
      const double mu_n = vr[d] - pr[d];
      const double mu_l = vl[d] - pl[d];
      out.coeff(n, q - 1)[d] = 0.5 * (mu_n - sq * mu_l);
      out.coeff(n, q)[d] = 0.5 * (mu_n + sq * mu_l);
    }
  }
  return out;
}

TimePolyField project_walkington(const TimeMesh& mesh, int q, std::size_t dim, const SlabFunction& v,
                                 const SlabFunction& dv, ProjectionOptions opts) {
  check_degree(q, 2, "Walkington projection");
  ProjectionOptions dopts = opts;
  if (dopts.input_degree > 0) dopts.input_degree -= 1;
  const auto g = project_thomee(mesh, q - 1, dim, dv, Side::Right, dopts);
  TimePolyField out(mesh, q, dim, Continuity::Continuous);
  for (std::size_t n = 0; n < mesh.slabs(); ++n) {
    const double half_tau = 0.5 * mesh.width(n);
    // int_{-1}^{s} P_0 = P_0 + P_1, int_{-1}^{s} P_k = (P_{k+1} - P_{k-1}) / (2k+1)
    axpy(out.coeff(n, 0), half_tau, g.coeff(n, 0));
    axpy(out.coeff(n, 1), half_tau, g.coeff(n, 0));
    for (int k = 1; k <= q - 1; ++k) {
      axpy(out.coeff(n, k + 1), half_tau / (2 * k + 1), g.coeff(n, k));
      axpy(out.coeff(n, k - 1), -half_tau / (2 * k + 1), g.coeff(n, k));
    }
    axpy(out.coeff(n, 0), 1.0, v(n, mesh.left(n)));
  }
  if (out.continuity_defect() > 1e-10)
    throw Error(ErrorCode::ContinuityViolated, "Walkington projection lost continuity");
  return out;
}

TimePolyField interpolate_radau(const TimeMesh& mesh, int q, std::size_t dim, const SlabFunction& v) {
  check_degree(q, 0, "Radau interpolation");
  // Radau rule is exact to degree 2q, so the discrete moments of the interpolant are its Legendre coefficients.
  const auto rule = gauss_radau_left(q);
  TimePolyField out(mesh, q, dim);
  for (std::size_t n = 0; n < mesh.slabs(); ++n) {
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double s = rule.nodes[k];
      const auto vals = v(n, mesh.from_reference(n, s));
      const auto p = legendre_all(q, s);
      for (int i = 0; i <= q; ++i) axpy(out.coeff(n, i), 0.5 * (2 * i + 1) * rule.weights[k] * p[i], vals);
    }
  }
  return out;
}

double radau_lebesgue_constant(int q, int samples) {
  const auto rule = gauss_radau_left(q);
  const auto& x = rule.nodes;
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double s = -1.0 + 2.0 * k / (samples - 1);
    double sum = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
      double l = 1.0;
      for (std::size_t b = 0; b < x.size(); ++b)
        if (b != a) l *= (s - x[b]) / (x[a] - x[b]);
      sum += std::abs(l);
    }
    best = std::max(best, sum);
  }
  return best;
}

double legendre_derivative_moment(int i, int j) { return (j > i && (j - i) % 2 == 1) ? 2.0 : 0.0; }

namespace {

// Per slab: R(t_left) = left, int dR/dt L_i = moment_i for i = 0..q.
void reconstruct_slab(int q, std::size_t dim, std::span<const double> left, std::span<const double> moments,
                      std::span<double> out) {
  const int m = q + 2;
  DenseMatrix a(m, m);
  for (int j = 0; j < m; ++j) a(0, j) = legendre_at_left(j);
  for (int i = 0; i <= q; ++i)
    for (int j = 0; j < m; ++j) a(i + 1, j) = legendre_derivative_moment(i, j);
  const auto f = lu_factor(a);
  std::vector<double> rhs(m);
  for (std::size_t d = 0; d < dim; ++d) {
    rhs[0] = left[d];
    for (int i = 0; i <= q; ++i) rhs[i + 1] = moments[i * dim + d];
    const auto x = f.solve(rhs);
    for (int j = 0; j < m; ++j) out[j * dim + d] = x[j];
  }
}

}  // namespace

TimePolyField reconstruct(const TimePolyField& v, std::span<const double> v_init) {
  const int q = v.degree();
  const std::size_t dim = v.dim();
  if (v_init.size() != dim) throw Error(ErrorCode::DimensionMismatch, "initial value dimension");
  TimePolyField out(v.mesh(), q + 1, dim, Continuity::Continuous);
  std::vector<double> prev(v_init.begin(), v_init.end());
  std::vector<double> moments((q + 1) * dim);
  for (std::size_t n = 0; n < v.slabs(); ++n) {
    const auto vl = v.trace_left(n);
    std::fill(moments.begin(), moments.end(), 0.0);
    for (int i = 0; i <= q; ++i) {
      for (int j = 0; j <= q; ++j) axpy({moments.data() + i * dim, dim}, legendre_derivative_moment(i, j), v.coeff(n, j));
      for (std::size_t d = 0; d < dim; ++d) moments[i * dim + d] += legendre_at_left(i) * (vl[d] - prev[d]);
    }
    reconstruct_slab(q, dim, prev, moments, out.slab_coeffs(n));
    prev = v.trace_right(n);
  }
  return out;
}

TimePolyField reconstruct_smooth(const TimeMesh& mesh, int q, std::size_t dim, const TimeFunction& v,
                                 const TimeFunction& dv, std::span<const double> v_init, ProjectionOptions opts) {
  if (v_init.size() != dim) throw Error(ErrorCode::DimensionMismatch, "initial value dimension");
  const auto rule = gauss_legendre(default_points(q, opts));
  TimePolyField out(mesh, q + 1, dim, Continuity::Continuous);
  std::vector<double> prev(v_init.begin(), v_init.end());
  for (std::size_t n = 0; n < mesh.slabs(); ++n) {
    const auto moments = l2_coefficients(mesh, n, q, dim, [&](std::size_t, double t) { return dv(t); }, rule);
    // l2_coefficients carries the (2i+1)/tau normalization; undo it to get raw moments.
    std::vector<double> raw(moments.size());
    const double tau = mesh.width(n);
    for (int i = 0; i <= q; ++i)
      for (std::size_t d = 0; d < dim; ++d) raw[i * dim + d] = moments[i * dim + d] * tau / (2 * i + 1);
    const auto vl = v(mesh.left(n));
    for (int i = 0; i <= q; ++i)
      for (std::size_t d = 0; d < dim; ++d)
        raw[i * dim + d] += legendre_at_left(i) * (vl[d] - prev[d]);
    reconstruct_slab(q, dim, prev, raw, out.slab_coeffs(n));
    prev = v(mesh.right(n));
  }
  return out;
}

double weight_lambda(WeightKind kind, double tau, int q) {
  if (kind == WeightKind::Standard) return 1.0 / (2.0 * tau);
  return 1.0 / (4.0 * (2 * q + 1) * tau);
}

double weight_eval(WeightKind kind, const TimeMesh& mesh, std::size_t slab, int q, double t) {
  mesh.to_reference(slab, t);
  return 1.0 - weight_lambda(kind, mesh.width(slab), q) * (t - mesh.left(slab));
}

std::vector<double> slab_trace(const TimePolyField& v, std::size_t node, TraceSide side) {
  const std::size_t N = v.slabs();
  if (node > N || (side == TraceSide::Minus && node == 0) || (side == TraceSide::Plus && node == N))
    throw Error(ErrorCode::IndexOutOfRange, "trace at node " + std::to_string(node));
  return side == TraceSide::Minus ? v.trace_right(node - 1) : v.trace_left(node);
}

std::vector<double> jump(const TimePolyField& v, std::size_t node) {
  if (node == 0 || node >= v.slabs()) throw Error(ErrorCode::IndexOutOfRange, "jump at node " + std::to_string(node));
  auto plus = v.trace_left(node);
  const auto minus = v.trace_right(node - 1);
  for (std::size_t d = 0; d < plus.size(); ++d) plus[d] -= minus[d];
  return plus;
}

}  // namespace stfem
