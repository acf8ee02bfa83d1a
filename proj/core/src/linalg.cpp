#include "stfem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stfem/error.hpp"

namespace stfem {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double value)
    : rows_(rows), cols_(cols), data_(rows * cols, value) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (double v : row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix sum of incompatible shapes");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }

DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matmul inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matvec size mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t br = b.rows(), bc = b.cols();
  DenseMatrix k(a.rows() * br, a.cols() * bc);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t r = 0; r < br; ++r)
        for (std::size_t l = 0; l < bc; ++l) k(i * br + r, j * bc + l) = aij * b(r, l);
    }
  return k;
}

void kron_matvec_add(const DenseMatrix& a, const DenseMatrix& b, std::span<const double> x,
                     std::span<double> y, double s) {
  const std::size_t br = b.rows(), bc = b.cols();
  if (x.size() != a.cols() * bc || y.size() != a.rows() * br)
    throw Error(ErrorCode::DimensionMismatch, "kron_matvec_add size mismatch");
  // z(j, r) = sum_l B(r,l) x(j, l), then y(i, r) += s * sum_j A(i,j) z(j, r)
  std::vector<double> z(a.cols() * br, 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t r = 0; r < br; ++r) {
      double acc = 0.0;
      for (std::size_t l = 0; l < bc; ++l) acc += b(r, l) * x[j * bc + l];
      z[j * br + r] = acc;
    }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t r = 0; r < br; ++r) y[i * br + r] += s * aij * z[j * br + r];
    }
}

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double norm_2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

LuFactors lu_factor(DenseMatrix a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "lu_factor needs a square matrix");
  const std::size_t n = a.rows();
  const double tol = 1e-14 * a.norm_inf();

  LuFactors f;
  f.perm_.resize(n);
  f.row_end_.assign(n, 0);
  f.row_begin_.assign(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    f.perm_[i] = i;
    auto r = a.row(i);
    for (std::size_t j = 0; j < n; ++j)
      if (r[j] != 0.0) {
        f.row_begin_[i] = std::min(f.row_begin_[i], j);
        f.row_end_[i] = j + 1;
      }
  }

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      if (f.row_begin_[i] > k) continue;
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (!(best > tol))
      throw Error(ErrorCode::SingularMatrix, "pivot " + std::to_string(best) + " at column " + std::to_string(k));
    if (piv != k) {
      std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(piv).begin());
      std::swap(f.perm_[k], f.perm_[piv]);
      std::swap(f.row_end_[k], f.row_end_[piv]);
      std::swap(f.row_begin_[k], f.row_begin_[piv]);
    }
    const double pivot = a(k, k);
    const std::size_t end = f.row_end_[k];
    const auto prow = a.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (f.row_begin_[i] > k) continue;
      auto r = a.row(i);
      if (r[k] == 0.0) continue;
      const double l = r[k] / pivot;
      r[k] = l;
      for (std::size_t j = k + 1; j < end; ++j) r[j] -= l * prow[j];
      f.row_end_[i] = std::max(f.row_end_[i], end);
    }
  }
  // row_begin_ now bounds the L part of each row.
  f.lu_ = std::move(a);
  return f;
}

std::vector<double> LuFactors::solve(std::span<const double> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "lu_solve right-hand side has wrong length");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[perm_[i]];
    const auto r = lu_.row(i);
    for (std::size_t j = std::min(row_begin_[i], i); j < i; ++j) s -= r[j] * x[j];
    x[i] = s;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    const auto r = lu_.row(ii);
    for (std::size_t j = ii + 1; j < row_end_[ii]; ++j) s -= r[j] * x[j];
    x[ii] = s / r[ii];
  }
  return x;
}

std::vector<double> lu_solve(const LuFactors& f, std::span<const double> b) { return f.solve(b); }

std::vector<double> lu_solve(const DenseMatrix& a, std::span<const double> b) {
  if (a.rows() != b.size()) throw Error(ErrorCode::DimensionMismatch, "lu_solve right-hand side has wrong length");
  return lu_factor(a).solve(b);
}

}  // namespace stfem
