#ifndef STFEM_LINALG_HPP
#define STFEM_LINALG_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace stfem {

// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double value = 0.0);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  const std::vector<double>& data() const noexcept { return data_; }

  DenseMatrix transposed() const;
  double norm_inf() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x);

// kron(A,B)[(i*Br + k),(j*Bc + l)] = A(i,j) * B(k,l)
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

// y += s * kron(A,B) x without forming the product.
void kron_matvec_add(const DenseMatrix& a, const DenseMatrix& b, std::span<const double> x,
                     std::span<double> y, double s = 1.0);

double norm_inf(std::span<const double> x);
double norm_2(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

// Partial-pivoting LU, PA = LU stored in place. Row extents are tracked so that
// banded inputs factor without touching structural zeros.
class LuFactors {
 public:
  std::size_t size() const noexcept { return lu_.rows(); }
  std::vector<double> solve(std::span<const double> b) const;

 private:
  friend LuFactors lu_factor(DenseMatrix a);
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  std::vector<std::size_t> row_end_;
  std::vector<std::size_t> row_begin_;
};

LuFactors lu_factor(DenseMatrix a);
std::vector<double> lu_solve(const LuFactors& f, std::span<const double> b);
std::vector<double> lu_solve(const DenseMatrix& a, std::span<const double> b);

}  // namespace stfem

#endif
