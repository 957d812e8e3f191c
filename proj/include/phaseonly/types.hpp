#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace phaseonly {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using Signal = ComplexVector;
using RealVector = std::vector<double>;

// Sorted, strictly increasing, 0-based.
using IndexSet = std::vector<std::size_t>;

struct Tolerance {
  double relative_rank_tol = 1e-10;
  double zero_entry_tol = 1e-12;
};

// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix column(const ComplexVector& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<Complex>& data() const noexcept { return data_; }

  ComplexVector row(std::size_t i) const;
  ComplexMatrix select_rows(const IndexSet& rows) const;
  ComplexMatrix select_cols(const IndexSet& cols) const;
  ComplexMatrix transpose() const;
  bool is_finite() const;

  ComplexVector operator*(const ComplexVector& x) const;
  ComplexMatrix operator*(const ComplexMatrix& b) const;
  ComplexMatrix operator+(const ComplexMatrix& b) const;
  ComplexMatrix operator-(const ComplexMatrix& b) const;

  bool operator==(const ComplexMatrix& b) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// Dense real matrix, column-major so the Jacobi sweeps stream whole columns.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  RealMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static RealMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  double* col(std::size_t j) { return data_.data() + j * rows_; }
  const double* col(std::size_t j) const { return data_.data() + j * rows_; }

  RealVector column(std::size_t j) const;
  RealVector row(std::size_t i) const;
  RealMatrix transpose() const;
  RealMatrix select_rows(const IndexSet& rows) const;
  RealMatrix select_cols(const IndexSet& cols) const;
  double max_abs() const;
  bool is_finite() const;

  RealVector operator*(const RealVector& x) const;
  RealMatrix operator*(const RealMatrix& b) const;

  bool operator==(const RealMatrix& b) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// sign(v) with its support; values are 0 or unit modulus.
struct PhaseObservation {
  ComplexVector values;
  IndexSet support;
  // Entries whose modulus sat within a factor 10 of the zero threshold.
  IndexSet borderline;

  std::size_t size() const noexcept { return values.size(); }

  // Accepts already-computed phases; nonzero entries must be unit modulus to 1e-12.
  static PhaseObservation from_values(const ComplexVector& values);
};

IndexSet support_of(const ComplexVector& v, const Tolerance& tol = {});
IndexSet complement(const IndexSet& s, std::size_t n);
IndexSet range_set(std::size_t begin, std::size_t end);
double norm2(const ComplexVector& v);
double max_abs(const ComplexVector& v);
bool is_finite(const ComplexVector& v);

}  // namespace phaseonly
