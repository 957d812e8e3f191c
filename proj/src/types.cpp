#include "phaseonly/types.hpp"

#include <algorithm>
#include <cmath>

#include "phaseonly/error.hpp"

namespace phaseonly {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RankDeficientMatrix: return "RankDeficientMatrix";
    case ErrorCode::RankDeficientLifting: return "RankDeficientLifting";
    case ErrorCode::RankDeficientBlock: return "RankDeficientBlock";
    case ErrorCode::ZeroSignal: return "ZeroSignal";
    case ErrorCode::NonRealSignal: return "NonRealSignal";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::AllMeasurementsZero: return "AllMeasurementsZero";
    case ErrorCode::OffsetInRange: return "OffsetInRange";
    case ErrorCode::NonUnique: return "NonUnique";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::DegeneratePhases: return "DegeneratePhases";
    case ErrorCode::AnchorNotInSupport: return "AnchorNotInSupport";
    case ErrorCode::NotRecoverable: return "NotRecoverable";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::FirstEntryZero: return "FirstEntryZero";
    case ErrorCode::InvalidObservation: return "InvalidObservation";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::column(const ComplexVector& v) {
  ComplexMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

ComplexVector ComplexMatrix::row(std::size_t i) const {
  return ComplexVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                       data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

ComplexMatrix ComplexMatrix::select_rows(const IndexSet& rows) const {
  ComplexMatrix out(rows.size(), cols_);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t j = 0; j < cols_; ++j) out(r, j) = (*this)(rows[r], j);
  return out;
}

ComplexMatrix ComplexMatrix::select_cols(const IndexSet& cols) const {
  ComplexMatrix out(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t c = 0; c < cols.size(); ++c) out(i, c) = (*this)(i, cols[c]);
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool ComplexMatrix::is_finite() const { return phaseonly::is_finite(data_); }

ComplexVector ComplexMatrix::operator*(const ComplexVector& x) const {
  if (x.size() != cols_) fail(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  ComplexVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& b) const {
  if (b.rows_ != cols_) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  ComplexMatrix c(rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a * b(k, j);
    }
  return c;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& b) const {
  if (b.rows_ != rows_ || b.cols_ != cols_) fail(ErrorCode::DimensionMismatch, "sum shape mismatch");
  ComplexMatrix c = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& b) const {
  if (b.rows_ != rows_ || b.cols_ != cols_) fail(ErrorCode::DimensionMismatch, "difference shape mismatch");
  ComplexMatrix c = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

RealMatrix::RealMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.assign(rows_ * cols_, 0.0);
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::DimensionMismatch, "ragged matrix literal");
    std::size_t j = 0;
    for (double v : r) (*this)(i, j++) = v;
    ++i;
  }
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealVector RealMatrix::column(std::size_t j) const { return RealVector(col(j), col(j) + rows_); }

RealVector RealMatrix::row(std::size_t i) const {
  RealVector r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix t(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
  return t;
}

RealMatrix RealMatrix::select_rows(const IndexSet& rows) const {
  RealMatrix out(rows.size(), cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t r = 0; r < rows.size(); ++r) out(r, j) = (*this)(rows[r], j);
  return out;
}

RealMatrix RealMatrix::select_cols(const IndexSet& cols) const {
  RealMatrix out(rows_, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    std::copy(col(cols[c]), col(cols[c]) + rows_, out.col(c));
  return out;
}

double RealMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

bool RealMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

RealVector RealMatrix::operator*(const RealVector& x) const {
  if (x.size() != cols_) fail(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  RealVector y(rows_, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    const double* c = col(j);
    for (std::size_t i = 0; i < rows_; ++i) y[i] += c[i] * xj;
  }
  return y;
}

RealMatrix RealMatrix::operator*(const RealMatrix& b) const {
  if (b.rows_ != cols_) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  RealMatrix c(rows_, b.cols_);
  for (std::size_t j = 0; j < b.cols_; ++j)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double bkj = b(k, j);
      if (bkj == 0.0) continue;
      const double* a = col(k);
      double* out = c.col(j);
      for (std::size_t i = 0; i < rows_; ++i) out[i] += a[i] * bkj;
    }
  return c;
}

PhaseObservation PhaseObservation::from_values(const ComplexVector& values) {
  PhaseObservation obs;
  obs.values.resize(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    const Complex z = values[j];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(ErrorCode::InvalidObservation, "observation entry is not finite");
    const double r = std::abs(z);
    if (r == 0.0) continue;
    if (std::fabs(r - 1.0) > 1e-12)
      fail(ErrorCode::InvalidObservation,
           "observation entry " + std::to_string(j) + " is neither 0 nor unit modulus");
    obs.values[j] = z / r;
    obs.support.push_back(j);
  }
  return obs;
}

IndexSet support_of(const ComplexVector& v, const Tolerance& tol) {
  const double thr = tol.zero_entry_tol * max_abs(v);
  IndexSet s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > thr) s.push_back(i);
  return s;
}

IndexSet complement(const IndexSet& s, std::size_t n) {
  IndexSet out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (k < s.size() && s[k] == i) {
      ++k;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

IndexSet range_set(std::size_t begin, std::size_t end) {
  IndexSet s;
  for (std::size_t i = begin; i < end; ++i) s.push_back(i);
  return s;
}

double norm2(const ComplexVector& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs(const ComplexVector& v) {
  double m = 0.0;
  for (const Complex& z : v) m = std::max(m, std::abs(z));
  return m;
}

bool is_finite(const ComplexVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

}  // namespace phaseonly
