#pragma once

#include <cmath>

#include "phaseonly/types.hpp"

namespace testing {

using phaseonly::Complex;

inline bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

inline bool close(const phaseonly::ComplexVector& a, const phaseonly::ComplexVector& b,
                  double tol = 1e-12) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!close(a[i], b[i], tol)) return false;
  return true;
}

inline bool close(const phaseonly::RealMatrix& a, const phaseonly::RealMatrix& b,
                  double tol = 1e-12) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j) - b(i, j)) > tol) return false;
  return true;
}

inline const Complex I{0.0, 1.0};

}  // namespace testing
