#pragma once

#include <cstddef>

// Hot loops of the Jacobi SVD and the Gram-Schmidt row picker.
// Each table is a complete implementation; scalar is the reference.

namespace phaseonly::kernels {

struct KernelTable {
  const char* name;
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // (x, y) <- (c*x - s*y, s*x + c*y)
  void (*rotate)(double* x, double* y, std::size_t n, double c, double s);
  double (*max_abs)(const double* x, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when not compiled in or not supported by the running CPU.
const KernelTable* avx2_table();
const KernelTable* neon_table();

// Best table for this CPU, chosen once. PHASEONLY_SIMD=scalar forces the reference.
const KernelTable& active();

}  // namespace phaseonly::kernels
