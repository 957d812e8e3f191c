#pragma once

#include "phaseonly/types.hpp"

namespace phaseonly {

// z/|z|, or exactly 0 when |z| <= zero_entry_tol * scale.
Complex phase(Complex z, const Tolerance& tol = {}, double scale = 1.0);

// Entrywise phase with the threshold taken relative to max |v_j|.
PhaseObservation phase_vector(const ComplexVector& v, const Tolerance& tol = {});

// [[Re A, Im A], [-Im A, Re A]]
RealMatrix varphi(const ComplexMatrix& a);
// [Re A; -Im A]
RealMatrix varphi1(const ComplexMatrix& a);
RealVector varphi1(const ComplexVector& v);
// Inverse of varphi1 on vectors: first half real part, second half minus imaginary part.
ComplexVector unvarphi1(const RealVector& v, std::size_t offset, std::size_t d);

// Horizontal concatenation [a b].
RealMatrix hcat(const RealMatrix& a, const RealMatrix& b);

struct Svd {
  RealVector sigma;  // descending
  RealMatrix us;     // columns are sigma_k * u_k
  RealMatrix v;      // right singular vectors, cols x cols
};

// One-sided Jacobi (Hestenes).
Svd jacobi_svd(const RealMatrix& m);

double rank_threshold(const RealMatrix& m, double sigma_max, const Tolerance& tol);
// scale > 0 puts a floor under sigma_max, so an all-noise matrix built from data of
// that magnitude gets rank 0.
std::size_t numerical_rank(const RealMatrix& m, const Tolerance& tol = {}, double scale = 0.0);
std::size_t numerical_rank(const Svd& svd, const RealMatrix& m, const Tolerance& tol = {},
                           double scale = 0.0);

// Orthonormal basis of the right nullspace, one vector per column.
RealMatrix nullspace(const RealMatrix& m, const Tolerance& tol = {});

// Minimum-norm least-squares solution of m z = b.
RealVector lstsq(const RealMatrix& m, const RealVector& b, const Tolerance& tol = {});

// Full column rank test on the real lifting: rank(varphi(A)) == 2 cols.
bool has_full_column_rank(const ComplexMatrix& a, const Tolerance& tol = {});

// Gaussian elimination with partial pivoting; throws RankDeficientMatrix when singular.
ComplexMatrix inverse(const ComplexMatrix& a);
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

// Greedy partial pivoting on rows: returns cols() row indices whose block is invertible,
// in pivot order. Throws RankDeficientMatrix if no such block exists.
IndexSet pivot_rows(const ComplexMatrix& a, const Tolerance& tol = {});

}  // namespace phaseonly
