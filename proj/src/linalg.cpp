#include "phaseonly/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "phaseonly/error.hpp"
#include "phaseonly/kernels.hpp"

namespace phaseonly {

Complex phase(Complex z, const Tolerance& tol, double scale) {
  const double r = std::abs(z);
  if (!(r > tol.zero_entry_tol * scale)) return Complex(0.0, 0.0);
  return z / r;
}

PhaseObservation phase_vector(const ComplexVector& v, const Tolerance& tol) {
  PhaseObservation obs;
  obs.values.resize(v.size());
  const double scale = max_abs(v);
  const double thr = tol.zero_entry_tol * scale;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double r = std::abs(v[j]);
    if (r > thr) {
      obs.values[j] = v[j] / r;
      obs.support.push_back(j);
    }
    if (r != 0.0 && r >= 0.1 * thr && r <= 10.0 * thr) obs.borderline.push_back(j);
  }
  return obs;
}

RealMatrix varphi(const ComplexMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  RealMatrix out(2 * m, 2 * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = a(i, j);
      out(i, j) = z.real();
      out(i, n + j) = z.imag();
      out(m + i, j) = -z.imag();
      out(m + i, n + j) = z.real();
    }
  return out;
}

RealMatrix varphi1(const ComplexMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  RealMatrix out(2 * m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = a(i, j).real();
      out(m + i, j) = -a(i, j).imag();
    }
  return out;
}

RealVector varphi1(const ComplexVector& v) {
  const std::size_t m = v.size();
  RealVector out(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = v[i].real();
    out[m + i] = -v[i].imag();
  }
  return out;
}

ComplexVector unvarphi1(const RealVector& v, std::size_t offset, std::size_t d) {
  ComplexVector x(d);
  for (std::size_t k = 0; k < d; ++k) x[k] = Complex(v[offset + k], -v[offset + d + k]);
  return x;
}

RealMatrix hcat(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows()) fail(ErrorCode::DimensionMismatch, "hcat row mismatch");
  RealMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) std::copy(a.col(j), a.col(j) + a.rows(), out.col(j));
  for (std::size_t j = 0; j < b.cols(); ++j)
    std::copy(b.col(j), b.col(j) + b.rows(), out.col(a.cols() + j));
  return out;
}

Svd jacobi_svd(const RealMatrix& m) {
  const auto& k = kernels::active();
  const std::size_t r = m.rows(), c = m.cols();
  RealMatrix g = m;
  RealMatrix v = RealMatrix::identity(c);
  const double eps = std::numeric_limits<double>::epsilon();
  const double tol = static_cast<double>(std::max<std::size_t>(r, 1)) * eps;

  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < c; ++p) {
      for (std::size_t q = p + 1; q < c; ++q) {
        const double alpha = k.dot(g.col(p), g.col(p), r);
        const double beta = k.dot(g.col(q), g.col(q), r);
        const double gamma = k.dot(g.col(p), g.col(q), r);
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::fabs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::hypot(1.0, zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        k.rotate(g.col(p), g.col(q), r, cs, sn);
        k.rotate(v.col(p), v.col(q), c, cs, sn);
      }
    }
    if (!rotated) break;
  }

  RealVector norms(c);
  for (std::size_t j = 0; j < c; ++j) norms[j] = std::sqrt(k.dot(g.col(j), g.col(j), r));
  std::vector<std::size_t> order(c);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

  Svd out;
  out.sigma.resize(c);
  out.us = RealMatrix(r, c);
  out.v = RealMatrix(c, c);
  for (std::size_t j = 0; j < c; ++j) {
    out.sigma[j] = norms[order[j]];
    std::copy(g.col(order[j]), g.col(order[j]) + r, out.us.col(j));
    std::copy(v.col(order[j]), v.col(order[j]) + c, out.v.col(j));
  }
  return out;
}

double rank_threshold(const RealMatrix& m, double sigma_max, const Tolerance& tol) {
  return tol.relative_rank_tol * static_cast<double>(std::max(m.rows(), m.cols())) * sigma_max;
}

std::size_t numerical_rank(const Svd& svd, const RealMatrix& m, const Tolerance& tol,
                           double scale) {
  if (svd.sigma.empty() || svd.sigma.front() == 0.0) return 0;
  const double thr = rank_threshold(m, std::max(svd.sigma.front(), scale), tol);
  return static_cast<std::size_t>(
      std::count_if(svd.sigma.begin(), svd.sigma.end(), [thr](double s) { return s > thr; }));
}

std::size_t numerical_rank(const RealMatrix& m, const Tolerance& tol, double scale) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return numerical_rank(jacobi_svd(m), m, tol, scale);
}

RealMatrix nullspace(const RealMatrix& m, const Tolerance& tol) {
  const std::size_t c = m.cols();
  if (m.rows() == 0) return RealMatrix::identity(c);
  const Svd svd = jacobi_svd(m);
  const std::size_t rank = numerical_rank(svd, m, tol);
  RealMatrix basis(c, c - rank);
  for (std::size_t j = rank; j < c; ++j)
    std::copy(svd.v.col(j), svd.v.col(j) + c, basis.col(j - rank));
  return basis;
}

RealVector lstsq(const RealMatrix& m, const RealVector& b, const Tolerance& tol) {
  if (b.size() != m.rows()) fail(ErrorCode::DimensionMismatch, "lstsq right-hand side length");
  const auto& k = kernels::active();
  RealVector z(m.cols(), 0.0);
  if (m.rows() == 0 || m.cols() == 0) return z;
  const Svd svd = jacobi_svd(m);
  const std::size_t rank = numerical_rank(svd, m, tol);
  for (std::size_t j = 0; j < rank; ++j) {
    const double s2 = svd.sigma[j] * svd.sigma[j];
    const double coef = k.dot(svd.us.col(j), b.data(), m.rows()) / s2;
    k.axpy(coef, svd.v.col(j), z.data(), m.cols());
  }
  return z;
}

bool has_full_column_rank(const ComplexMatrix& a, const Tolerance& tol) {
  if (a.rows() < a.cols()) return false;
  return numerical_rank(varphi(a), tol) == 2 * a.cols();
}

namespace {

double pivot_floor(const ComplexMatrix& a) {
  double scale = 0.0;
  for (const Complex& z : a.data()) scale = std::max(scale, std::abs(z));
  return 1e-13 * static_cast<double>(std::max<std::size_t>(a.cols(), 1)) * scale;
}

}  // namespace

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) fail(ErrorCode::DimensionMismatch, "solve needs square system");
  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  const double floor = pivot_floor(a);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (!(std::abs(lu(piv, k)) > floor)) fail(ErrorCode::RankDeficientMatrix, "singular block");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) / lu(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      Complex s = x(kk, j);
      for (std::size_t c = kk + 1; c < n; ++c) s -= lu(kk, c) * x(c, j);
      x(kk, j) = s / lu(kk, kk);
    }
  }
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return solve(a, ComplexMatrix::identity(a.rows()));
}

IndexSet pivot_rows(const ComplexMatrix& a, const Tolerance& tol) {
  (void)tol;
  const std::size_t m = a.rows(), d = a.cols();
  if (m < d) fail(ErrorCode::RankDeficientMatrix, "fewer rows than columns");
  ComplexMatrix w = a;
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  const double floor = pivot_floor(a);
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < m; ++i)
      if (std::abs(w(perm[i], k)) > std::abs(w(perm[piv], k))) piv = i;
    if (!(std::abs(w(perm[piv], k)) > floor))
      fail(ErrorCode::RankDeficientMatrix, "no invertible row block");
    std::swap(perm[k], perm[piv]);
    const std::size_t pr = perm[k];
    for (std::size_t i = k + 1; i < m; ++i) {
      const std::size_t r = perm[i];
      const Complex f = w(r, k) / w(pr, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < d; ++j) w(r, j) -= f * w(pr, j);
    }
  }
  return IndexSet(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(d));
}

}  // namespace phaseonly
