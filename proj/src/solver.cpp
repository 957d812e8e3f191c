#include "phaseonly/solver.hpp"

#include <algorithm>
#include <cmath>

#include "phaseonly/error.hpp"
#include "phaseonly/linalg.hpp"

namespace phaseonly {

Json reconstruction_to_json(const ReconstructionResult& r) {
  return Json{{"signal", vector_to_json(r.signal)},
              {"ambiguity", r.ambiguity == Ambiguity::Exact ? "Exact" : "PositiveScaling"},
              {"normalization", r.normalization == Normalization::UnitNorm ? "UnitNorm" : "None"},
              {"residual", r.residual},
              {"nullity", r.nullity},
              {"diagnostics", r.diagnostics}};
}

namespace {

void require_rank(const ComplexMatrix& a, const Tolerance& tol) {
  if (!a.is_finite()) fail(ErrorCode::InvalidArgument, "non-finite matrix");
  if (!has_full_column_rank(a, tol))
    fail(ErrorCode::RankDeficientMatrix, "rank(A) < d");
}

std::vector<std::size_t> choose_row_perm(const ComplexMatrix& a, const Tolerance& tol) {
  const std::size_t m = a.rows(), d = a.cols();
  IndexSet top;
  if (is_canonical(a)) {
    top = range_set(0, d);
  } else {
    top = pivot_rows(a, tol);
    std::sort(top.begin(), top.end());
  }
  std::vector<std::size_t> perm = top;
  for (std::size_t j : complement(top, m)) perm.push_back(j);
  return perm;
}

ComplexMatrix with_identity_top(ComplexMatrix a) {
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) = i == k ? 1.0 : 0.0;
  return a;
}

double phase_residual(const ComplexVector& measured, const PhaseObservation& obs,
                      const Tolerance& tol) {
  const PhaseObservation got = phase_vector(measured, tol);
  double r = 0.0;
  for (std::size_t j = 0; j < obs.size(); ++j)
    r = std::max(r, std::abs(got.values[j] - obs.values[j]));
  return r;
}

}  // namespace

Signal AffineCanonical::map_signal(const Signal& x) const {
  Signal y = p * x;
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += shift[k];
  return y;
}

Signal AffineCanonical::unmap_signal(const Signal& x_tilde) const {
  ComplexVector rhs(x_tilde.size());
  for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = x_tilde[k] - shift[k];
  const ComplexMatrix sol = solve(p, ComplexMatrix::column(rhs));
  Signal x(rhs.size());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = sol(k, 0);
  return x;
}

LinearCanonical canonicalize_linear(const ComplexMatrix& a, const Tolerance& tol) {
  require_rank(a, tol);
  const std::size_t d = a.cols();
  LinearCanonical out;
  out.row_perm = choose_row_perm(a, tol);
  const ComplexMatrix ap = a.select_rows(out.row_perm);
  out.p = ap.select_rows(range_set(0, d));
  out.a_tilde = with_identity_top(ap * inverse(out.p));
  return out;
}

AffineCanonical canonicalize_affine(const MeasurementEnsemble& e, const Tolerance& tol) {
  if (!e.offset) fail(ErrorCode::InvalidArgument, "affine canonical form needs an offset");
  if (e.offset->size() != e.a.rows())
    fail(ErrorCode::DimensionMismatch, "offset length does not match matrix rows");
  require_rank(e.a, tol);
  const std::size_t m = e.a.rows(), d = e.a.cols();
  AffineCanonical out;
  out.row_perm = choose_row_perm(e.a, tol);
  const MeasurementEnsemble ep = e.select_rows(out.row_perm);
  out.p = ep.a.select_rows(range_set(0, d));
  out.shift.assign(ep.offset->begin(), ep.offset->begin() + static_cast<std::ptrdiff_t>(d));
  const ComplexMatrix a_tilde = with_identity_top(ep.a * inverse(out.p));
  const ComplexVector shifted = a_tilde * out.shift;
  ComplexVector b(m);
  for (std::size_t j = d; j < m; ++j) b[j] = (*ep.offset)[j] - shifted[j];
  out.ensemble = MeasurementEnsemble{a_tilde, b};
  return out;
}

RealMatrix phase_system(const ComplexMatrix& a, const PhaseObservation& obs) {
  const std::size_t m = a.rows();
  if (obs.size() != m) fail(ErrorCode::DimensionMismatch, "observation length does not match rows");
  RealMatrix u(2 * m, obs.support.size());
  for (std::size_t c = 0; c < obs.support.size(); ++c) {
    const std::size_t j = obs.support[c];
    u(j, c) = -obs.values[j].real();
    u(m + j, c) = obs.values[j].imag();
  }
  return hcat(varphi(a), u);
}

ReconstructionResult solve_linear(const ComplexMatrix& a, const PhaseObservation& obs,
                                  const Tolerance& tol) {
  if (obs.size() != a.rows())
    fail(ErrorCode::DimensionMismatch, "observation length does not match rows");
  require_rank(a, tol);
  const std::size_t d = a.cols();
  ReconstructionResult res;
  res.ambiguity = Ambiguity::PositiveScaling;
  res.normalization = Normalization::UnitNorm;
  if (obs.support.empty()) {
    res.signal.assign(d, Complex(0.0, 0.0));
    res.diagnostics.push_back("all phases are zero, so the signal is 0");
    return res;
  }

  const RealMatrix basis = nullspace(phase_system(a, obs), tol);
  res.nullity = basis.cols();
  if (res.nullity == 0)
    fail(ErrorCode::Infeasible, "phase system has only the trivial solution");
  if (res.nullity >= 2)
    fail(ErrorCode::NonUnique,
         "solution family of dimension " + std::to_string(res.nullity) + " matches the phases");

  RealVector v = basis.column(0);
  double lsum = 0.0, lmax = 0.0;
  for (std::size_t i = 2 * d; i < v.size(); ++i) {
    lsum += v[i];
    lmax = std::max(lmax, std::fabs(v[i]));
  }
  if (lsum < 0.0)
    for (double& t : v) t = -t;
  for (std::size_t i = 2 * d; i < v.size(); ++i)
    if (!(v[i] > tol.zero_entry_tol * lmax))
      fail(ErrorCode::Infeasible, "magnitude block is not strictly positive");

  Signal y = unvarphi1(v, 0, d);
  const double ny = norm2(y);
  for (Complex& z : y) z /= ny;
  res.signal = y;
  res.residual = phase_residual(a * y, obs, tol);
  if (res.residual > 1e-8) fail(ErrorCode::Infeasible, "recovered signal does not reproduce the phases");
  return res;
}

ReconstructionResult solve_affine(const MeasurementEnsemble& e, const PhaseObservation& obs,
                                  const Tolerance& tol) {
  if (!e.offset) fail(ErrorCode::InvalidArgument, "affine solve needs an offset");
  if (obs.size() != e.a.rows() || e.offset->size() != e.a.rows())
    fail(ErrorCode::DimensionMismatch, "observation or offset length does not match rows");
  require_rank(e.a, tol);
  if (offset_in_range(e.a, *e.offset, tol))
    fail(ErrorCode::OffsetInRange, "b lies in the column space of A");
  const std::size_t d = e.a.cols();

  const RealMatrix sys = phase_system(e.a, obs);
  const std::size_t rank = numerical_rank(sys, tol);
  ReconstructionResult res;
  res.ambiguity = Ambiguity::Exact;
  res.normalization = Normalization::None;
  res.nullity = sys.cols() - rank;
  if (res.nullity > 0)
    fail(ErrorCode::NonUnique,
         "solution family of dimension " + std::to_string(res.nullity) + " matches the phases");

  RealVector rhs = varphi1(*e.offset);
  for (double& t : rhs) t = -t;
  const RealVector z = lstsq(sys, rhs, tol);
  const RealVector fit = sys * z;
  double r2 = 0.0, n2 = 0.0;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    r2 += (fit[i] - rhs[i]) * (fit[i] - rhs[i]);
    n2 += rhs[i] * rhs[i];
  }
  if (std::sqrt(r2) > 1e-8 * std::max(1.0, std::sqrt(n2)))
    fail(ErrorCode::Infeasible, "phase system is inconsistent");

  double lmax = 0.0;
  for (std::size_t i = 2 * d; i < z.size(); ++i) lmax = std::max(lmax, std::fabs(z[i]));
  for (std::size_t i = 2 * d; i < z.size(); ++i)
    if (!(z[i] > tol.zero_entry_tol * lmax))
      fail(ErrorCode::Infeasible, "magnitude block is not strictly positive");

  res.signal = unvarphi1(z, 0, d);
  res.residual = phase_residual(e.measure(res.signal), obs, tol);
  if (res.residual > 1e-8) fail(ErrorCode::Infeasible, "recovered signal does not reproduce the phases");
  return res;
}

double recover_ratio(Complex phase_k, Complex phase_l, Complex phase_sum) {
  for (Complex z : {phase_k, phase_l, phase_sum})
    if (std::fabs(std::abs(z) - 1.0) > 1e-12)
      fail(ErrorCode::InvalidArgument, "ratio recovery needs unit-modulus phases");
  const double a = (phase_k / phase_sum).imag();
  const double b = (phase_l / phase_sum).imag();
  if (std::fabs(a) <= 1e-12)
    fail(ErrorCode::DegeneratePhases, "sign(x_k) = +-sign(x_l); use the rotated pair instead");
  const double r = -b / a;
  if (!(r > 0.0) || !std::isfinite(r))
    fail(ErrorCode::DegeneratePhases, "phases are inconsistent with a positive ratio");
  return r;
}

}  // namespace phaseonly
