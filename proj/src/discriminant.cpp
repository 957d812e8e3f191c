#include "phaseonly/discriminant.hpp"

#include <cmath>

#include "phaseonly/error.hpp"
#include "phaseonly/linalg.hpp"

namespace phaseonly {

const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::LinearD: return "LinearD";
    case Criterion::CanonicalE: return "CanonicalE";
    case Criterion::RealD: return "RealD";
    case Criterion::RealE: return "RealE";
    case Criterion::AffineD: return "AffineD";
    case Criterion::AffineE: return "AffineE";
    case Criterion::MaCondition: return "MaCondition";
  }
  return "Unknown";
}

Json verdict_to_json(const Verdict& v) {
  return Json{{"criterion", criterion_name(v.criterion)},
              {"rank_achieved", v.rank_achieved},
              {"rank_required", v.rank_required},
              {"solution_dim", v.solution_dim},
              {"recoverable", v.recoverable},
              {"support_x", index_set_to_json(v.support_x)},
              {"support_meas", index_set_to_json(v.support_meas)},
              {"diagnostics", v.diagnostics}};
}

MeasurementEnsemble MeasurementEnsemble::select_rows(const IndexSet& rows) const {
  MeasurementEnsemble out{a.select_rows(rows), std::nullopt};
  if (offset) {
    ComplexVector b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) b[r] = (*offset)[rows[r]];
    out.offset = std::move(b);
  }
  return out;
}

ComplexVector MeasurementEnsemble::measure(const Signal& x) const {
  ComplexVector v = a * x;
  if (offset)
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += (*offset)[j];
  return v;
}

namespace {

double entry_scale(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s = std::max(s, std::abs(a(i, k)));
  return s;
}

void require_shape(const ComplexMatrix& a, const Signal& x) {
  if (a.cols() != x.size())
    fail(ErrorCode::DimensionMismatch, "signal length " + std::to_string(x.size()) +
                                           " does not match matrix cols " +
                                           std::to_string(a.cols()));
  if (!a.is_finite() || !is_finite(x)) fail(ErrorCode::InvalidArgument, "non-finite input");
}

void require_offset(const MeasurementEnsemble& e) {
  if (!e.offset) fail(ErrorCode::InvalidArgument, "affine criterion needs an offset b");
  if (e.offset->size() != e.a.rows())
    fail(ErrorCode::DimensionMismatch, "offset length does not match matrix rows");
  if (!is_finite(*e.offset)) fail(ErrorCode::InvalidArgument, "non-finite offset");
}

void note_borderline(const PhaseObservation& obs, Verdict& v) {
  for (std::size_t j : obs.borderline)
    v.diagnostics.push_back("measurement " + std::to_string(j) +
                            " lies within 10x of the zero threshold");
}

Verdict finish(Verdict v, std::size_t rank, std::size_t required) {
  v.rank_achieved = rank;
  v.rank_required = required;
  v.recoverable = rank == required;
  return v;
}

// [phi(A) phi1(dg(v))] with classified-zero measurements left as zero columns.
RealMatrix assemble_D(const ComplexMatrix& a, const ComplexVector& v, const PhaseObservation& obs) {
  const std::size_t m = a.rows(), d = a.cols();
  RealMatrix out = hcat(varphi(a), RealMatrix(2 * m, m));
  for (std::size_t j : obs.support) {
    out(j, 2 * d + j) = v[j].real();
    out(m + j, 2 * d + j) = -v[j].imag();
  }
  return out;
}

bool is_zero_signal(const Signal& x) { return max_abs(x) == 0.0; }

void require_real(const Signal& x) {
  const double scale = max_abs(x);
  for (const Complex& z : x)
    if (std::fabs(z.imag()) > 1e-14 * scale)
      fail(ErrorCode::NonRealSignal, "signal has a nonzero imaginary part");
}

void require_real_lifting(const ComplexMatrix& a, const Tolerance& tol) {
  const std::size_t m = a.rows(), d = a.cols();
  RealMatrix lift(2 * m, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      lift(i, k) = a(i, k).real();
      lift(m + i, k) = a(i, k).imag();
    }
  if (numerical_rank(lift, tol) != d)
    fail(ErrorCode::RankDeficientLifting, "[Re A; Im A] lacks full column rank");
}

}  // namespace

bool is_canonical(const ComplexMatrix& a) {
  const std::size_t d = a.cols();
  if (a.rows() < d) return false;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      if (std::abs(a(i, k) - Complex(i == k ? 1.0 : 0.0, 0.0)) > 1e-14) return false;
  return true;
}

bool is_canonical(const MeasurementEnsemble& e) {
  if (!is_canonical(e.a)) return false;
  if (!e.offset) return true;
  for (std::size_t i = 0; i < e.a.cols(); ++i)
    if (std::abs((*e.offset)[i]) > 1e-14) return false;
  return true;
}

bool offset_in_range(const ComplexMatrix& a, const ComplexVector& b, const Tolerance& tol) {
  const double nb = norm2(b);
  if (nb == 0.0) return true;
  const RealMatrix pa = varphi(a);
  const RealVector pb = varphi1(b);
  const RealVector z = lstsq(pa, pb, tol);
  const RealVector fit = pa * z;
  double r2 = 0.0;
  for (std::size_t i = 0; i < pb.size(); ++i) r2 += (pb[i] - fit[i]) * (pb[i] - fit[i]);
  return std::sqrt(r2) / nb <= 1e-8;
}

RealMatrix disc_D(const ComplexMatrix& a, const Signal& x, const Tolerance& tol) {
  require_shape(a, x);
  const ComplexVector v = a * x;
  return assemble_D(a, v, phase_vector(v, tol));
}

Verdict verdict_linear(const ComplexMatrix& a, const Signal& x, const Tolerance& tol) {
  require_shape(a, x);
  if (!has_full_column_rank(a, tol))
    fail(ErrorCode::RankDeficientMatrix, "rank(A) < d, so no signal is recoverable");
  const std::size_t d = a.cols();
  Verdict v;
  v.criterion = Criterion::LinearD;
  if (is_zero_signal(x)) {
    v.diagnostics.push_back("x = 0 is trivially recoverable: sign(Ay) = 0 forces y = 0");
    return finish(v, 2 * d, 2 * d);
  }
  const ComplexVector ax = a * x;
  const PhaseObservation obs = phase_vector(ax, tol);
  v.support_x = support_of(x, tol);
  v.support_meas = obs.support;
  note_borderline(obs, v);
  const std::size_t rank = numerical_rank(assemble_D(a, ax, obs), tol);
  const std::size_t n = obs.support.size();
  v.solution_dim = 2 * d + n - rank;
  return finish(v, rank, 2 * d + n - 1);
}

std::size_t solution_space_dim(const ComplexMatrix& a, const Signal& x, const Tolerance& tol) {
  require_shape(a, x);
  if (is_zero_signal(x)) fail(ErrorCode::ZeroSignal, "solution space is defined for x != 0");
  return verdict_linear(a, x, tol).solution_dim;
}

EAssembly assemble_E(const ComplexMatrix& a, const Signal& x, const Tolerance& tol) {
  require_shape(a, x);
  if (!is_canonical(a)) fail(ErrorCode::NotCanonical, "top d x d block is not the identity");
  if (is_zero_signal(x)) fail(ErrorCode::ZeroSignal, "E_A(x) needs x != 0");
  const std::size_t m = a.rows(), d = a.cols();
  EAssembly out;
  out.obs = phase_vector(a * x, tol);
  // The top block is the identity, so x_k is measurement k and shares its zero test.
  for (std::size_t k : out.obs.support)
    if (k < d) out.support_x.push_back(k);
  const std::size_t n = out.support_x.size();

  std::vector<std::vector<double>> rows;
  for (std::size_t j = d; j < m; ++j) {
    const Complex rot = std::conj(out.obs.values[j]);
    const bool zero = rot == 0.0;
    std::vector<double> sin_row(n), cos_row(n);
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t k = out.support_x[c];
      const Complex t = a(j, k) * out.obs.values[k];
      if (zero) {
        sin_row[c] = t.imag();
        cos_row[c] = t.real();
      } else {
        sin_row[c] = (t * rot).imag();
      }
    }
    rows.push_back(std::move(sin_row));
    out.row_block.push_back(j);
    if (zero) {
      rows.push_back(std::move(cos_row));
      out.row_block.push_back(j);
    }
  }
  out.e = RealMatrix(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) out.e(r, c) = rows[r][c];
  return out;
}

RealMatrix disc_E(const ComplexMatrix& a, const Signal& x, const Tolerance& tol) {
  return assemble_E(a, x, tol).e;
}

Verdict verdict_canonical(const ComplexMatrix& a, const Signal& x, const Tolerance& tol) {
  const EAssembly e = assemble_E(a, x, tol);
  Verdict v;
  v.criterion = Criterion::CanonicalE;
  v.support_x = e.support_x;
  v.support_meas = e.obs.support;
  note_borderline(e.obs, v);
  const std::size_t rank = numerical_rank(e.e, tol, entry_scale(a));
  const std::size_t n = e.support_x.size();
  v.solution_dim = n - rank;
  return finish(v, rank, n - 1);
}

RealMatrix disc_D_real(const ComplexMatrix& a, const Signal& x, const Tolerance& tol) {
  require_shape(a, x);
  require_real(x);
  const std::size_t m = a.rows(), d = a.cols();
  const ComplexVector ax = a * x;
  const PhaseObservation obs = phase_vector(ax, tol);
  RealMatrix out(2 * m, d + m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      out(i, k) = a(i, k).real();
      out(m + i, k) = a(i, k).imag();
    }
  for (std::size_t j : obs.support) {
    out(j, d + j) = ax[j].real();
    out(m + j, d + j) = ax[j].imag();
  }
  return out;
}

Verdict verdict_real_D(const ComplexMatrix& a, const Signal& x, const Tolerance& tol) {
  require_shape(a, x);
  require_real(x);
  if (is_zero_signal(x)) fail(ErrorCode::ZeroSignal, "real criterion needs x != 0");
  require_real_lifting(a, tol);
  const PhaseObservation obs = phase_vector(a * x, tol);
  Verdict v;
  v.criterion = Criterion::RealD;
  v.support_x = support_of(x, tol);
  v.support_meas = obs.support;
  note_borderline(obs, v);
  const std::size_t d = a.cols(), n = obs.support.size();
  const std::size_t rank = numerical_rank(disc_D_real(a, x, tol), tol);
  v.solution_dim = d + n - rank;
  return finish(v, rank, d + n - 1);
}

RealMatrix disc_E_real(const ComplexMatrix& a, const Signal& x, const Tolerance& tol) {
  require_shape(a, x);
  require_real(x);
  const std::size_t m = a.rows(), d = a.cols();
  const PhaseObservation obs = phase_vector(a * x, tol);
  if (obs.support.empty())
    fail(ErrorCode::AllMeasurementsZero, "every measurement is zero");
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < m; ++j) {
    const Complex rot = std::conj(obs.values[j]);
    std::vector<double> sin_row(d), cos_row(d);
    for (std::size_t k = 0; k < d; ++k) {
      if (rot == 0.0) {
        sin_row[k] = a(j, k).imag();
        cos_row[k] = a(j, k).real();
      } else {
        sin_row[k] = (a(j, k) * rot).imag();
      }
    }
    rows.push_back(std::move(sin_row));
    if (rot == 0.0) rows.push_back(std::move(cos_row));
  }
  RealMatrix out(rows.size(), d);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t k = 0; k < d; ++k) out(r, k) = rows[r][k];
  return out;
}

Verdict verdict_real_E(const ComplexMatrix& a, const Signal& x, const Tolerance& tol) {
  require_shape(a, x);
  require_real(x);
  if (is_zero_signal(x)) fail(ErrorCode::ZeroSignal, "real criterion needs x != 0");
  require_real_lifting(a, tol);
  const RealMatrix e = disc_E_real(a, x, tol);
  const PhaseObservation obs = phase_vector(a * x, tol);
  Verdict v;
  v.criterion = Criterion::RealE;
  v.support_x = support_of(x, tol);
  v.support_meas = obs.support;
  note_borderline(obs, v);
  const std::size_t d = a.cols();
  const std::size_t rank = numerical_rank(e, tol, entry_scale(a));
  v.solution_dim = d - rank;
  return finish(v, rank, d - 1);
}

namespace {

double entry(const RealVector& x, long k) {  // 1-based, zero outside [1, d]
  if (k < 1 || k > static_cast<long>(x.size())) return 0.0;
  return x[static_cast<std::size_t>(k - 1)];
}

}  // namespace

RealMatrix ma_matrix(const RealVector& x) {
  const long d = static_cast<long>(x.size());
  if (d < 2) fail(ErrorCode::InvalidArgument, "Ma's matrix needs dim >= 2");
  RealMatrix b(static_cast<std::size_t>(d - 1), static_cast<std::size_t>(d - 1));
  for (long i = 1; i < d; ++i)
    for (long k = 1; k < d; ++k) {
      const double toeplitz = i >= k ? entry(x, i - k + 1) : 0.0;
      b(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(k - 1)) =
          toeplitz - entry(x, i + k + 1);
    }
  return b;
}

RealMatrix ma_flip_matrix(const RealVector& x) {
  const long d = static_cast<long>(x.size());
  if (d < 2) fail(ErrorCode::InvalidArgument, "Ma's matrix needs dim >= 2");
  RealMatrix b(static_cast<std::size_t>(d - 1), static_cast<std::size_t>(d));
  for (long u = 1; u < d; ++u)
    for (long k = 1; k <= d; ++k)
      b(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(k - 1)) =
          entry(x, k - u) - entry(x, k + u);
  return b;
}

bool ma_condition(const RealVector& x, const Tolerance& tol) {
  return verdict_ma(x, tol).recoverable;
}

Verdict verdict_ma(const RealVector& x, const Tolerance& tol) {
  if (x.size() < 2) fail(ErrorCode::InvalidArgument, "Ma's condition needs dim >= 2");
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::fabs(v));
  if (!(std::fabs(x[0]) > tol.zero_entry_tol * scale))
    fail(ErrorCode::FirstEntryZero, "Ma's condition is defined for x_1 != 0");
  Verdict v;
  v.criterion = Criterion::MaCondition;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (std::fabs(x[k]) > tol.zero_entry_tol * scale) v.support_x.push_back(k);
  return finish(v, numerical_rank(ma_matrix(x), tol), x.size() - 1);
}

RealMatrix disc_D_affine(const MeasurementEnsemble& e, const Signal& x, const Tolerance& tol) {
  require_shape(e.a, x);
  require_offset(e);
  const ComplexVector v = e.measure(x);
  return assemble_D(e.a, v, phase_vector(v, tol));
}

Verdict verdict_affine_D(const MeasurementEnsemble& e, const Signal& x, const Tolerance& tol) {
  require_shape(e.a, x);
  require_offset(e);
  if (!has_full_column_rank(e.a, tol))
    fail(ErrorCode::RankDeficientMatrix, "rank(A) < d, so no signal is recoverable");
  if (offset_in_range(e.a, *e.offset, tol))
    fail(ErrorCode::OffsetInRange, "b lies in the column space of A");
  const ComplexVector v = e.measure(x);
  const PhaseObservation obs = phase_vector(v, tol);
  Verdict out;
  out.criterion = Criterion::AffineD;
  out.support_x = support_of(x, tol);
  out.support_meas = obs.support;
  note_borderline(obs, out);
  const std::size_t d = e.a.cols(), n = obs.support.size();
  const std::size_t rank = numerical_rank(assemble_D(e.a, v, obs), tol);
  out.solution_dim = 2 * d + n - rank;
  return finish(out, rank, 2 * d + n);
}

EAssembly assemble_E_affine(const MeasurementEnsemble& e, const Signal& x, const Tolerance& tol) {
  require_shape(e.a, x);
  require_offset(e);
  if (!is_canonical(e))
    fail(ErrorCode::NotCanonical, "ensemble is not of the form [[I, 0], [A1, b1]]");
  const std::size_t m = e.a.rows(), d = e.a.cols();
  const ComplexVector& b = *e.offset;
  EAssembly out;
  out.obs = phase_vector(e.measure(x), tol);
  // The top block is the identity, so x_k is measurement k and shares its zero test.
  for (std::size_t k : out.obs.support)
    if (k < d) out.support_x.push_back(k);
  const std::size_t n = out.support_x.size();

  std::vector<std::vector<double>> rows;
  for (std::size_t j = d; j < m; ++j) {
    const Complex rot = std::conj(out.obs.values[j]);
    const bool zero = rot == 0.0;
    std::vector<double> sin_row(n), cos_row(n);
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t k = out.support_x[c];
      const Complex t = e.a(j, k) * out.obs.values[k];
      if (zero) {
        sin_row[c] = t.imag();
        cos_row[c] = t.real();
      } else {
        sin_row[c] = (t * rot).imag();
      }
    }
    rows.push_back(std::move(sin_row));
    out.row_block.push_back(j);
    if (zero) {
      rows.push_back(std::move(cos_row));
      out.row_block.push_back(j);
      out.b_column.push_back(b[j].imag());
      out.b_column.push_back(b[j].real());
    } else {
      out.b_column.push_back((b[j] * rot).imag());
    }
  }
  out.e = RealMatrix(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) out.e(r, c) = rows[r][c];
  return out;
}

RealMatrix disc_E_affine(const MeasurementEnsemble& e, const Signal& x, const Tolerance& tol) {
  return assemble_E_affine(e, x, tol).e;
}

Verdict verdict_affine_E(const MeasurementEnsemble& e, const Signal& x, const Tolerance& tol) {
  const EAssembly asm_e = assemble_E_affine(e, x, tol);
  Verdict v;
  v.criterion = Criterion::AffineE;
  v.support_x = asm_e.support_x;
  v.support_meas = asm_e.obs.support;
  note_borderline(asm_e.obs, v);
  const std::size_t n = asm_e.support_x.size();
  const double scale = std::max(entry_scale(e.a), e.offset ? max_abs(*e.offset) : 0.0);
  const std::size_t rank = numerical_rank(asm_e.e, tol, scale);
  v.solution_dim = n - rank;
  return finish(v, rank, n);
}

RealVector real_part(const Signal& x) {
  RealVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i].real();
  return r;
}

Signal to_signal(const RealVector& x) {
  Signal s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i];
  return s;
}

}  // namespace phaseonly
