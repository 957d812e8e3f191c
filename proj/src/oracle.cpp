#include "phaseonly/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "phaseonly/designs.hpp"
#include "phaseonly/discriminant.hpp"
#include "phaseonly/error.hpp"
#include "phaseonly/linalg.hpp"
#include "phaseonly/parallel.hpp"
#include "phaseonly/random.hpp"
#include "phaseonly/solver.hpp"

namespace phaseonly {

bool same_phases(const ComplexVector& u, const ComplexVector& v, double tol) {
  if (u.size() != v.size()) return false;
  const PhaseObservation pu = phase_vector(u);
  const PhaseObservation pv = phase_vector(v);
  if (pu.support != pv.support) return false;
  for (std::size_t j = 0; j < u.size(); ++j)
    if (std::abs(pu.values[j] - pv.values[j]) > tol) return false;
  return true;
}

bool positively_proportional(const Signal& y, const Signal& x, double tol) {
  if (y.size() != x.size()) return false;
  Complex inner = 0.0;
  double xx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    inner += std::conj(x[k]) * y[k];
    xx += std::norm(x[k]);
  }
  if (xx == 0.0) return norm2(y) == 0.0;
  const double t = inner.real() / xx;
  if (!(t > 0.0)) return false;
  double r2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) r2 += std::norm(y[k] - t * x[k]);
  return std::sqrt(r2) <= tol * norm2(y);
}

std::optional<Witness> counterexample_search(const ComplexMatrix& a, const Signal& x,
                                             const Tolerance& tol) {
  if (a.cols() != x.size()) fail(ErrorCode::DimensionMismatch, "signal length mismatch");
  if (!has_full_column_rank(a, tol)) fail(ErrorCode::RankDeficientMatrix, "rank(A) < d");
  if (max_abs(x) == 0.0) fail(ErrorCode::ZeroSignal, "witness search needs x != 0");
  const std::size_t d = a.cols();
  const ComplexVector ax = a * x;
  const PhaseObservation obs = phase_vector(ax, tol);
  const RealMatrix basis = nullspace(phase_system(a, obs), tol);
  if (basis.cols() <= 1) return std::nullopt;

  // The solution induced by x itself.
  RealVector vx = varphi1(x);
  double lmin = INFINITY;
  for (std::size_t j : obs.support) {
    vx.push_back(std::abs(ax[j]));
    lmin = std::min(lmin, std::abs(ax[j]));
  }
  const std::size_t n = vx.size();
  double nvx = 0.0;
  for (double t : vx) nvx += t * t;
  nvx = std::sqrt(nvx);

  RealVector w;
  double best = -1.0;
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    RealVector b = basis.column(c);
    double proj = 0.0;
    for (std::size_t i = 0; i < n; ++i) proj += b[i] * vx[i] / nvx;
    double nb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      b[i] -= proj * vx[i] / nvx;
      nb += b[i] * b[i];
    }
    if (nb > best) {
      best = nb;
      w = std::move(b);
    }
  }
  double wmax = 0.0;
  for (std::size_t i = 2 * d; i < n; ++i) wmax = std::max(wmax, std::fabs(w[i]));
  if (wmax == 0.0) wmax = std::sqrt(best);
  for (double& t : w) t /= wmax;

  double eps = 0.1 * lmin;
  RealVector v(n);
  for (int iter = 0; iter < 200; ++iter) {
    bool positive = true;
    for (std::size_t i = 0; i < n; ++i) v[i] = vx[i] + eps * w[i];
    for (std::size_t i = 2 * d; i < n; ++i) positive = positive && v[i] > 0.0;
    if (positive) break;
    eps *= 0.5;
  }

  Witness wit;
  wit.y = unvarphi1(v, 0, d);
  wit.same_phases = same_phases(a * wit.y, ax);
  wit.proportional = positively_proportional(wit.y, x);
  return wit;
}

RationalMatrix RationalMatrix::from_real(const RealMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!std::isfinite(m(i, j))) fail(ErrorCode::InvalidArgument, "non-finite entry");
      r(i, j) = mpq_class(m(i, j));
    }
  return r;
}

RationalComplexMatrix RationalComplexMatrix::from_complex(const ComplexMatrix& a) {
  RationalComplexMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      r.re(i, j) = mpq_class(a(i, j).real());
      r.im(i, j) = mpq_class(a(i, j).imag());
    }
  return r;
}

RationalMatrix RationalComplexMatrix::lift() const {
  const std::size_t m = re.rows(), n = re.cols();
  RationalMatrix out(2 * m, 2 * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = re(i, j);
      out(i, n + j) = im(i, j);
      out(m + i, j) = -im(i, j);
      out(m + i, n + j) = re(i, j);
    }
  return out;
}

std::size_t exact_rank(RationalMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (sgn(m(r, c)) != 0) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(piv, j), m(rank, j));
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (sgn(m(r, c)) == 0) continue;
      const mpq_class f = m(r, c) / m(rank, c);
      for (std::size_t j = c; j < cols; ++j) m(r, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::size_t exact_rank(const RationalComplexMatrix& m) { return exact_rank(m.lift()) / 2; }

std::size_t exact_rank(const RealMatrix& m) { return exact_rank(RationalMatrix::from_real(m)); }

Json consistency_to_json(const ConsistencyReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"seed", f.seed}, {"kind", f.kind}, {"detail", f.detail}});
  return Json{{"trials", r.trials},
              {"linear_checked", r.linear_checked},
              {"linear_recoverable", r.linear_recoverable},
              {"linear_inconsistent", r.linear_inconsistent},
              {"affine_checked", r.affine_checked},
              {"affine_recoverable", r.affine_recoverable},
              {"affine_inconsistent", r.affine_inconsistent},
              {"planted_zero_trials", r.planted_zero_trials},
              {"exact_rank_checks", r.exact_rank_checks},
              {"exact_rank_disagreements", r.exact_rank_disagreements},
              {"failures", failures}};
}

namespace {

struct TrialOutcome {
  bool linear_checked = false, linear_ok = true, linear_recoverable = false;
  bool affine_checked = false, affine_ok = true, affine_recoverable = false;
  bool planted = false;
  std::size_t exact_checks = 0, exact_bad = 0;
  std::vector<ConsistencyFailure> failures;
};

double relative_error(const Signal& got, const Signal& want) {
  double e = 0.0;
  for (std::size_t k = 0; k < want.size(); ++k) e += std::norm(got[k] - want[k]);
  return std::sqrt(e) / std::max(1.0, norm2(want));
}

Signal unit(Signal x) {
  const double n = norm2(x);
  for (Complex& z : x) z /= n;
  return x;
}

IndexSet random_subset(Rng& rng, std::size_t n, std::size_t k) {
  IndexSet all = range_set(0, n);
  for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.index(n - i)]);
  IndexSet s(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(s.begin(), s.end());
  return s;
}

void linear_trial(std::size_t d, Rng& rng, std::uint64_t seed, const Tolerance& tol,
                  TrialOutcome& out) {
  const std::size_t m = d + rng.index(d + 2);
  const ComplexMatrix a = random_gaussian(m, d, rng);
  const std::size_t variant = rng.index(4);
  Signal x = rng.complex_normal_vector(d);
  if (variant & 1u) {
    const IndexSet z = random_subset(rng, m, 1 + rng.index(d - 1));
    x = sample_kernel_signal(a.select_rows(z), rng, tol);
    out.planted = true;
  }
  if (variant & 2u) {
    const std::size_t k = rng.index(d);
    if (std::count_if(x.begin(), x.end(), [](Complex z) { return z != 0.0; }) > 1) x[k] = 0.0;
  }
  if (max_abs(x) == 0.0) return;

  out.linear_checked = true;
  const Verdict vl = verdict_linear(a, x, tol);
  const LinearCanonical canon = canonicalize_linear(a, tol);
  const Verdict vc = verdict_canonical(canon.a_tilde, canon.map_signal(x), tol);
  const bool dim_one = vl.solution_dim == 1;
  const std::optional<Witness> wit = counterexample_search(a, x, tol);
  bool solver_ok = false;
  try {
    const ReconstructionResult r = solve_linear(a, phase_vector(a * x, tol), tol);
    solver_ok = relative_error(r.signal, unit(x)) <= 1e-8;
  } catch (const Error&) {
    solver_ok = false;
  }
  out.linear_recoverable = vl.recoverable;
  const bool ok = vl.recoverable == vc.recoverable && vl.recoverable == dim_one &&
                  vl.recoverable == !wit.has_value() && (!wit || wit->valid()) &&
                  vl.recoverable == solver_ok;
  if (!ok) {
    out.linear_ok = false;
    out.failures.push_back(
        {seed, "linear",
         "d=" + std::to_string(d) + " m=" + std::to_string(m) +
             " D=" + std::to_string(vl.recoverable) + " E=" + std::to_string(vc.recoverable) +
             " dim=" + std::to_string(vl.solution_dim) + " witness=" +
             std::to_string(wit.has_value()) + " solver=" + std::to_string(solver_ok)});
  }
}

void affine_trial(std::size_t d, Rng& rng, std::uint64_t seed, const Tolerance& tol,
                  TrialOutcome& out) {
  const std::size_t m = d + 1 + rng.index(d + 2);
  const MeasurementEnsemble e = random_gaussian_affine(m, d, rng);
  const std::size_t variant = rng.index(3);
  Signal x = rng.complex_normal_vector(d);
  if (variant == 1) {
    const IndexSet z = random_subset(rng, m, 1 + rng.index(d));
    const MeasurementEnsemble ez = e.select_rows(z);
    x = sample_affine_preimage(ez.a, *ez.offset, rng, tol);
    out.planted = true;
  } else if (variant == 2) {
    x[rng.index(d)] = 0.0;
  }

  out.affine_checked = true;
  const Verdict vd = verdict_affine_D(e, x, tol);
  const AffineCanonical canon = canonicalize_affine(e, tol);
  const Verdict ve = verdict_affine_E(canon.ensemble, canon.map_signal(x), tol);
  bool solver_ok = false;
  try {
    const ReconstructionResult r = solve_affine(e, phase_vector(e.measure(x), tol), tol);
    solver_ok = relative_error(r.signal, x) <= 1e-8;
  } catch (const Error&) {
    solver_ok = false;
  }
  out.affine_recoverable = vd.recoverable;
  if (vd.recoverable != ve.recoverable || vd.recoverable != solver_ok) {
    out.affine_ok = false;
    out.failures.push_back({seed, "affine",
                            "d=" + std::to_string(d) + " m=" + std::to_string(m) +
                                " D=" + std::to_string(vd.recoverable) +
                                " E=" + std::to_string(ve.recoverable) +
                                " solver=" + std::to_string(solver_ok)});
  }
}

Complex small_gaussian_integer(Rng& rng, int radius) {
  const auto pick = [&] {
    return static_cast<double>(static_cast<int>(rng.index(2 * radius + 1)) - radius);
  };
  const double re = pick();
  return Complex(re, pick());
}

void exact_trial(std::size_t d, Rng& rng, std::uint64_t seed, const Tolerance& tol,
                 TrialOutcome& out) {
  const std::size_t m = d + rng.index(2 * d);
  ComplexMatrix a(m, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < d; ++k) a(i, k) = small_gaussian_integer(rng, 1);
  Signal x(d);
  RealVector xr(d);
  ComplexVector b(m);
  for (std::size_t k = 0; k < d; ++k) {
    x[k] = small_gaussian_integer(rng, 2);
    xr[k] = x[k].real();
  }
  for (Complex& z : b) z = small_gaussian_integer(rng, 2);
  if (xr[0] == 0.0) xr[0] = 1.0;

  std::vector<std::pair<std::string, RealMatrix>> mats;
  mats.emplace_back("D", disc_D(a, x, tol));
  mats.emplace_back("D_affine", disc_D_affine(MeasurementEnsemble{a, b}, x, tol));
  mats.emplace_back("D_real", disc_D_real(a, to_signal(xr), tol));
  mats.emplace_back("phi(A)", varphi(a));
  if (d >= 2) {
    mats.emplace_back("B", ma_matrix(xr));
    mats.emplace_back("B_f", ma_flip_matrix(xr));
  }
  for (const auto& [name, mat] : mats) {
    ++out.exact_checks;
    const std::size_t num = numerical_rank(mat, tol);
    const std::size_t ex = exact_rank(mat);
    if (num != ex) {
      ++out.exact_bad;
      out.failures.push_back({seed, "exact_rank",
                              name + ": numerical " + std::to_string(num) + " vs exact " +
                                  std::to_string(ex)});
    }
  }
}

}  // namespace

ConsistencyReport consistency_sweep(std::size_t trials, const std::vector<std::size_t>& dims,
                                    std::uint64_t seed, std::size_t threads,
                                    const Tolerance& tol) {
  if (dims.empty()) fail(ErrorCode::InvalidArgument, "consistency sweep needs dims");
  for (std::size_t d : dims)
    if (d < 2) fail(ErrorCode::InvalidArgument, "consistency sweep needs d >= 2");
  std::vector<TrialOutcome> outcomes(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const std::uint64_t trial_seed = derive_seed(seed, 0, t);
    Rng rng(trial_seed);
    const std::size_t d = dims[t % dims.size()];
    linear_trial(d, rng, trial_seed, tol, outcomes[t]);
    affine_trial(d, rng, trial_seed, tol, outcomes[t]);
    exact_trial(d, rng, trial_seed, tol, outcomes[t]);
  });

  ConsistencyReport r;
  r.trials = trials;
  for (const TrialOutcome& o : outcomes) {
    r.linear_checked += o.linear_checked;
    r.linear_inconsistent += o.linear_checked && !o.linear_ok;
    r.linear_recoverable += o.linear_checked && o.linear_recoverable;
    r.affine_checked += o.affine_checked;
    r.affine_inconsistent += o.affine_checked && !o.affine_ok;
    r.affine_recoverable += o.affine_checked && o.affine_recoverable;
    r.planted_zero_trials += o.planted;
    r.exact_rank_checks += o.exact_checks;
    r.exact_rank_disagreements += o.exact_bad;
    r.failures.insert(r.failures.end(), o.failures.begin(), o.failures.end());
  }
  return r;
}

}  // namespace phaseonly
