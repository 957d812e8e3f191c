// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "phaseonly/designs.hpp"
#include "phaseonly/discriminant.hpp"
#include "phaseonly/error.hpp"
#include "phaseonly/experiments.hpp"
#include "phaseonly/linalg.hpp"
#include "phaseonly/oracle.hpp"
#include "phaseonly/selection.hpp"
#include "phaseonly/solver.hpp"

using namespace phaseonly;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

Signal unit(Signal x) {
  const double n = norm2(x);
  if (n == 0.0) return x;
  for (Complex& z : x) z /= n;
  return x;
}

double max_diff(const RealMatrix& a, const RealMatrix& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e = std::max(e, std::abs(a(i, j) - b(i, j)));
  return e;
}

double max_diff(const ComplexVector& a, const ComplexVector& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

std::vector<Signal> corpus(std::size_t d) {
  const Complex vals[] = {0.0, 1.0, -1.0, Complex(0, 1), Complex(0, -1), Complex(1, 1)};
  std::vector<Signal> out;
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= 6;
  for (std::size_t code = 0; code < total; ++code) {
    Signal x(d);
    std::size_t c = code;
    for (std::size_t k = 0; k < d; ++k, c /= 6) x[k] = vals[c % 6];
    out.push_back(std::move(x));
  }
  return out;
}

// Rational-entry matrices met along the way; checked against exact elimination at the end.
std::vector<RealMatrix> g_rational;

Outcome varphi_algebra() {
  double worst = 0.0;
  std::size_t rank_bad = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(derive_seed(101, 0, s));
    const std::size_t m = 1 + rng.index(6), d = 1 + rng.index(5), n = 1 + rng.index(5);
    const ComplexMatrix a = random_gaussian(m, d, rng);
    const ComplexMatrix b = random_gaussian(d, n, rng);
    worst = std::max(worst, max_diff(varphi(a * b), varphi(a) * varphi(b)));
    worst = std::max(worst, max_diff(varphi1(a * b), varphi(a) * varphi1(b)));
    // Rank r by construction: (m x r)(r x d).
    const std::size_t r = 1 + rng.index(std::min(m, d));
    const ComplexMatrix low = random_gaussian(m, r, rng) * random_gaussian(r, d, rng);
    if (numerical_rank(varphi(low)) != 2 * r) ++rank_bad;
    // Small Gaussian-integer matrices: compare against exact complex rank.
    ComplexMatrix z(m, d);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < d; ++k)
        z(i, k) = Complex(static_cast<double>(rng.index(3)) - 1.0, static_cast<double>(rng.index(3)) - 1.0);
    if (numerical_rank(varphi(z)) != 2 * exact_rank(RationalComplexMatrix::from_complex(z))) ++rank_bad;
    g_rational.push_back(varphi(z));
  }
  std::ostringstream os;
  os << "200 matrices, max entry error " << worst << ", rank mismatches " << rank_bad;
  return {worst <= 1e-12 && rank_bad == 0, os.str()};
}

Outcome criterion_equivalence() {
  const ConsistencyReport r = consistency_sweep(500, {2, 3, 4, 5}, 2024);
  std::ostringstream os;
  os << r.trials << " trials, " << r.linear_recoverable << "/" << r.linear_checked
     << " linear recoverable, " << r.planted_zero_trials << " with planted zeros, "
     << r.inconsistencies() << " inconsistencies";
  return {r.inconsistencies() == 0, os.str()};
}

Outcome threshold(Model model) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Threshold;
  cfg.model = model;
  cfg.dims = {2, 3, 4, 5};
  cfg.measurement_counts =
      model == Model::Linear ? std::vector<std::string>{"2d-2", "2d-1"} : std::vector<std::string>{"2d-1", "2d"};
  cfg.trials = 200;
  cfg.seed = model == Model::Linear ? 31 : 37;
  const ExperimentReport rep = run_experiment(cfg);
  bool ok = true;
  std::ostringstream os;
  for (const CellRecord& c : rep.cells) {
    const std::size_t top = model == Model::Linear ? 2 * c.d - 1 : 2 * c.d;
    const std::size_t want = c.m == top ? c.trials : 0;
    ok = ok && c.recoverable_count == want && c.solver_roundtrip_count == c.recoverable_count &&
         c.solver_disagreements == 0;
    os << "d=" << c.d << " m=" << c.m << ":" << c.recoverable_count << "/" << c.trials
       << (c.solver_roundtrip_count == c.recoverable_count ? "" : "(round trip short)") << " ";
  }
  return {ok, os.str()};
}

Outcome all_signal_designs() {
  std::size_t total = 0, failures = 0;
  for (std::size_t d = 1; d <= 3; ++d) {
    const ComplexMatrix pw = design_pairwise(d);
    const MeasurementEnsemble a3 = design_affine_3d(d);
    for (const Signal& x : corpus(d)) {
      total += 2;
      try {
        const ReconstructionResult r = solve_linear(pw, phase_vector(pw * x));
        const bool rec = max_abs(x) == 0.0 || verdict_linear(pw, x).recoverable;
        if (!rec || max_diff(r.signal, unit(x)) > 1e-8) ++failures;
      } catch (const Error&) {
        ++failures;
      }
      try {
        const ReconstructionResult r = solve_affine(a3, phase_vector(a3.measure(x)));
        if (!verdict_affine_D(a3, x).recoverable || max_diff(r.signal, x) > 1e-8) ++failures;
      } catch (const Error&) {
        ++failures;
      }
      if (d <= 2) {
        if (max_abs(x) != 0.0) g_rational.push_back(disc_D(pw, x));
        g_rational.push_back(disc_D_affine(a3, x));
      }
    }
  }
  std::ostringstream os;
  os << total << " corpus reconstructions (pairwise and affine 3d, d<=3), " << failures
     << " failures";
  return {failures == 0, os.str()};
}

Outcome ma_equivalence() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::MaEquivalence;
  cfg.dims = {3, 4, 5, 6, 7, 8};
  cfg.measurement_counts = {"d-1", "2d"};
  cfg.trials = 500;
  cfg.seed = 43;
  const ExperimentReport rep = run_experiment(cfg);
  std::size_t singular = 0, singular_false = 0;
  for (const CellRecord& c : rep.cells) {
    singular += c.extra.at("singular_constructed").get<std::size_t>();
    singular_false += c.extra.at("singular_both_false").get<std::size_t>();
  }
  for (std::size_t d = 3; d <= 8; ++d) {
    RealVector x(d);
    for (std::size_t k = 0; k < d; ++k) x[k] = static_cast<double>((k * 7 + 3) % 5) - 2.0;
    x[0] = 1.0;
    g_rational.push_back(ma_matrix(x));
    g_rational.push_back(ma_flip_matrix(x));
  }
  const std::size_t dis = rep.summary.at("disagreements").get<std::size_t>();
  std::ostringstream os;
  os << rep.summary.at("checked") << " trials checked, " << dis
     << " disagreements, " << rep.summary.at("skipped") << " skipped, " << singular_false << "/"
     << singular << " singular constructions false on both sides";
  return {dis == 0 && singular_false == singular && singular > 0, os.str()};
}

Outcome symmetric_fourier() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::SymmetricFourier;
  cfg.dims = {2, 3, 4};
  cfg.measurement_counts = {"2d+1", "4d-2"};
  cfg.trials = 200;
  cfg.seed = 47;
  const ExperimentReport rep = run_experiment(cfg);
  std::size_t sym_rec = 0, zero_free = 0, planted = 0, planted_rec = 0, violations = 0;
  for (const CellRecord& c : rep.cells) {
    if (c.arm == "symmetric") {
      sym_rec += c.recoverable_count;
      zero_free += c.extra.at("zero_free_trials").get<std::size_t>();
      violations += c.extra.at("bound_violations").get<std::size_t>();
    } else if (c.arm == "planted") {
      planted += c.trials;
      planted_rec += c.recoverable_count;
    }
  }
  std::ostringstream os;
  os << sym_rec << " recoverable among symmetric instances (" << zero_free
     << " with no zero measurement), planted " << planted_rec << "/" << planted;
  return {sym_rec == 0 && violations == 0 && zero_free >= 200 && planted_rec == planted, os.str()};
}

bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Outcome selection() {
  std::size_t runs = 0, bad = 0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    Rng rng(derive_seed(53, 0, s));
    const std::size_t d = 2 + s % 4;
    try {
      if (s % 3 == 2) {
        const MeasurementEnsemble e = random_gaussian_affine(2 * d + rng.index(d + 1), d, rng);
        const Signal x = rng.complex_normal_vector(d);
        const SelectionResult r = select_rows_affine(e, x);
        const bool ok = r.verified && r.selected.size() == 2 * d &&
                        verdict_affine_D(e.select_rows(r.selected), x).recoverable;
        bad += !ok;
      } else {
        const ComplexMatrix a = random_gaussian(2 * d - 1 + rng.index(d + 1), d, rng);
        const Signal x = rng.complex_normal_vector(d);
        const SelectionResult r = select_rows_linear(a, x);
        const bool ok = r.verified && r.selected.size() == 2 * d - 1 &&
                        verdict_linear(a.select_rows(r.selected), x).recoverable;
        bad += !ok;
      }
    } catch (const Error&) {
      ++bad;
    }
    ++runs;
  }
  std::size_t subsets = 0, subset_rec = 0;
  for (std::size_t d = 2; d <= 3; ++d) {
    for (std::uint64_t s = 0; s < 50; ++s) {
      Rng rng(derive_seed(59, d, s));
      const ComplexMatrix a = random_gaussian(2 * d - 1, d, rng);
      const MeasurementEnsemble e = random_gaussian_affine(2 * d, d, rng);
      const Signal x = rng.complex_normal_vector(d);
      std::vector<std::size_t> idx(2 * d - 2);
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      do {
        ++subsets;
        const ComplexMatrix sub = a.select_rows(idx);
        subset_rec += has_full_column_rank(sub) && verdict_linear(sub, x).recoverable;
      } while (next_subset(idx, 2 * d - 1));
      std::vector<std::size_t> jdx(2 * d - 1);
      for (std::size_t i = 0; i < jdx.size(); ++i) jdx[i] = i;
      do {
        ++subsets;
        const MeasurementEnsemble sub = e.select_rows(jdx);
        subset_rec += has_full_column_rank(sub.a) && !offset_in_range(sub.a, *sub.offset) &&
                      verdict_affine_D(sub, x).recoverable;
      } while (next_subset(jdx, 2 * d));
    }
  }
  std::ostringstream os;
  os << runs - bad << "/" << runs << " selections re-verify; " << subset_rec << " recoverable among "
     << subsets << " one-row-short subsets (d<=3)";
  return {bad == 0 && subset_rec == 0, os.str()};
}

Outcome lower_bound_witness() {
  double worst = 0.0;
  std::size_t still_recoverable = 0, n = 0;
  for (std::size_t d = 2; d <= 4; ++d) {
    for (std::uint64_t s = 0; s < 100; ++s, ++n) {
      Rng rng(derive_seed(61, d, s));
      const ComplexMatrix a = canonicalize_linear(random_gaussian(2 * d - 1, d, rng)).a_tilde;
      Signal x(d);
      for (std::size_t k = 0; k < d; ++k)
        x[k] = std::polar(rng.uniform(0.5, 2.0), -std::arg(a(d, k)));
      const EAssembly e = assemble_E(a, x);
      for (std::size_t c = 0; c < e.e.cols(); ++c) worst = std::max(worst, std::abs(e.e(0, c)));
      still_recoverable += verdict_canonical(a, x).recoverable;
    }
  }
  std::ostringstream os;
  os << n << " canonical matrices, max |first row of E| " << worst << ", " << still_recoverable
     << " recoverable";
  return {worst <= 1e-10 && still_recoverable == 0, os.str()};
}

Outcome exact_rank_referee() {
  const ConsistencyReport r = consistency_sweep(200, {2, 3, 4}, 67);
  std::size_t bad = r.exact_rank_disagreements;
  for (const RealMatrix& m : g_rational) bad += exact_rank(m) != numerical_rank(m);
  std::ostringstream os;
  os << g_rational.size() + r.exact_rank_checks << " rational matrices, " << bad
     << " disagreements";
  return {bad == 0, os.str()};
}

Outcome determinism() {
  std::vector<ExperimentConfig> cfgs(4);
  cfgs[0].kind = ExperimentKind::Threshold;
  cfgs[0].measurement_counts = {"2d-2", "2d-1", "2d"};
  cfgs[1].kind = ExperimentKind::Threshold;
  cfgs[1].model = Model::Affine;
  cfgs[1].measurement_counts = {"2d-1", "2d"};
  cfgs[2].kind = ExperimentKind::SymmetricFourier;
  cfgs[2].measurement_counts = {"2d+1"};
  cfgs[3].kind = ExperimentKind::MaEquivalence;
  cfgs[3].measurement_counts = {"d-1"};
  std::size_t mismatches = 0;
  for (ExperimentConfig& c : cfgs) {
    c.dims = {2, 3, 4};
    if (c.kind == ExperimentKind::MaEquivalence) c.dims = {3, 5};
    c.trials = 60;
    c.seed = 71;
    const std::string ref = report_to_json(run_experiment(c, 1)).dump(2);
    for (std::size_t t : {2u, 3u, 8u})
      mismatches += report_to_json(run_experiment(c, t)).dump(2) != ref;
    mismatches += report_to_json(run_experiment(c, 1)).dump(2) != ref;
  }
  std::ostringstream os;
  os << cfgs.size() << " configs at 1/2/3/8 threads plus a repeat, " << mismatches
     << " byte mismatches";
  return {mismatches == 0, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;  // 0 means no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"varphi-algebra", 5, varphi_algebra},
      {"criterion-equivalence", 60, criterion_equivalence},
      {"linear-threshold", 120, [] { return threshold(Model::Linear); }},
      {"affine-threshold", 120, [] { return threshold(Model::Affine); }},
      {"all-signal-designs", 0, all_signal_designs},
      {"ma-equivalence", 30, ma_equivalence},
      {"symmetric-fourier", 0, symmetric_fourier},
      {"row-selection", 0, selection},
      {"lower-bound-witness", 0, lower_bound_witness},
      {"exact-rank-referee", 0, exact_rank_referee},
      {"determinism", 0, determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += " [over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget]";
    }
    std::printf("%s  %-22s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
