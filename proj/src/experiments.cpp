#include "phaseonly/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <cmath>
#include <cctype>
#include <numbers>
#include <sstream>

#include "phaseonly/designs.hpp"
#include "phaseonly/discriminant.hpp"
#include "phaseonly/error.hpp"
#include "phaseonly/linalg.hpp"
#include "phaseonly/oracle.hpp"
#include "phaseonly/parallel.hpp"
#include "phaseonly/random.hpp"
#include "phaseonly/solver.hpp"

namespace phaseonly {

namespace {

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr KindName kKinds[] = {
    {ExperimentKind::Threshold, "threshold"},
    {ExperimentKind::SymmetricFourier, "symmetric_fourier"},
    {ExperimentKind::MaEquivalence, "ma_equivalence"},
    {ExperimentKind::Consistency, "consistency"},
};

const char* kind_name(ExperimentKind k) {
  for (const auto& kn : kKinds)
    if (kn.kind == k) return kn.name;
  return "threshold";
}

ExperimentKind kind_from_name(const std::string& s) {
  for (const auto& kn : kKinds)
    if (s == kn.name) return kn.kind;
  fail(ErrorCode::ParseError, "unknown experiment kind '" + s + "'");
}

long parse_long(const std::string& s, const std::string& whole) {
  if (s.empty()) fail(ErrorCode::ParseError, "bad measurement count '" + whole + "'");
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (...) {
    fail(ErrorCode::ParseError, "bad measurement count '" + whole + "'");
  }
  if (used != s.size()) fail(ErrorCode::ParseError, "bad measurement count '" + whole + "'");
  return v;
}

using Clock = std::chrono::steady_clock;

double rel_error(const Signal& got, const Signal& want) {
  double e = 0.0;
  for (std::size_t k = 0; k < want.size(); ++k) e += std::norm(got[k] - want[k]);
  return std::sqrt(e) / norm2(want);
}

double max_abs_error(const Signal& got, const Signal& want) {
  double e = 0.0;
  for (std::size_t k = 0; k < want.size(); ++k) e = std::max(e, std::abs(got[k] - want[k]));
  return e;
}

Signal unit(Signal x) {
  const double n = norm2(x);
  for (Complex& z : x) z /= n;
  return x;
}

struct TrialResult {
  bool recoverable = false;
  bool roundtrip = false;
  bool disagreement = false;
  std::size_t dim = 0;
};

// Linear: verdict + solver on (A, x). The solver is run regardless of the verdict.
TrialResult linear_trial(const ComplexMatrix& a, const Signal& x, const Tolerance& tol) {
  TrialResult r;
  try {
    const Verdict v = verdict_linear(a, x, tol);
    r.recoverable = v.recoverable;
    r.dim = v.solution_dim;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RankDeficientMatrix) throw;
    return r;
  }
  bool solved = false;
  try {
    const ReconstructionResult res = solve_linear(a, phase_vector(a * x, tol), tol);
    solved = true;
    r.roundtrip = r.recoverable && rel_error(res.signal, unit(x)) <= 1e-8;
  } catch (const Error&) {
    solved = false;
  }
  r.disagreement = solved != r.recoverable;
  return r;
}

TrialResult affine_trial(const MeasurementEnsemble& e, const Signal& x, const Tolerance& tol) {
  TrialResult r;
  try {
    const Verdict v = verdict_affine_D(e, x, tol);
    r.recoverable = v.recoverable;
    r.dim = v.solution_dim;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::RankDeficientMatrix && err.code() != ErrorCode::OffsetInRange)
      throw;
    return r;
  }
  bool solved = false;
  try {
    const ReconstructionResult res = solve_affine(e, phase_vector(e.measure(x), tol), tol);
    solved = true;
    r.roundtrip = r.recoverable && max_abs_error(res.signal, x) <= 1e-8;
  } catch (const Error&) {
    solved = false;
  }
  r.disagreement = solved != r.recoverable;
  return r;
}

CellRecord summarize(const std::string& arm, std::size_t d, std::size_t m,
                     const std::vector<TrialResult>& results) {
  CellRecord c;
  c.arm = arm;
  c.d = d;
  c.m = m;
  c.trials = results.size();
  std::size_t dims = 0;
  for (const TrialResult& t : results) {
    c.recoverable_count += t.recoverable;
    c.solver_roundtrip_count += t.roundtrip;
    c.solver_disagreements += t.disagreement;
    dims += t.dim;
  }
  c.mean_solution_dim =
      results.empty() ? 0.0 : static_cast<double>(dims) / static_cast<double>(results.size());
  return c;
}

// One frequency per cell of an even grid on (0, pi), jittered inside the middle of
// its cell. Distinct and random, but never clustered.
RealVector random_frequencies(std::size_t n, Rng& rng) {
  RealVector w(n);
  const double cell = std::numbers::pi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j)
    w[j] = cell * (static_cast<double>(j) + rng.uniform(0.1, 0.9));
  return w;
}

double seconds_since(Clock::time_point t0, bool record) {
  if (!record) return 0.0;
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::size_t resolve_count(const std::string& expr, std::size_t d) {
  std::string s;
  for (char ch : expr)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  long value = 0;
  const std::size_t pos = s.find('d');
  if (pos == std::string::npos) {
    value = parse_long(s, expr);
  } else {
    std::string coef = s.substr(0, pos);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    const long a = coef.empty() ? 1 : parse_long(coef, expr);
    const std::string tail = s.substr(pos + 1);
    long b = 0;
    if (!tail.empty()) {
      if (tail[0] != '+' && tail[0] != '-')
        fail(ErrorCode::ParseError, "bad measurement count '" + expr + "'");
      b = parse_long(tail[0] == '+' ? tail.substr(1) : tail, expr);
    }
    value = a * static_cast<long>(d) + b;
  }
  if (value < 1) fail(ErrorCode::InvalidArgument, "measurement count '" + expr + "' is < 1 for d=" + std::to_string(d));
  return static_cast<std::size_t>(value);
}

ExperimentConfig config_from_json(const Json& j) {
  try {
    ExperimentConfig c;
    c.name = j.value("name", c.name);
    c.kind = kind_from_name(j.value("kind", std::string("threshold")));
    const std::string model = j.value("model", std::string("linear"));
    if (model == "linear" || model == "Linear") c.model = Model::Linear;
    else if (model == "affine" || model == "Affine") c.model = Model::Affine;
    else fail(ErrorCode::ParseError, "unknown model '" + model + "'");
    c.dims = j.at("dims").get<std::vector<std::size_t>>();
    if (j.contains("measurement_counts"))
      for (const Json& e : j.at("measurement_counts"))
        c.measurement_counts.push_back(e.is_string() ? e.get<std::string>()
                                                     : std::to_string(e.get<long>()));
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    if (j.contains("tolerance")) {
      const Json& t = j.at("tolerance");
      c.tol.relative_rank_tol = t.value("relative_rank_tol", c.tol.relative_rank_tol);
      c.tol.zero_entry_tol = t.value("zero_entry_tol", c.tol.zero_entry_tol);
    }
    c.output = j.value("output", std::string());
    c.record_timing = j.value("record_timing", false);
    if (c.trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
    if (c.dims.empty()) fail(ErrorCode::InvalidArgument, "dims must be nonempty");
    if (c.tol.relative_rank_tol < 0 || c.tol.zero_entry_tol < 0)
      fail(ErrorCode::InvalidArgument, "tolerances must be >= 0");
    if (c.measurement_counts.empty() && c.kind != ExperimentKind::Consistency)
      fail(ErrorCode::InvalidArgument, "measurement_counts must be nonempty");
    for (std::size_t d : c.dims)
      for (const std::string& e : c.measurement_counts) resolve_count(e, d);
    return c;
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed experiment config: ") + e.what());
  }
}

Json config_to_json(const ExperimentConfig& c) {
  return Json{{"name", c.name},
              {"kind", kind_name(c.kind)},
              {"model", c.model == Model::Linear ? "linear" : "affine"},
              {"dims", c.dims},
              {"measurement_counts", c.measurement_counts},
              {"trials", c.trials},
              {"seed", c.seed},
              {"tolerance",
               {{"relative_rank_tol", c.tol.relative_rank_tol},
                {"zero_entry_tol", c.tol.zero_entry_tol}}},
              {"output", c.output},
              {"record_timing", c.record_timing}};
}

Json report_to_json(const ExperimentReport& r) {
  Json cells = Json::array();
  for (const CellRecord& c : r.cells) {
    Json j{{"d", c.d},
           {"m", c.m},
           {"trials", c.trials},
           {"recoverable_count", c.recoverable_count},
           {"solver_roundtrip_count", c.solver_roundtrip_count},
           {"solver_disagreements", c.solver_disagreements},
           {"mean_solution_dim", c.mean_solution_dim},
           {"wall_time", c.wall_time}};
    if (!c.arm.empty()) j["arm"] = c.arm;
    for (const auto& [k, v] : c.extra.items()) j[k] = v;
    cells.push_back(std::move(j));
  }
  return Json{{"toolkit", "phaseonly"},
              {"version", kToolkitVersion},
              {"config", config_to_json(r.config)},
              {"cells", cells},
              {"summary", r.summary}};
}

std::string report_to_csv(const ExperimentReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "d,m,trials,recoverable,roundtrip,mean_solution_dim,seconds\n";
  const std::string primary = r.cells.empty() ? std::string() : r.cells.front().arm;
  for (const CellRecord& c : r.cells) {
    if (c.arm != primary) continue;
    out << c.d << ',' << c.m << ',' << c.trials << ',' << c.recoverable_count << ','
        << c.solver_roundtrip_count << ',' << c.mean_solution_dim << ',' << c.wall_time << '\n';
  }
  return out.str();
}

ExperimentReport run_threshold_experiment(const ExperimentConfig& cfg, std::size_t threads) {
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t cell = 0;
  std::size_t total_rec = 0, total_rt = 0, total_dis = 0;
  for (std::size_t d : cfg.dims) {
    for (const std::string& expr : cfg.measurement_counts) {
      const std::size_t m = resolve_count(expr, d);
      const auto t0 = Clock::now();
      std::vector<TrialResult> results(cfg.trials);
      parallel_for(cfg.trials, threads, [&](std::size_t t) {
        Rng rng(derive_seed(cfg.seed, cell, t));
        if (cfg.model == Model::Linear) {
          const ComplexMatrix a = random_gaussian(m, d, rng);
          results[t] = linear_trial(a, rng.complex_normal_vector(d), cfg.tol);
        } else {
          const MeasurementEnsemble e = random_gaussian_affine(m, d, rng);
          results[t] = affine_trial(e, rng.complex_normal_vector(d), cfg.tol);
        }
      });
      CellRecord rec = summarize("", d, m, results);
      rec.wall_time = seconds_since(t0, cfg.record_timing);
      total_rec += rec.recoverable_count;
      total_rt += rec.solver_roundtrip_count;
      total_dis += rec.solver_disagreements;
      rep.cells.push_back(std::move(rec));
      ++cell;
    }
  }
  rep.summary = Json{{"recoverable", total_rec},
                     {"roundtrip", total_rt},
                     {"solver_disagreements", total_dis}};
  return rep;
}

Signal random_symmetric_signal(std::size_t d, Rng& rng) {
  const std::size_t n = 2 * d - 1;
  Signal x(n);
  x[d - 1] = rng.normal();
  for (std::size_t k = 1; k < d; ++k) {
    const Complex z = rng.complex_normal();
    x[d - 1 - k] = z;             // column of e^{ik w}
    x[d - 1 + k] = std::conj(z);  // column of e^{-ik w}
  }
  return x;
}

Signal planted_symmetric_signal(const RealVector& zero_frequencies, std::size_t d,
                                const Tolerance& tol) {
  // Real parameters (x_0, Re x_1, Im x_1, ..., Re x_{d-1}, Im x_{d-1}).
  const std::size_t p = 2 * d - 1;
  RealMatrix map(zero_frequencies.size(), p);
  for (std::size_t j = 0; j < zero_frequencies.size(); ++j) {
    map(j, 0) = 1.0;
    for (std::size_t k = 1; k < d; ++k) {
      const double w = static_cast<double>(k) * zero_frequencies[j];
      map(j, 2 * k - 1) = 2.0 * std::cos(w);
      map(j, 2 * k) = -2.0 * std::sin(w);
    }
  }
  const RealMatrix basis = nullspace(map, tol);
  if (basis.cols() == 0) fail(ErrorCode::InvalidArgument, "no symmetric signal vanishes there");
  const RealVector v = basis.column(0);
  Signal x(p);
  x[d - 1] = v[0];
  for (std::size_t k = 1; k < d; ++k) {
    const Complex z(v[2 * k - 1], v[2 * k]);
    x[d - 1 - k] = z;
    x[d - 1 + k] = std::conj(z);
  }
  return x;
}

ExperimentReport run_symmetric_fourier_experiment(const ExperimentConfig& cfg,
                                                  std::size_t threads) {
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t cell = 0;
  std::size_t violations = 0, planted_total = 0, planted_rec = 0;

  struct SymTrial {
    TrialResult sym, control;
    bool prop_applies = false;
    bool zero_free = false;
  };

  for (std::size_t d : cfg.dims) {
    const std::size_t n = 2 * d - 1;
    for (const std::string& expr : cfg.measurement_counts) {
      const std::size_t m = resolve_count(expr, d);
      const auto t0 = Clock::now();
      std::vector<SymTrial> results(cfg.trials);
      parallel_for(cfg.trials, threads, [&](std::size_t t) {
        Rng rng(derive_seed(cfg.seed, cell, t));
        const ComplexMatrix a = design_fourier_symmetric(random_frequencies(m, rng), d);
        const Signal x = random_symmetric_signal(d, rng);
        const PhaseObservation obs = phase_vector(a * x, cfg.tol);
        SymTrial& r = results[t];
        r.zero_free = obs.support.size() == m;
        r.prop_applies = m - obs.support.size() < 2 * d - 2;
        r.sym = linear_trial(a, x, cfg.tol);
        r.control = linear_trial(a, rng.complex_normal_vector(n), cfg.tol);
      });
      std::vector<TrialResult> sym, control;
      std::size_t applies = 0, viol = 0, zero_free = 0;
      for (const SymTrial& r : results) {
        sym.push_back(r.sym);
        control.push_back(r.control);
        applies += r.prop_applies;
        viol += r.prop_applies && r.sym.recoverable;
        zero_free += r.zero_free;
      }
      CellRecord rec = summarize("symmetric", d, m, sym);
      rec.wall_time = seconds_since(t0, cfg.record_timing);
      rec.extra = Json{{"zero_free_trials", zero_free},
                       {"bound_applies", applies},
                       {"bound_violations", viol}};
      violations += viol;
      rep.cells.push_back(std::move(rec));
      rep.cells.push_back(summarize("control", d, m, control));
      ++cell;
    }

    // 2d-2 planted zero measurements plus one nonzero measurement.
    const auto t0 = Clock::now();
    std::vector<TrialResult> planted(cfg.trials);
    parallel_for(cfg.trials, threads, [&](std::size_t t) {
      Rng rng(derive_seed(cfg.seed, cell, t));
      const RealVector w = random_frequencies(2 * d - 1, rng);
      const RealVector zeros(w.begin(), w.end() - 1);
      const Signal x = planted_symmetric_signal(zeros, d, cfg.tol);
      planted[t] = linear_trial(design_fourier_symmetric(w, d), x, cfg.tol);
    });
    CellRecord rec = summarize("planted", d, 2 * d - 1, planted);
    rec.wall_time = seconds_since(t0, cfg.record_timing);
    planted_total += rec.trials;
    planted_rec += rec.recoverable_count;
    rep.cells.push_back(std::move(rec));
    ++cell;
  }
  rep.summary = Json{{"bound_violations", violations},
                     {"planted_trials", planted_total},
                     {"planted_recoverable", planted_rec}};
  return rep;
}

RealVector singular_ma_signal(std::size_t d, Rng& rng) {
  if (d < 3) fail(ErrorCode::InvalidArgument, "a palindromic factor needs d >= 3");
  RealVector g(d - 2);
  for (double& t : g) t = rng.normal();
  if (g[0] == 0.0) g[0] = 1.0;
  const double c = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(2.5, 4.0);
  const double f[3] = {1.0, c, 1.0};
  RealVector x(d, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t k = 0; k < 3; ++k) x[i + k] += g[i] * f[k];
  return x;
}

ExperimentReport run_ma_equivalence_experiment(const ExperimentConfig& cfg, std::size_t threads) {
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t cell = 0;
  std::size_t agree_total = 0, disagree_total = 0, skipped_total = 0, checked_total = 0;

  struct MaTrial {
    bool skipped = false;
    bool singular = false;
    bool ma = false;
    bool real_e = false;
    std::size_t dim = 0;
  };

  for (std::size_t d : cfg.dims) {
    for (const std::string& expr : cfg.measurement_counts) {
      const std::size_t m = resolve_count(expr, d);
      const auto t0 = Clock::now();
      std::vector<MaTrial> results(cfg.trials);
      parallel_for(cfg.trials, threads, [&](std::size_t t) {
        Rng rng(derive_seed(cfg.seed, cell, t));
        MaTrial& r = results[t];
        const ComplexMatrix a = design_fourier(random_frequencies(m, rng), d);
        RealVector x(d);
        r.singular = d >= 3 && t % 4 == 3;
        if (r.singular) {
          x = singular_ma_signal(d, rng);
        } else {
          for (double& v : x) v = rng.normal();
        }
        if (x[0] == 0.0 || phase_vector(a * to_signal(x), cfg.tol).support.size() != m) {
          r.skipped = true;
          return;
        }
        try {
          const Verdict v = verdict_real_E(a, to_signal(x), cfg.tol);
          r.real_e = v.recoverable;
          r.dim = v.solution_dim;
          r.ma = ma_condition(x, cfg.tol);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::RankDeficientLifting) throw;
          r.skipped = true;
        }
      });
      CellRecord rec;
      rec.d = d;
      rec.m = m;
      rec.trials = cfg.trials;
      std::size_t agree = 0, disagree = 0, skipped = 0, singular = 0, singular_false = 0, dims = 0;
      for (const MaTrial& r : results) {
        if (r.skipped) {
          ++skipped;
          continue;
        }
        rec.recoverable_count += r.real_e;
        (r.ma == r.real_e ? agree : disagree) += 1;
        singular += r.singular;
        singular_false += r.singular && !r.ma && !r.real_e;
        dims += r.dim;
      }
      const std::size_t checked = cfg.trials - skipped;
      rec.mean_solution_dim = checked == 0 ? 0.0 : static_cast<double>(dims) / checked;
      rec.wall_time = seconds_since(t0, cfg.record_timing);
      rec.extra = Json{{"agreements", agree},
                       {"disagreements", disagree},
                       {"skipped", skipped},
                       {"singular_constructed", singular},
                       {"singular_both_false", singular_false}};
      agree_total += agree;
      disagree_total += disagree;
      skipped_total += skipped;
      checked_total += checked;
      rep.cells.push_back(std::move(rec));
      ++cell;
    }
  }
  rep.summary = Json{{"checked", checked_total},
                     {"agreements", agree_total},
                     {"disagreements", disagree_total},
                     {"skipped", skipped_total}};
  return rep;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, std::size_t threads) {
  switch (cfg.kind) {
    case ExperimentKind::Threshold: return run_threshold_experiment(cfg, threads);
    case ExperimentKind::SymmetricFourier: return run_symmetric_fourier_experiment(cfg, threads);
    case ExperimentKind::MaEquivalence: return run_ma_equivalence_experiment(cfg, threads);
    case ExperimentKind::Consistency: {
      ExperimentReport rep;
      rep.config = cfg;
      const auto t0 = Clock::now();
      const ConsistencyReport c = consistency_sweep(cfg.trials, cfg.dims, cfg.seed, threads, cfg.tol);
      rep.summary = consistency_to_json(c);
      rep.summary["wall_time"] = seconds_since(t0, cfg.record_timing);
      return rep;
    }
  }
  fail(ErrorCode::InvalidArgument, "unhandled experiment kind");
}

std::string render_svg(const Json& report) {
  try {
    const double w = 640, h = 400, left = 60, right = 20, top = 30, bottom = 50;
    std::map<std::size_t, std::vector<std::pair<double, double>>> curves;
    std::string primary;
    bool first = true;
    double mmin = INFINITY, mmax = -INFINITY;
    for (const Json& c : report.at("cells")) {
      const std::string arm = c.value("arm", std::string());
      if (first) {
        primary = arm;
        first = false;
      }
      if (arm != primary) continue;
      const double m = c.at("m").get<double>();
      const double trials = c.at("trials").get<double>();
      const double frac = trials > 0 ? c.at("recoverable_count").get<double>() / trials : 0.0;
      curves[c.at("d").get<std::size_t>()].emplace_back(m, frac);
      mmin = std::min(mmin, m);
      mmax = std::max(mmax, m);
    }
    if (curves.empty()) {
      mmin = 0;
      mmax = 1;
    }
    if (mmax == mmin) mmax = mmin + 1;
    const auto px = [&](double m) { return left + (m - mmin) / (mmax - mmin) * (w - left - right); };
    const auto py = [&](double f) { return top + (1.0 - f) * (h - top - bottom); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

    std::ostringstream s;
    s.precision(6);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const std::string title = report.at("config").value("name", std::string("experiment"));
    s << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\">" << title
      << ": recoverable fraction vs m</text>\n";
    s << "<line x1=\"" << left << "\" y1=\"" << py(0) << "\" x2=\"" << w - right << "\" y2=\""
      << py(0) << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << left << "\" y1=\"" << py(0) << "\" x2=\"" << left << "\" y2=\"" << py(1)
      << "\" stroke=\"black\"/>\n";
    for (double f : {0.0, 0.25, 0.5, 0.75, 1.0})
      s << "<text x=\"" << left - 8 << "\" y=\"" << py(f) + 4 << "\" text-anchor=\"end\">" << f
        << "</text>\n";
    for (long m = static_cast<long>(std::ceil(mmin)); m <= static_cast<long>(mmax); ++m)
      s << "<text x=\"" << px(static_cast<double>(m)) << "\" y=\"" << py(0) + 18
        << "\" text-anchor=\"middle\">" << m << "</text>\n";
    s << "<text x=\"" << w / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\">m</text>\n";
    std::size_t idx = 0;
    for (auto& [d, pts] : curves) {
      std::sort(pts.begin(), pts.end());
      const char* col = colors[idx % 8];
      s << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"2\" points=\"";
      for (const auto& [m, f] : pts) s << px(m) << ',' << py(f) << ' ';
      s << "\"/>\n";
      for (const auto& [m, f] : pts)
        s << "<circle cx=\"" << px(m) << "\" cy=\"" << py(f) << "\" r=\"3\" fill=\"" << col
          << "\"/>\n";
      s << "<text x=\"" << w - right - 60 << "\" y=\"" << top + 16 * (idx + 1) << "\" fill=\""
        << col << "\">d = " << d << "</text>\n";
      ++idx;
    }
    s << "</svg>\n";
    return s.str();
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
}

}  // namespace phaseonly
