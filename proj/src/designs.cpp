#include "phaseonly/designs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phaseonly/error.hpp"
#include "phaseonly/linalg.hpp"

namespace phaseonly {

namespace {

constexpr Complex kI(0.0, 1.0);

struct KindName {
  DesignKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {DesignKind::Pairwise, "Pairwise"},
    {DesignKind::Adaptive, "Adaptive"},
    {DesignKind::GenericStack, "GenericStack"},
    {DesignKind::Fourier, "Fourier"},
    {DesignKind::FourierSymmetric, "FourierSymmetric"},
    {DesignKind::Affine3d, "Affine3d"},
    {DesignKind::AffineAnchor, "AffineAnchor"},
    {DesignKind::Gaussian, "Gaussian"},
};

}  // namespace

const char* design_kind_name(DesignKind k) {
  for (const auto& kn : kKindNames)
    if (kn.kind == k) return kn.name;
  return "Unknown";
}

DesignKind design_kind_from_name(const std::string& name) {
  for (const auto& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  fail(ErrorCode::ParseError, "unknown design kind '" + name + "'");
}

Json design_spec_to_json(const DesignSpec& s) {
  Json j{{"kind", design_kind_name(s.kind)}, {"d", s.d}};
  switch (s.kind) {
    case DesignKind::GenericStack:
    case DesignKind::AffineAnchor:
      j["m"] = s.m;
      break;
    case DesignKind::Fourier:
    case DesignKind::FourierSymmetric:
      j["frequencies"] = s.frequencies;
      break;
    case DesignKind::Gaussian:
      j["m"] = s.m;
      j["seed"] = s.seed;
      j["affine"] = s.affine;
      break;
    case DesignKind::Adaptive:
      if (s.signal) j["signal"] = vector_to_json(*s.signal);
      j["anchor"] = s.anchor;
      break;
    default:
      break;
  }
  return j;
}

DesignSpec design_spec_from_json(const Json& j) {
  DesignSpec s;
  try {
    s.kind = design_kind_from_name(j.at("kind").get<std::string>());
    s.d = j.value("d", std::size_t{0});
    s.m = j.value("m", std::size_t{0});
    s.seed = j.value("seed", std::uint64_t{0});
    s.affine = j.value("affine", false);
    s.anchor = j.value("anchor", std::size_t{0});
    if (j.contains("frequencies")) s.frequencies = j.at("frequencies").get<RealVector>();
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed design spec: ") + e.what());
  }
  if (j.contains("signal")) {
    s.signal = vector_from_json(j.at("signal"));
    if (s.d == 0) s.d = s.signal->size();
  }
  return s;
}

MeasurementEnsemble build_design(const DesignSpec& s) {
  switch (s.kind) {
    case DesignKind::Pairwise: return {design_pairwise(s.d), std::nullopt};
    case DesignKind::GenericStack: return {design_generic_stack(s.d, s.m), std::nullopt};
    case DesignKind::Fourier: return {design_fourier(s.frequencies, s.d), std::nullopt};
    case DesignKind::FourierSymmetric:
      return {design_fourier_symmetric(s.frequencies, s.d), std::nullopt};
    case DesignKind::Affine3d: return design_affine_3d(s.d);
    case DesignKind::AffineAnchor: return design_affine_anchor(s.d, s.m);
    case DesignKind::Gaussian:
      if (s.affine) return random_gaussian_affine(s.m, s.d, s.seed);
      return {random_gaussian(s.m, s.d, s.seed), std::nullopt};
    case DesignKind::Adaptive: {
      if (!s.signal) fail(ErrorCode::InvalidArgument, "adaptive design needs the target signal");
      return {design_adaptive_system(phase_vector(*s.signal), s.anchor), std::nullopt};
    }
  }
  fail(ErrorCode::InvalidArgument, "unhandled design kind");
}

ComplexMatrix design_pairwise(std::size_t d) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "d >= 1 required");
  ComplexMatrix a(d * d, d);
  std::size_t r = 0;
  for (std::size_t k = 0; k < d; ++k) a(r++, k) = 1.0;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = k + 1; l < d; ++l) {
      a(r, k) = 1.0;
      a(r++, l) = 1.0;
      a(r, k) = 1.0;
      a(r++, l) = kI;
    }
  return a;
}

ComplexMatrix design_adaptive(const PhaseObservation& signs, std::size_t anchor) {
  const std::size_t d = signs.size();
  if (!std::binary_search(signs.support.begin(), signs.support.end(), anchor))
    fail(ErrorCode::AnchorNotInSupport, "anchor k0 must index a nonzero coordinate");
  ComplexMatrix rows(signs.support.size() - 1, d);
  std::size_t r = 0;
  for (std::size_t l : signs.support) {
    if (l == anchor) continue;
    const Complex q = signs.values[anchor] / signs.values[l];
    Complex c = kI * q;
    if (std::abs(c - q) <= 1e-12 || std::abs(c + q) <= 1e-12)
      c = std::polar(1.0, std::numbers::pi / 4.0) * q;
    rows(r, anchor) = 1.0;
    rows(r++, l) = c;
  }
  return rows;
}

ComplexMatrix design_adaptive_system(const PhaseObservation& signs, std::size_t anchor) {
  const ComplexMatrix extra = design_adaptive(signs, anchor);
  const std::size_t d = signs.size();
  ComplexMatrix a(d + extra.rows(), d);
  for (std::size_t k = 0; k < d; ++k) a(k, k) = 1.0;
  for (std::size_t r = 0; r < extra.rows(); ++r)
    for (std::size_t k = 0; k < d; ++k) a(d + r, k) = extra(r, k);
  return a;
}

ComplexMatrix design_generic_stack(std::size_t d, std::size_t m) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "d >= 1 required");
  if (m < 2 * d - 1) fail(ErrorCode::InvalidArgument, "generic stack needs m >= 2d-1");
  ComplexMatrix a(m, d);
  a(0, 0) = 1.0;
  for (std::size_t k = 1; k < d; ++k) {
    a(k, 0) = 1.0;
    a(k, k) = 1.0;
    a(d - 1 + k, 0) = 1.0;
    a(d - 1 + k, k) = kI;
  }
  for (std::size_t r = 2 * d - 1; r < m; ++r) a(r, 0) = 1.0;
  return a;
}

ComplexMatrix design_fourier(const RealVector& frequencies, std::size_t d) {
  if (frequencies.empty()) fail(ErrorCode::InvalidArgument, "need at least one frequency");
  ComplexMatrix a(frequencies.size(), d);
  for (std::size_t j = 0; j < frequencies.size(); ++j)
    for (std::size_t k = 0; k < d; ++k)
      a(j, k) = std::polar(1.0, -static_cast<double>(k + 1) * frequencies[j]);
  return a;
}

ComplexMatrix design_fourier_symmetric(const RealVector& frequencies, std::size_t d) {
  if (frequencies.empty()) fail(ErrorCode::InvalidArgument, "need at least one frequency");
  if (d < 1) fail(ErrorCode::InvalidArgument, "d >= 1 required");
  const std::size_t n = 2 * d - 1;
  ComplexMatrix a(frequencies.size(), n);
  for (std::size_t j = 0; j < frequencies.size(); ++j)
    for (std::size_t c = 0; c < n; ++c) {
      const double k = static_cast<double>(d - 1) - static_cast<double>(c);
      a(j, c) = std::polar(1.0, k * frequencies[j]);
    }
  return a;
}

MeasurementEnsemble design_affine_3d(std::size_t d) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "d >= 1 required");
  ComplexMatrix a(3 * d, d);
  ComplexVector b(3 * d);
  for (std::size_t k = 0; k < d; ++k) {
    a(3 * k, k) = 1.0;
    a(3 * k + 1, k) = 1.0;
    a(3 * k + 2, k) = 1.0;
    b[3 * k + 1] = 1.0;
    b[3 * k + 2] = kI;
  }
  return {a, b};
}

MeasurementEnsemble design_affine_anchor(std::size_t d, std::size_t m) {
  if (d < 1) fail(ErrorCode::InvalidArgument, "d >= 1 required");
  if (m < 2 * d) fail(ErrorCode::InvalidArgument, "anchor design needs m >= 2d");
  ComplexMatrix a(m, d);
  for (std::size_t k = 0; k < d; ++k) {
    a(k, k) = 1.0;
    a(d + k, k) = kI;
  }
  return {a, ComplexVector(m, Complex(1.0, 0.0))};
}

ComplexMatrix random_gaussian(std::size_t m, std::size_t d, Rng& rng) {
  if (m < 1 || d < 1) fail(ErrorCode::InvalidArgument, "m, d >= 1 required");
  ComplexMatrix a(m, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < d; ++k) a(i, k) = rng.complex_normal();
  return a;
}

ComplexMatrix random_gaussian(std::size_t m, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return random_gaussian(m, d, rng);
}

MeasurementEnsemble random_gaussian_affine(std::size_t m, std::size_t d, Rng& rng) {
  ComplexMatrix a = random_gaussian(m, d, rng);
  return {std::move(a), rng.complex_normal_vector(m)};
}

MeasurementEnsemble random_gaussian_affine(std::size_t m, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  return random_gaussian_affine(m, d, rng);
}

Signal KernelReduction::rest(const Signal& x) const {
  Signal r;
  for (std::size_t c = lead; c < column_perm.size(); ++c) r.push_back(x[column_perm[c]]);
  return r;
}

namespace {

KernelReduction reduce(const MeasurementEnsemble& e, const IndexSet& s, const Tolerance& tol) {
  const std::size_t m = e.a.rows(), d = e.a.cols();
  if (s.empty() || s.size() >= d)
    fail(ErrorCode::InvalidArgument, "kernel reduction needs 1 <= |S| < d");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] >= m || (i > 0 && s[i] <= s[i - 1]))
      fail(ErrorCode::InvalidArgument, "S must be strictly increasing row indices");

  const ComplexMatrix as = e.a.select_rows(s);
  if (numerical_rank(varphi(as), tol) != 2 * s.size())
    fail(ErrorCode::RankDeficientBlock, "rank(A^S) < |S|");
  IndexSet lead;
  try {
    lead = pivot_rows(as.transpose(), tol);
  } catch (const Error&) {
    fail(ErrorCode::RankDeficientBlock, "no invertible |S| x |S| block in A^S");
  }
  std::sort(lead.begin(), lead.end());
  const IndexSet rest = complement(lead, d);

  KernelReduction out;
  out.lead = lead.size();
  out.column_perm = lead;
  out.column_perm.insert(out.column_perm.end(), rest.begin(), rest.end());

  const ComplexMatrix l = as.select_cols(lead);
  const ComplexMatrix c = e.a.select_rows(complement(s, m));
  const ComplexMatrix cl = c.select_cols(lead);
  const ComplexMatrix reduced = c.select_cols(rest) - cl * solve(l, as.select_cols(rest));
  out.reduced.a = reduced;
  if (e.offset) {
    const MeasurementEnsemble bs = e.select_rows(s);
    const MeasurementEnsemble bc = e.select_rows(complement(s, m));
    const ComplexVector corr = cl * [&] {
      const ComplexMatrix z = solve(l, ComplexMatrix::column(*bs.offset));
      ComplexVector v(z.rows());
      for (std::size_t i = 0; i < z.rows(); ++i) v[i] = z(i, 0);
      return v;
    }();
    ComplexVector b = *bc.offset;
    for (std::size_t i = 0; i < b.size(); ++i) b[i] -= corr[i];
    out.reduced.offset = std::move(b);
  }
  return out;
}

}  // namespace

KernelReduction reduce_kernel_linear(const ComplexMatrix& a, const IndexSet& s,
                                     const Tolerance& tol) {
  return reduce(MeasurementEnsemble{a, std::nullopt}, s, tol);
}

KernelReduction reduce_kernel_affine(const MeasurementEnsemble& e, const IndexSet& s,
                                     const Tolerance& tol) {
  if (!e.offset) fail(ErrorCode::InvalidArgument, "affine reduction needs an offset");
  return reduce(e, s, tol);
}

}  // namespace phaseonly

namespace phaseonly {

Signal sample_kernel_signal(const ComplexMatrix& rows, Rng& rng, const Tolerance& tol) {
  const std::size_t d = rows.cols();
  const RealMatrix basis = nullspace(varphi(rows), tol);
  if (basis.cols() == 0) fail(ErrorCode::InvalidArgument, "A^Z has a trivial kernel");
  RealVector v(2 * d, 0.0);
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    const double w = rng.normal();
    for (std::size_t i = 0; i < 2 * d; ++i) v[i] += w * basis(i, c);
  }
  return unvarphi1(v, 0, d);
}

Signal sample_affine_preimage(const ComplexMatrix& rows, const ComplexVector& b, Rng& rng,
                              const Tolerance& tol) {
  const std::size_t d = rows.cols();
  RealVector rhs = varphi1(b);
  for (double& t : rhs) t = -t;
  Signal x = unvarphi1(lstsq(varphi(rows), rhs, tol), 0, d);
  if (rows.rows() < d) {
    const Signal k = sample_kernel_signal(rows, rng, tol);
    for (std::size_t i = 0; i < d; ++i) x[i] += k[i];
  }
  return x;
}

}  // namespace phaseonly
