#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "phaseonly/designs.hpp"
#include "phaseonly/error.hpp"
#include "phaseonly/linalg.hpp"
#include "phaseonly/solver.hpp"

using namespace phaseonly;
using testing::close;
using testing::I;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

bool recovers_up_to_scale(const ComplexMatrix& a, const Signal& x) {
  const ReconstructionResult r = solve_linear(a, phase_vector(a * x));
  const double n = norm2(x);
  if (n == 0.0) return max_abs(r.signal) == 0.0;
  Signal u = x;
  for (Complex& z : u) z /= n;
  return close(r.signal, u, 1e-8);
}

}  // namespace

TEST_CASE("pairwise design rows") {
  CHECK(design_pairwise(1) == ComplexMatrix{{1.0}});
  CHECK(design_pairwise(2) == ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, I}});
  CHECK(design_pairwise(3).rows() == 9);
}

TEST_CASE("pairwise design recovers awkward signals") {
  const ComplexMatrix a = design_pairwise(3);
  for (const Signal& x : {Signal{1.0, 1.0, 1.0}, Signal{1.0, -1.0, 0.0}, Signal{0.0, I, -I},
                          Signal{2.0, 0.0, 0.0}, Signal{Complex(1, 1), -1.0, I}})
    CHECK(recovers_up_to_scale(a, x));
}

TEST_CASE("adaptive rows") {
  const PhaseObservation s = phase_vector({1.0, I, 0.0});
  const ComplexMatrix extra = design_adaptive(s, 0);
  CHECK(extra.rows() == 1);
  const ComplexMatrix sys = design_adaptive_system(s, 0);
  CHECK(sys.rows() == 4);
  CHECK(recovers_up_to_scale(sys, {1.0, I, 0.0}));

  CHECK(design_adaptive(phase_vector({1.0, 0.0, 0.0}), 0).rows() == 0);
  CHECK(recovers_up_to_scale(design_adaptive_system(phase_vector({1.0, 0.0, 0.0}), 0), {1.0, 0.0, 0.0}));

  const PhaseObservation ones = phase_vector({1.0, 1.0, 1.0});
  const ComplexMatrix rows = design_adaptive(ones, 0);
  CHECK(rows.rows() == 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t l = 1; l < 3; ++l)
      if (rows(r, l) != Complex(0.0, 0.0)) {
        CHECK(std::abs(rows(r, l) - 1.0) > 1e-12);
        CHECK(std::abs(rows(r, l) + 1.0) > 1e-12);
      }
  CHECK(recovers_up_to_scale(design_adaptive_system(ones, 0), {1.0, 1.0, 1.0}));
  CHECK(code_of([&] { design_adaptive(s, 2); }) == ErrorCode::AnchorNotInSupport);
}

TEST_CASE("adaptive system recovers random signals") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const std::size_t d = 2 + seed % 4;
    Signal x = rng.complex_normal_vector(d);
    if (seed % 3 == 0) x[d - 1] = 0.0;
    const PhaseObservation s = phase_vector(x);
    CHECK(recovers_up_to_scale(design_adaptive_system(s, s.support.front()), x));
  }
}

TEST_CASE("generic stack rows") {
  CHECK(design_generic_stack(2, 3) == ComplexMatrix{{1.0, 0.0}, {1.0, 1.0}, {1.0, I}});
  const ComplexMatrix b = design_generic_stack(3, 5);
  CHECK(b.rows() == 5);
  CHECK(verdict_linear(b, {1.0, 0.0, 0.0}).recoverable);
  CHECK(code_of([] { design_generic_stack(2, 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Fourier rows") {
  CHECK(design_fourier({0.0}, 2) == ComplexMatrix{{1.0, 1.0}});
  const ComplexMatrix f = design_fourier({std::numbers::pi / 2}, 2);
  CHECK(close(f(0, 0), -I, 1e-15));
  CHECK(close(f(0, 1), -1.0, 1e-15));
}

TEST_CASE("symmetric Fourier measurements of symmetric signals are real") {
  const ComplexMatrix a = design_fourier_symmetric({0.7}, 2);
  CHECK(a.cols() == 3);
  const Complex z(0.3, -1.2);
  const Signal x{z, 0.5, std::conj(z)};
  CHECK(std::abs((a * x)[0].imag()) < 1e-15);
}

TEST_CASE("affine 3d design") {
  const MeasurementEnsemble e = design_affine_3d(1);
  CHECK(e.a == ComplexMatrix{{1.0}, {1.0}, {1.0}});
  CHECK(*e.offset == ComplexVector{0.0, 1.0, I});
  CHECK(design_affine_3d(3).rows() == 9);
}

TEST_CASE("affine 3d design recovers a grid") {
  const MeasurementEnsemble e = design_affine_3d(2);
  const Complex vals[] = {0.0, 1.0, -1.0, I, -I, Complex(1, 1), Complex(-0.5, 2.0)};
  for (Complex u : vals)
    for (Complex v : vals) {
      const Signal x{u, v};
      CHECK(close(solve_affine(e, phase_vector(e.measure(x))).signal, x, 1e-8));
    }
}

TEST_CASE("anchor design") {
  const MeasurementEnsemble e = design_affine_anchor(2, 4);
  CHECK(e.a == ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}, {I, 0.0}, {0.0, I}});
  CHECK(*e.offset == ComplexVector(4, 1.0));
  CHECK(verdict_affine_D(e, {0.0, 0.0}).recoverable);
  CHECK(code_of([] { design_affine_anchor(2, 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Gaussian designs are seeded") {
  CHECK(random_gaussian(3, 2, 7) == random_gaussian(3, 2, 7));
  CHECK_FALSE(random_gaussian(3, 2, 7) == random_gaussian(3, 2, 8));
  CHECK(has_full_column_rank(random_gaussian(5, 3, 11)));
  const MeasurementEnsemble e = random_gaussian_affine(4, 2, 3);
  CHECK(e.affine());
  CHECK(e.offset->size() == 4);
}

TEST_CASE("design spec round trip") {
  DesignSpec s;
  s.kind = DesignKind::Fourier;
  s.d = 3;
  s.frequencies = {0.1, 0.5};
  const DesignSpec t = design_spec_from_json(design_spec_to_json(s));
  CHECK(t.kind == DesignKind::Fourier);
  CHECK(t.frequencies == s.frequencies);
  CHECK(build_design(t).a == design_fourier(s.frequencies, 3));

  DesignSpec g;
  g.kind = DesignKind::Gaussian;
  g.d = 2;
  g.m = 4;
  g.seed = 9;
  g.affine = true;
  const MeasurementEnsemble e = build_design(design_spec_from_json(design_spec_to_json(g)));
  CHECK(e.affine());
  for (DesignKind k : {DesignKind::Pairwise, DesignKind::Adaptive, DesignKind::GenericStack,
                       DesignKind::Fourier, DesignKind::FourierSymmetric, DesignKind::Affine3d,
                       DesignKind::AffineAnchor, DesignKind::Gaussian})
    CHECK(design_kind_from_name(design_kind_name(k)) == k);
  CHECK(code_of([] { design_kind_from_name("nope"); }) == ErrorCode::ParseError);
}

TEST_CASE("kernel signals vanish on the chosen rows") {
  Rng rng(4);
  const ComplexMatrix a = random_gaussian(5, 3, rng);
  const ComplexMatrix z = a.select_rows({1, 3});
  const Signal x = sample_kernel_signal(z, rng);
  for (Complex v : z * x) CHECK(std::abs(v) < 1e-12);
  CHECK(norm2(x) > 0.1);

  const MeasurementEnsemble e = random_gaussian_affine(5, 3, rng);
  const MeasurementEnsemble ez = e.select_rows({0, 4});
  const Signal y = sample_affine_preimage(ez.a, *ez.offset, rng);
  for (Complex v : ez.measure(y)) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("kernel reduction of a block matrix") {
  // A^S = [I 0], A^{S^c} = [0 C]: the reduced matrix is C itself.
  const ComplexMatrix c{{1.0, 2.0}, {I, 1.0}, {3.0, -I}};
  ComplexMatrix a(4, 3);
  a(0, 0) = 1.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 2; ++k) a(1 + i, 1 + k) = c(i, k);
  const KernelReduction r = reduce_kernel_linear(a, {0});
  CHECK(r.lead == 1);
  CHECK(r.column_perm.front() == 0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 2; ++k) CHECK(close(r.reduced.a(i, k), c(i, k), 1e-15));
  CHECK(r.rest({0.0, 5.0, I}) == Signal{5.0, I});
}

TEST_CASE("kernel reduction preserves recoverability") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed);
    const std::size_t d = 2 + seed % 4;
    const std::size_t m = 2 * d - 1 + rng.index(2);
    const ComplexMatrix a = random_gaussian(m, d, rng);
    const IndexSet s = seed % 2 ? IndexSet{0} : IndexSet{0, m - 1};
    if (s.size() >= d) continue;
    const Signal x = sample_kernel_signal(a.select_rows(s), rng);
    const KernelReduction r = reduce_kernel_linear(a, s);
    CHECK(verdict_linear(a, x).recoverable == verdict_linear(r.reduced.a, r.rest(x)).recoverable);
  }
}

TEST_CASE("affine kernel reduction") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed);
    const std::size_t d = 2 + seed % 3;
    const std::size_t m = 2 * d - 1 + rng.index(3);
    const MeasurementEnsemble e = random_gaussian_affine(m, d, rng);
    const IndexSet s = seed % 2 ? IndexSet{1} : IndexSet{0, 2};
    if (s.size() >= d) continue;
    const MeasurementEnsemble es = e.select_rows(s);
    const Signal x = sample_affine_preimage(es.a, *es.offset, rng);
    const KernelReduction r = reduce_kernel_affine(e, s);
    CHECK(verdict_affine_D(e, x).recoverable ==
          verdict_affine_D(r.reduced, r.rest(x)).recoverable);
  }
}

TEST_CASE("kernel reduction preconditions") {
  const ComplexMatrix a = random_gaussian(4, 2, 1);
  CHECK(code_of([&] { reduce_kernel_linear(a, {0, 1}); }) == ErrorCode::InvalidArgument);
  ComplexMatrix z(3, 2);
  z(1, 0) = 1.0;
  z(2, 1) = 1.0;
  CHECK(code_of([&] { reduce_kernel_linear(z, {0}); }) == ErrorCode::RankDeficientBlock);
}
