#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "phaseonly/designs.hpp"
#include "phaseonly/discriminant.hpp"
#include "phaseonly/error.hpp"
#include "phaseonly/linalg.hpp"
#include "phaseonly/solver.hpp"

using namespace phaseonly;
using testing::close;
using testing::I;

namespace {

const ComplexMatrix kB0 = design_generic_stack(2, 3);
const ComplexMatrix kCanon{{1.0, 0.0}, {0.0, 1.0}, {1.0, I}};
const Signal kE1{1.0, 0.0};

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("D for the identity") {
  const RealMatrix d = disc_D(ComplexMatrix::identity(2), {1.0, 1.0});
  CHECK(close(d, RealMatrix{{1, 0, 0, 0, 1, 0},
                            {0, 1, 0, 0, 0, 1},
                            {0, 0, 1, 0, 0, 0},
                            {0, 0, 0, 1, 0, 0}}));
}

TEST_CASE("D for a single imaginary measurement") {
  CHECK(close(disc_D(ComplexMatrix{{I}}, {1.0}), RealMatrix{{0, 1, 0}, {-1, 0, -1}}));
}

TEST_CASE("D leaves zero measurements as zero columns") {
  const RealMatrix d = disc_D(ComplexMatrix{{1.0, 0.0}, {1.0, -1.0}}, {1.0, 1.0});
  REQUIRE(d.cols() == 6);
  for (std::size_t i = 0; i < d.rows(); ++i) CHECK(d(i, 5) == 0.0);
}

TEST_CASE("linear verdict on the small stack") {
  const RealMatrix d = disc_D(kB0, kE1);
  CHECK(d.rows() == 6);
  CHECK(d.cols() == 7);
  CHECK(numerical_rank(d) == 6);
  const Verdict v = verdict_linear(kB0, kE1);
  CHECK(v.recoverable);
  CHECK(v.rank_required == 6);
  CHECK(v.solution_dim == 1);
  CHECK(solution_space_dim(kB0, kE1) == 1);
}

TEST_CASE("identity cannot fix relative scales") {
  const Verdict v = verdict_linear(ComplexMatrix::identity(2), {1.0, 1.0});
  CHECK_FALSE(v.recoverable);
  CHECK(v.solution_dim == 2);
  CHECK(solution_space_dim(ComplexMatrix::identity(2), {1.0, 1.0}) == 2);
}

TEST_CASE("too few Gaussian rows never recover") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    const ComplexMatrix a = random_gaussian(4, 3, rng);
    const Verdict v = verdict_linear(a, rng.complex_normal_vector(3));
    CHECK_FALSE(v.recoverable);
    CHECK(v.solution_dim >= 2);
  }
}

TEST_CASE("linear verdict preconditions") {
  CHECK(code_of([] { verdict_linear(ComplexMatrix{{1.0, 1.0}}, {1.0, 0.0}); }) ==
        ErrorCode::RankDeficientMatrix);
  CHECK(code_of([] { verdict_linear(kB0, {1.0}); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([] { solution_space_dim(kB0, {0.0, 0.0}); }) == ErrorCode::ZeroSignal);
  CHECK(verdict_linear(kB0, {0.0, 0.0}).recoverable);
}

TEST_CASE("canonical E on a small canonical stack") {
  const RealMatrix e1 = disc_E(kCanon, kE1);
  CHECK(e1.cols() == 1);
  for (std::size_t i = 0; i < e1.rows(); ++i) CHECK(std::abs(e1(i, 0)) < 1e-15);
  CHECK(verdict_canonical(kCanon, kE1).recoverable);

  const RealMatrix e = disc_E(kCanon, {1.0, 1.0});
  const double h = std::sqrt(0.5);
  CHECK(close(e, RealMatrix{{-h, h}}, 1e-15));
  const Verdict v = verdict_canonical(kCanon, {1.0, 1.0});
  CHECK(v.rank_achieved == 1);
  CHECK(v.recoverable);
  CHECK(v.recoverable == verdict_linear(kCanon, {1.0, 1.0}).recoverable);
}

TEST_CASE("canonical E with no extra rows") {
  CHECK(disc_E(ComplexMatrix::identity(2), {1.0, 1.0}).rows() == 0);
  CHECK_FALSE(verdict_canonical(ComplexMatrix::identity(2), {1.0, 1.0}).recoverable);
}

TEST_CASE("canonical E annihilates the moduli of x") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(s);
    const std::size_t d = 2 + s % 4, m = d + 1 + s % 5;
    const LinearCanonical c = canonicalize_linear(random_gaussian(m, d, rng));
    const Signal x = rng.complex_normal_vector(d);
    const EAssembly asm_e = assemble_E(c.a_tilde, x);
    RealVector mod;
    for (std::size_t k : asm_e.support_x) mod.push_back(std::abs(x[k]));
    const RealVector r = asm_e.e * mod;
    for (double v : r) CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("canonical E agrees with D on random canonical pairs") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(1000 + s);
    const std::size_t d = 2 + s % 4, m = d + rng.index(d + 2);
    const LinearCanonical c = canonicalize_linear(random_gaussian(m, d, rng));
    const Signal x = rng.complex_normal_vector(d);
    CHECK(verdict_canonical(c.a_tilde, x).recoverable == verdict_linear(c.a_tilde, x).recoverable);
  }
}

TEST_CASE("canonical E requires canonical input") {
  CHECK(code_of([] { disc_E(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}}, {1.0, 1.0}); }) ==
        ErrorCode::NotCanonical);
}

TEST_CASE("real D") {
  const ComplexMatrix a{{1.0}, {I}};
  const Verdict v = verdict_real_D(a, {1.0});
  CHECK(disc_D_real(a, {1.0}).rows() == 4);
  CHECK(disc_D_real(a, {1.0}).cols() == 3);
  CHECK(v.rank_achieved == 2);
  CHECK(v.recoverable);
  CHECK(code_of([&] { verdict_real_D(a, {I}); }) == ErrorCode::NonRealSignal);
  CHECK(code_of([&] { verdict_real_D(a, {0.0}); }) == ErrorCode::ZeroSignal);
}

TEST_CASE("real E under a two-row Fourier design") {
  const ComplexMatrix a = design_fourier({0.7, 1.9}, 3);
  const Verdict v = verdict_real_E(a, {1.0, 2.0, 3.0});
  CHECK(v.rank_achieved == 2);
  CHECK(v.recoverable);
  // B_f(1, 0, -1) has full row rank, and so does the real E.
  const Verdict w = verdict_real_E(a, {1.0, 0.0, -1.0});
  CHECK(w.rank_achieved == 2);
  CHECK(w.recoverable == ma_condition({1.0, 0.0, -1.0}));
  CHECK(code_of([&] { verdict_real_E(a, {0.0, 0.0, 0.0}); }) == ErrorCode::ZeroSignal);
}

TEST_CASE("real E annihilates x") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(s);
    const std::size_t d = 2 + s % 5;
    RealVector w(d + 1), x(d);
    for (double& t : w) t = rng.uniform(0.1, 3.0);
    for (double& t : x) t = rng.normal();
    const RealMatrix e = disc_E_real(design_fourier(w, d), to_signal(x));
    const RealVector r = e * x;
    for (double v : r) CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("real E on a four-tap Fourier design matches the Ma test") {
  const ComplexMatrix a = design_fourier({0.5, 1.4, 2.6}, 4);
  const RealVector x{1.0, 2.0, 3.0, 0.0};
  CHECK(verdict_real_E(a, to_signal(x)).recoverable == ma_condition(x));
}

TEST_CASE("Ma matrices") {
  CHECK(close(ma_matrix({1, 2, 3}), RealMatrix{{-2, 0}, {2, 1}}));
  CHECK(close(ma_flip_matrix({1, 2, 3}), RealMatrix{{-2, -2, 2}, {-3, 0, 1}}));
  const RealVector bx = ma_flip_matrix({1, 2, 3}) * RealVector{1, 2, 3};
  CHECK(bx == RealVector{0, 0});
  CHECK(close(ma_matrix({1, 0, 0}), RealMatrix{{1, 0}, {0, 1}}));
  CHECK(ma_condition({1, 2, 3}));
  CHECK(code_of([] { ma_condition({0, 1, 1}); }) == ErrorCode::FirstEntryZero);
  CHECK_FALSE(ma_condition({1, 3, 1}));
}

TEST_CASE("affine D on the anchor design") {
  const MeasurementEnsemble e = design_affine_anchor(2, 4);
  const Verdict v = verdict_affine_D(e, {0.0, 0.0});
  CHECK(v.recoverable);
  CHECK(v.rank_required == 8);
}

TEST_CASE("affine Gaussian threshold") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    const std::size_t d = 2 + s % 3;
    const MeasurementEnsemble lo = random_gaussian_affine(2 * d - 1, d, rng);
    const MeasurementEnsemble hi = random_gaussian_affine(2 * d, d, rng);
    const Signal x = rng.complex_normal_vector(d);
    CHECK_FALSE(verdict_affine_D(lo, x).recoverable);
    CHECK(verdict_affine_D(hi, x).recoverable);
  }
}

TEST_CASE("affine E on the one-dimensional lift") {
  const MeasurementEnsemble e = design_affine_3d(1);
  REQUIRE(is_canonical(e));
  const EAssembly a = assemble_E_affine(e, {2.0});
  CHECK(a.e.rows() == 2);
  const Verdict v = verdict_affine_E(e, {2.0});
  CHECK(v.rank_achieved == 1);
  CHECK(v.recoverable);
  CHECK(verdict_affine_E(e, {0.0}).recoverable);
  CHECK(verdict_affine_E(e, {-1.0}).recoverable);
}

TEST_CASE("affine E agrees with affine D") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(5000 + s);
    const std::size_t d = 1 + s % 4, m = d + 1 + rng.index(d + 2);
    const MeasurementEnsemble e = random_gaussian_affine(m, d, rng);
    const Signal x = rng.complex_normal_vector(d);
    const AffineCanonical c = canonicalize_affine(e);
    CHECK(verdict_affine_E(c.ensemble, c.map_signal(x)).recoverable ==
          verdict_affine_D(e, x).recoverable);
  }
}

TEST_CASE("offset in the range of A") {
  const ComplexMatrix a{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
  CHECK(offset_in_range(a, {1.0, 2.0, 3.0}));
  CHECK_FALSE(offset_in_range(a, {1.0, 2.0, 4.0}));
  CHECK(offset_in_range(a, {0.0, 0.0, 0.0}));
  CHECK(code_of([&] { verdict_affine_D(MeasurementEnsemble{a, ComplexVector{1.0, 2.0, 3.0}}, {1.0, 1.0}); }) ==
        ErrorCode::OffsetInRange);
}

TEST_CASE("verdict json") {
  const Json j = verdict_to_json(verdict_linear(kB0, kE1));
  CHECK(j.at("recoverable").get<bool>());
  CHECK(j.at("solution_dim").get<int>() == 1);
  CHECK(j.at("support_x") == Json::array({0}));
}
