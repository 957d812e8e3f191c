#include "doctest.h"
#include "helpers.hpp"
#include "phaseonly/designs.hpp"
#include "phaseonly/discriminant.hpp"
#include "phaseonly/linalg.hpp"
#include "phaseonly/oracle.hpp"

using namespace phaseonly;
using testing::I;

TEST_CASE("witness for the identity") {
  const std::optional<Witness> w = counterexample_search(ComplexMatrix::identity(2), {1.0, 1.0});
  REQUIRE(w.has_value());
  CHECK(w->same_phases);
  CHECK_FALSE(w->proportional);
  CHECK(w->valid());
  CHECK(same_phases(w->y, Signal{1.0, 1.0}));
}

TEST_CASE("no witness when recoverable") {
  CHECK_FALSE(counterexample_search(design_generic_stack(2, 3), {1.0, 0.0}).has_value());
}

TEST_CASE("witnesses below threshold") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    const ComplexMatrix a = random_gaussian(4, 3, rng);
    const Signal x = rng.complex_normal_vector(3);
    const std::optional<Witness> w = counterexample_search(a, x);
    REQUIRE(w.has_value());
    CHECK(w->valid());
    CHECK(same_phases(a * w->y, a * x));
  }
}

TEST_CASE("phase and proportionality predicates") {
  CHECK(same_phases(ComplexVector{2.0, 0.0, I}, ComplexVector{5.0, 0.0, 3.0 * I}));
  CHECK_FALSE(same_phases(ComplexVector{2.0, 0.0}, ComplexVector{2.0, 1e-3}));
  CHECK(positively_proportional({2.0, 2.0 * I}, {1.0, I}));
  CHECK_FALSE(positively_proportional({-2.0, -2.0 * I}, {1.0, I}));
  CHECK_FALSE(positively_proportional({1.0, 2.0}, {1.0, 1.0}));
}

TEST_CASE("exact rank") {
  CHECK(exact_rank(ma_matrix({1, 2, 3})) == 2);
  CHECK(exact_rank(RealMatrix(3, 4)) == 0);
  CHECK(exact_rank(RealMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK(exact_rank(RealMatrix{{1, 0.1}, {0.1, 0.01}}) == 2);  // 0.1 is not exactly 1/10
  const RealMatrix d = disc_D(design_generic_stack(2, 3), {1.0, 0.0});
  CHECK(exact_rank(d) == 6);
  CHECK(exact_rank(d) == numerical_rank(d));
  CHECK(exact_rank(RationalComplexMatrix::from_complex(ComplexMatrix{{1.0, I}, {I, -1.0}})) == 1);
  CHECK(exact_rank(RationalComplexMatrix::from_complex(ComplexMatrix{{1.0, I}, {1.0, -1.0}})) == 2);
}

TEST_CASE("consistency sweep") {
  const ConsistencyReport r = consistency_sweep(300, {2, 3, 4}, 17, 2);
  CHECK(r.trials == 300);
  CHECK(r.inconsistencies() == 0);
  CHECK(r.planted_zero_trials > 0);
  CHECK(r.exact_rank_checks > 0);
  CHECK(r.linear_recoverable > 0);
  CHECK(r.linear_recoverable < r.linear_checked);
  CHECK(consistency_to_json(r) == consistency_to_json(consistency_sweep(300, {2, 3, 4}, 17, 1)));
}
