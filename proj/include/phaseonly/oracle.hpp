#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "phaseonly/json_io.hpp"
#include "phaseonly/types.hpp"

namespace phaseonly {

struct Witness {
  Signal y;
  bool same_phases = false;
  bool proportional = false;

  bool valid() const noexcept { return same_phases && !proportional; }
};

// None when dim V_x = 1; otherwise a y with the same phases as x, checked directly.
std::optional<Witness> counterexample_search(const ComplexMatrix& a, const Signal& x,
                                             const Tolerance& tol = {});

// Direct checks used to certify a witness.
bool same_phases(const ComplexVector& u, const ComplexVector& v, double tol = 1e-8);
bool positively_proportional(const Signal& y, const Signal& x, double tol = 1e-8);

class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  // Every finite double is a dyadic rational, so the conversion is exact.
  static RationalMatrix from_real(const RealMatrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_, cols_;
  std::vector<mpq_class> data_;
};

struct RationalComplexMatrix {
  RationalMatrix re;
  RationalMatrix im;

  RationalComplexMatrix(std::size_t rows, std::size_t cols) : re(rows, cols), im(rows, cols) {}
  static RationalComplexMatrix from_complex(const ComplexMatrix& a);
  // The real lifting [[Re, Im], [-Im, Re]].
  RationalMatrix lift() const;
};

std::size_t exact_rank(RationalMatrix m);
std::size_t exact_rank(const RationalComplexMatrix& m);  // complex rank
std::size_t exact_rank(const RealMatrix& m);

struct ConsistencyFailure {
  std::uint64_t seed;
  std::string kind;
  std::string detail;
};

struct ConsistencyReport {
  std::size_t trials = 0;
  std::size_t linear_checked = 0;
  std::size_t linear_inconsistent = 0;
  std::size_t linear_recoverable = 0;
  std::size_t affine_checked = 0;
  std::size_t affine_inconsistent = 0;
  std::size_t affine_recoverable = 0;
  std::size_t planted_zero_trials = 0;
  std::size_t exact_rank_checks = 0;
  std::size_t exact_rank_disagreements = 0;
  std::vector<ConsistencyFailure> failures;

  std::size_t inconsistencies() const {
    return linear_inconsistent + affine_inconsistent + exact_rank_disagreements;
  }
};

Json consistency_to_json(const ConsistencyReport& r);

ConsistencyReport consistency_sweep(std::size_t trials, const std::vector<std::size_t>& dims,
                                    std::uint64_t seed, std::size_t threads = 0,
                                    const Tolerance& tol = {});

}  // namespace phaseonly
