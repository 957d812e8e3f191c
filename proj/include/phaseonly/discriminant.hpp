#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phaseonly/json_io.hpp"
#include "phaseonly/types.hpp"

namespace phaseonly {

enum class Criterion { LinearD, CanonicalE, RealD, RealE, AffineD, AffineE, MaCondition };

const char* criterion_name(Criterion c);

struct Verdict {
  Criterion criterion = Criterion::LinearD;
  std::size_t rank_achieved = 0;
  std::size_t rank_required = 0;
  std::size_t solution_dim = 0;
  bool recoverable = false;
  IndexSet support_x;
  IndexSet support_meas;
  std::vector<std::string> diagnostics;
};

Json verdict_to_json(const Verdict& v);

struct MeasurementEnsemble {
  ComplexMatrix a;
  std::optional<ComplexVector> offset;

  bool affine() const noexcept { return offset.has_value(); }
  std::size_t rows() const noexcept { return a.rows(); }
  std::size_t dim() const noexcept { return a.cols(); }
  MeasurementEnsemble select_rows(const IndexSet& rows) const;
  // A x (+ b)
  ComplexVector measure(const Signal& x) const;
};

// E-type discriminant together with the measurement each row came from.
struct EAssembly {
  RealMatrix e;
  std::vector<std::size_t> row_block;  // row -> measurement index j
  IndexSet support_x;                  // N(x), the kept columns
  RealVector b_column;                 // affine only: b(x)
  PhaseObservation obs;
};

bool is_canonical(const ComplexMatrix& a);
bool is_canonical(const MeasurementEnsemble& e);

// b in the column space of A, by relative least-squares residual <= 1e-8.
bool offset_in_range(const ComplexMatrix& a, const ComplexVector& b, const Tolerance& tol = {});

// Linear model.
RealMatrix disc_D(const ComplexMatrix& a, const Signal& x, const Tolerance& tol = {});
Verdict verdict_linear(const ComplexMatrix& a, const Signal& x, const Tolerance& tol = {});
std::size_t solution_space_dim(const ComplexMatrix& a, const Signal& x, const Tolerance& tol = {});

EAssembly assemble_E(const ComplexMatrix& a_canonical, const Signal& x, const Tolerance& tol = {});
RealMatrix disc_E(const ComplexMatrix& a_canonical, const Signal& x, const Tolerance& tol = {});
Verdict verdict_canonical(const ComplexMatrix& a_canonical, const Signal& x,
                          const Tolerance& tol = {});

// Real signals.
RealMatrix disc_D_real(const ComplexMatrix& a, const Signal& x, const Tolerance& tol = {});
Verdict verdict_real_D(const ComplexMatrix& a, const Signal& x, const Tolerance& tol = {});
RealMatrix disc_E_real(const ComplexMatrix& a, const Signal& x, const Tolerance& tol = {});
Verdict verdict_real_E(const ComplexMatrix& a, const Signal& x, const Tolerance& tol = {});

RealMatrix ma_matrix(const RealVector& x);
RealMatrix ma_flip_matrix(const RealVector& x);
bool ma_condition(const RealVector& x, const Tolerance& tol = {});
Verdict verdict_ma(const RealVector& x, const Tolerance& tol = {});

// Affine model.
RealMatrix disc_D_affine(const MeasurementEnsemble& e, const Signal& x, const Tolerance& tol = {});
Verdict verdict_affine_D(const MeasurementEnsemble& e, const Signal& x, const Tolerance& tol = {});
EAssembly assemble_E_affine(const MeasurementEnsemble& e_canonical, const Signal& x,
                            const Tolerance& tol = {});
RealMatrix disc_E_affine(const MeasurementEnsemble& e_canonical, const Signal& x,
                         const Tolerance& tol = {});
Verdict verdict_affine_E(const MeasurementEnsemble& e_canonical, const Signal& x,
                         const Tolerance& tol = {});

RealVector real_part(const Signal& x);
Signal to_signal(const RealVector& x);

}  // namespace phaseonly
