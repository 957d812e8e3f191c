#pragma once

#include "phaseonly/discriminant.hpp"
#include "phaseonly/json_io.hpp"
#include "phaseonly/types.hpp"

namespace phaseonly {

enum class Ambiguity { PositiveScaling, Exact };
enum class Normalization { UnitNorm, None };

struct ReconstructionResult {
  Signal signal;
  Ambiguity ambiguity = Ambiguity::PositiveScaling;
  Normalization normalization = Normalization::UnitNorm;
  double residual = 0.0;  // max |sign(A x_hat (+b))_j - obs_j|
  std::size_t nullity = 0;
  std::vector<std::string> diagnostics;
};

Json reconstruction_to_json(const ReconstructionResult& r);

// x in W_A  <=>  P x in W_{A_tilde}.
struct LinearCanonical {
  ComplexMatrix a_tilde;
  std::vector<std::size_t> row_perm;  // position -> original row
  ComplexMatrix p;                    // top block of the permuted A

  Signal map_signal(const Signal& x) const { return p * x; }
};

// x in W_{A,b}  <=>  P x + shift in W_{canonical}.
struct AffineCanonical {
  MeasurementEnsemble ensemble;
  std::vector<std::size_t> row_perm;
  ComplexMatrix p;
  ComplexVector shift;

  Signal map_signal(const Signal& x) const;
  Signal unmap_signal(const Signal& x_tilde) const;
};

LinearCanonical canonicalize_linear(const ComplexMatrix& a, const Tolerance& tol = {});
AffineCanonical canonicalize_affine(const MeasurementEnsemble& e, const Tolerance& tol = {});

ReconstructionResult solve_linear(const ComplexMatrix& a, const PhaseObservation& obs,
                                  const Tolerance& tol = {});
ReconstructionResult solve_affine(const MeasurementEnsemble& e, const PhaseObservation& obs,
                                  const Tolerance& tol = {});

// |x_k| / |x_l| from sign(x_k), sign(x_l), sign(x_k + x_l).
double recover_ratio(Complex phase_k, Complex phase_l, Complex phase_sum);

// The homogeneous or inhomogeneous coefficient matrix [phi(A), -phi1(U_N)].
RealMatrix phase_system(const ComplexMatrix& a, const PhaseObservation& obs);

}  // namespace phaseonly
