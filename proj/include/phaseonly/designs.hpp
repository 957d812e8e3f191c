#pragma once

#include <optional>
#include <string>

#include "phaseonly/discriminant.hpp"
#include "phaseonly/json_io.hpp"
#include "phaseonly/random.hpp"
#include "phaseonly/types.hpp"

namespace phaseonly {

enum class DesignKind {
  Pairwise,
  Adaptive,
  GenericStack,
  Fourier,
  FourierSymmetric,
  Affine3d,
  AffineAnchor,
  Gaussian,
};

const char* design_kind_name(DesignKind k);
DesignKind design_kind_from_name(const std::string& name);

struct DesignSpec {
  DesignKind kind = DesignKind::Gaussian;
  std::size_t d = 1;
  std::size_t m = 0;
  RealVector frequencies;
  std::uint64_t seed = 0;
  bool affine = false;             // Gaussian only
  std::optional<Signal> signal;    // Adaptive only: the target x
  std::size_t anchor = 0;          // Adaptive only: k0
};

Json design_spec_to_json(const DesignSpec& s);
DesignSpec design_spec_from_json(const Json& j);
MeasurementEnsemble build_design(const DesignSpec& s);

ComplexMatrix design_pairwise(std::size_t d);
// Extra rows e_k0 + c_l e_l for l in N(x) \ {k0}.
ComplexMatrix design_adaptive(const PhaseObservation& signs, std::size_t anchor);
// Coordinate rows followed by the adaptive rows.
ComplexMatrix design_adaptive_system(const PhaseObservation& signs, std::size_t anchor);
ComplexMatrix design_generic_stack(std::size_t d, std::size_t m);
ComplexMatrix design_fourier(const RealVector& frequencies, std::size_t d);
ComplexMatrix design_fourier_symmetric(const RealVector& frequencies, std::size_t d);
MeasurementEnsemble design_affine_3d(std::size_t d);
MeasurementEnsemble design_affine_anchor(std::size_t d, std::size_t m);

ComplexMatrix random_gaussian(std::size_t m, std::size_t d, Rng& rng);
ComplexMatrix random_gaussian(std::size_t m, std::size_t d, std::uint64_t seed);
MeasurementEnsemble random_gaussian_affine(std::size_t m, std::size_t d, Rng& rng);
MeasurementEnsemble random_gaussian_affine(std::size_t m, std::size_t d, std::uint64_t seed);

// Random x with A^Z x = 0, or A^Z x + b^Z = 0 when b is given.
Signal sample_kernel_signal(const ComplexMatrix& rows, Rng& rng, const Tolerance& tol = {});
Signal sample_affine_preimage(const ComplexMatrix& rows, const ComplexVector& b, Rng& rng,
                              const Tolerance& tol = {});

struct KernelReduction {
  MeasurementEnsemble reduced;           // A(S), plus b'(S) in the affine case
  std::vector<std::size_t> column_perm;  // leading |S| columns are the pivot block
  std::size_t lead = 0;                  // |S|

  // x^{[d]\[S]} in the pivoted column order.
  Signal rest(const Signal& x) const;
};

KernelReduction reduce_kernel_linear(const ComplexMatrix& a, const IndexSet& s,
                                     const Tolerance& tol = {});
KernelReduction reduce_kernel_affine(const MeasurementEnsemble& e, const IndexSet& s,
                                     const Tolerance& tol = {});

}  // namespace phaseonly
