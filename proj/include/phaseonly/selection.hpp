#pragma once

#include "phaseonly/discriminant.hpp"
#include "phaseonly/json_io.hpp"
#include "phaseonly/types.hpp"

namespace phaseonly {

struct SelectionResult {
  IndexSet selected;  // original row numbering
  bool verified = false;
};

Json selection_to_json(const SelectionResult& s);

// Greedy max-residual row picking (pivoted QR on the rows of m); returns k row indices.
std::vector<std::size_t> pivoted_rows(const RealMatrix& m, std::size_t k);

SelectionResult select_rows_linear(const ComplexMatrix& a, const Signal& x,
                                   const Tolerance& tol = {});
SelectionResult select_rows_affine(const MeasurementEnsemble& e, const Signal& x,
                                   const Tolerance& tol = {});

}  // namespace phaseonly
