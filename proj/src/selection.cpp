#include "phaseonly/selection.hpp"

#include <algorithm>
#include <cmath>

#include "phaseonly/error.hpp"
#include "phaseonly/kernels.hpp"
#include "phaseonly/solver.hpp"

namespace phaseonly {

Json selection_to_json(const SelectionResult& s) {
  return Json{{"selected", index_set_to_json(s.selected)}, {"verified", s.verified}};
}

std::vector<std::size_t> pivoted_rows(const RealMatrix& m, std::size_t k) {
  const auto& kern = kernels::active();
  const std::size_t n = m.cols();
  RealMatrix rows = m.transpose();  // column r is row r of m
  std::vector<std::size_t> picked;
  std::vector<bool> used(m.rows(), false);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = m.rows();
    double best_norm = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (used[r]) continue;
      const double nr = kern.dot(rows.col(r), rows.col(r), n);
      if (nr > best_norm) {
        best_norm = nr;
        best = r;
      }
    }
    if (best == m.rows()) break;
    used[best] = true;
    picked.push_back(best);
    std::vector<double> q(rows.col(best), rows.col(best) + n);
    const double inv = 1.0 / std::sqrt(best_norm);
    for (double& t : q) t *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (used[r]) continue;
      kern.axpy(-kern.dot(q.data(), rows.col(r), n), q.data(), rows.col(r), n);
    }
  }
  return picked;
}

namespace {

IndexSet assemble(const std::vector<std::size_t>& row_perm, std::size_t d,
                  const std::vector<std::size_t>& blocks, std::size_t target, std::size_t m) {
  IndexSet sel;
  for (std::size_t i = 0; i < d; ++i) sel.push_back(row_perm[i]);
  for (std::size_t j : blocks) sel.push_back(row_perm[j]);
  std::sort(sel.begin(), sel.end());
  sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
  for (std::size_t r = 0; r < m && sel.size() < target; ++r)
    if (!std::binary_search(sel.begin(), sel.end(), r)) {
      sel.insert(std::lower_bound(sel.begin(), sel.end(), r), r);
    }
  return sel;
}

}  // namespace

SelectionResult select_rows_linear(const ComplexMatrix& a, const Signal& x, const Tolerance& tol) {
  const std::size_t m = a.rows(), d = a.cols();
  if (m < 2 * d - 1) fail(ErrorCode::TooFewRows, "selection needs m >= 2d-1");
  if (!verdict_linear(a, x, tol).recoverable)
    fail(ErrorCode::NotRecoverable, "x is not recoverable from sign(Ax)");

  const LinearCanonical canon = canonicalize_linear(a, tol);
  std::vector<std::size_t> blocks;
  if (max_abs(x) > 0.0) {
    const EAssembly e = assemble_E(canon.a_tilde, canon.map_signal(x), tol);
    const std::size_t need = e.support_x.size() - 1;
    for (std::size_t r : pivoted_rows(e.e, need)) blocks.push_back(e.row_block[r]);
  }
  SelectionResult out;
  out.selected = assemble(canon.row_perm, d, blocks, 2 * d - 1, m);
  try {
    out.verified = verdict_linear(a.select_rows(out.selected), x, tol).recoverable;
  } catch (const Error&) {
    out.verified = false;
  }
  return out;
}

SelectionResult select_rows_affine(const MeasurementEnsemble& e, const Signal& x,
                                   const Tolerance& tol) {
  const std::size_t m = e.a.rows(), d = e.a.cols();
  if (m < 2 * d) fail(ErrorCode::TooFewRows, "affine selection needs m >= 2d");
  if (!verdict_affine_D(e, x, tol).recoverable)
    fail(ErrorCode::NotRecoverable, "x is not recoverable from sign(Ax+b)");

  const AffineCanonical canon = canonicalize_affine(e, tol);
  const EAssembly ea = assemble_E_affine(canon.ensemble, canon.map_signal(x), tol);
  std::vector<std::size_t> blocks;
  for (std::size_t r : pivoted_rows(ea.e, ea.support_x.size())) blocks.push_back(ea.row_block[r]);
  SelectionResult out;
  out.selected = assemble(canon.row_perm, d, blocks, 2 * d, m);
  try {
    out.verified = verdict_affine_D(e.select_rows(out.selected), x, tol).recoverable;
  } catch (const Error&) {
    out.verified = false;
  }
  return out;
}

}  // namespace phaseonly
