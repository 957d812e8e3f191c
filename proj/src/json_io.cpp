#include "phaseonly/json_io.hpp"

#include <fstream>
#include <sstream>

#include "phaseonly/error.hpp"

namespace phaseonly {

Json matrix_to_json(const ComplexMatrix& a) {
  Json entries = Json::array();
  for (const Complex& z : a.data()) entries.push_back({z.real(), z.imag()});
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

Json matrix_to_json(const RealMatrix& a) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) entries.push_back({a(i, j), 0.0});
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

Json vector_to_json(const ComplexVector& v) { return matrix_to_json(ComplexMatrix::column(v)); }

ComplexMatrix matrix_from_json(const Json& j) {
  try {
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const Json& entries = j.at("entries");
    if (rows < 1 || cols < 1) fail(ErrorCode::ParseError, "matrix needs rows >= 1 and cols >= 1");
    if (!entries.is_array() || entries.size() != rows * cols)
      fail(ErrorCode::ParseError, "entries length does not match rows*cols");
    ComplexMatrix a(rows, cols);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const Json& e = entries[k];
      Complex z;
      if (e.is_number()) {
        z = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        z = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        fail(ErrorCode::ParseError, "entry " + std::to_string(k) + " is not [re, im]");
      }
      a(k / cols, k % cols) = z;
    }
    if (!a.is_finite()) fail(ErrorCode::ParseError, "matrix has non-finite entries");
    return a;
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed matrix JSON: ") + e.what());
  }
}

ComplexVector vector_from_json(const Json& j) {
  const ComplexMatrix a = matrix_from_json(j);
  if (a.cols() != 1) fail(ErrorCode::ParseError, "vector JSON must have cols = 1");
  ComplexVector v(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) v[i] = a(i, 0);
  return v;
}

Json index_set_to_json(const IndexSet& s) {
  Json out = Json::array();
  for (std::size_t i : s) out.push_back(i);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace phaseonly
