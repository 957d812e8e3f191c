#pragma once

#include <string>

#include "json.hpp"
#include "phaseonly/types.hpp"

namespace phaseonly {

using Json = nlohmann::json;

// {"rows": m, "cols": d, "entries": [[re, im], ...]} row-major; vectors use cols = 1.
Json matrix_to_json(const ComplexMatrix& a);
Json matrix_to_json(const RealMatrix& a);
Json vector_to_json(const ComplexVector& v);
ComplexMatrix matrix_from_json(const Json& j);
ComplexVector vector_from_json(const Json& j);
Json index_set_to_json(const IndexSet& s);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace phaseonly
