#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "sml/catalog.hpp"
#include "sml/geometry.hpp"
#include "sml/grassmann.hpp"
#include "sml/matrix.hpp"
#include "sml/symexpr.hpp"

namespace sml::cli {

// std::map-backed objects keep keys sorted, which makes dumps byte-stable.
using Json = nlohmann::json;

std::string render_text(const Json& j);

Json matrix_json(const Matrix<SymExpr>& m);
Json matrix_json(const Matrix<Complex>& m);
Json vector_json(const RVector& v);
Json vector_json(const std::vector<Complex>& v);
Json vector_json(const std::vector<SymExpr>& v);
Json multi_indices_json(unsigned n);

}  // namespace sml::cli
