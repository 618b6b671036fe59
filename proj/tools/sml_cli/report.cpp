#include "report.hpp"

namespace sml::cli {

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

bool is_flat(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (!is_scalar(e)) return false;
  }
  return true;
}

bool is_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& e : j) {
    if (!is_flat(e)) return false;
  }
  return true;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

std::string flat_text(const Json& j) {
  std::string out = "[";
  for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + scalar_text(j[i]);
  return out + "]";
}

void emit(std::string& out, const Json& j, int indent);

void emit_value(std::string& out, const std::string& head, const Json& v, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_scalar(v)) {
    out += pad + head + scalar_text(v) + "\n";
  } else if (is_flat(v)) {
    out += pad + head + flat_text(v) + "\n";
  } else if (is_matrix(v)) {
    out += pad + head + "\n";
    for (const auto& row : v) out += pad + "  " + flat_text(row) + "\n";
  } else {
    out += pad + head + "\n";
    emit(out, v, indent + 2);
  }
}

void emit(std::string& out, const Json& j, int indent) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) emit_value(out, k + ": ", v, indent);
  } else if (j.is_array()) {
    for (const auto& v : j) emit_value(out, "- ", v, indent);
  } else {
    out += std::string(static_cast<std::size_t>(indent), ' ') + scalar_text(j) + "\n";
  }
}

}  // namespace

std::string render_text(const Json& j) {
  std::string out;
  emit(out, j, 0);
  return out;
}

Json matrix_json(const Matrix<SymExpr>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

Json matrix_json(const Matrix<Complex>& m) {
  return matrix_json(m.map([](const Complex& c) { return SymExpr(c); }));
}

Json vector_json(const RVector& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(to_string(e));
  return out;
}

Json vector_json(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(e.to_string());
  return out;
}

Json vector_json(const std::vector<SymExpr>& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(e.to_string());
  return out;
}

Json multi_indices_json(unsigned n) {
  Json out = Json::array();
  for (const auto& i : all_multi_indices(n)) out.push_back(i.to_string());
  return out;
}

}  // namespace sml::cli
