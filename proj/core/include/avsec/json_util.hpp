#pragma once

#include <json.hpp>

#include "avsec/estimate.hpp"
#include "avsec/linalg.hpp"

namespace avsec {

inline nlohmann::json estimate_to_json(const Estimate& e) {
  nlohmann::json j{
      {"value", e.value}, {"stderr", e.std_error}, {"n", e.samples}, {"exact", e.exact}};
  if (!e.delta_ok) j["delta_ok"] = false;
  return j;
}

inline Estimate estimate_from_json(const nlohmann::json& j) {
  Estimate e;
  e.value = j.at("value").get<double>();
  e.std_error = j.at("stderr").get<double>();
  e.samples = j.at("n").get<std::int64_t>();
  e.exact = j.at("exact").get<bool>();
  e.delta_ok = !j.contains("delta_ok") || j.at("delta_ok").get<bool>();
  return e;
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw std::invalid_argument("expected a matrix as nested arrays (row-major)");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw std::invalid_argument("ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

inline nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a vector as a flat array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

}  // namespace avsec
