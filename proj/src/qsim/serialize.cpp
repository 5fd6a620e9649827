// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/qsim/serialize.hpp"

namespace csbc::qsim {

nlohmann::json to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json to_json(const Vector& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

nlohmann::json to_json(const Matrix& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

nlohmann::json label_list(const Labels& ls) {
  auto out = nlohmann::json::array();
  for (const auto& l : ls) out.push_back(l.name());
  return out;
}

}  // namespace

nlohmann::json to_json(const StateVector& s) {
  return {{"labels", label_list(s.labels())}, {"amps", to_json(s.amps())}};
}

nlohmann::json to_json(const DensityMatrix& rho) {
  return {{"labels", label_list(rho.labels())}, {"mat", to_json(rho.mat())}};
}

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error("expected a number or [re, im]");
}

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error("expected an array of amplitudes");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw Error("expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw Error("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
    }
  }
  return m;
}

}  // namespace csbc::qsim
