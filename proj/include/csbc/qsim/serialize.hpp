// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nlohmann/json.hpp>

#include "csbc/qsim/state.hpp"

// JSON forms: a complex number is [re, im] or a plain real; a vector is an
// array of complex numbers; a matrix is an array of rows.
namespace csbc::qsim {

nlohmann::json to_json(Complex z);
nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const StateVector& s);
nlohmann::json to_json(const DensityMatrix& rho);

Complex complex_from_json(const nlohmann::json& j);
Vector vector_from_json(const nlohmann::json& j);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace csbc::qsim
