// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/qsim/gates.hpp"

#include <cmath>
#include <numbers>

namespace csbc::qsim::gates {

namespace {
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const Complex kI{0.0, 1.0};
}  // namespace

Matrix identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return Matrix::Identity(d, d);
}

Matrix hadamard() {
  Matrix h(2, 2);
  h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  return h;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix ry(double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  Matrix m(2, 2);
  m << c, -s, s, c;
  return m;
}

Matrix swap() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

Matrix partial_swap(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(3, 3) = 1;
  // columns are images of |01⟩ (index 1) and |10⟩ (index 2)
  m(1, 1) = c;
  m(2, 1) = s;
  m(1, 2) = -s;
  m(2, 2) = c;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Vector ket0() {
  Vector v(2);
  v << 1, 0;
  return v;
}

Vector ket1() {
  Vector v(2);
  v << 0, 1;
  return v;
}

Vector ket_plus() {
  Vector v(2);
  v << kInvSqrt2, kInvSqrt2;
  return v;
}

Vector ket_minus() {
  Vector v(2);
  v << kInvSqrt2, -kInvSqrt2;
  return v;
}

Vector singlet() {
  Vector v(4);
  v << 0, kInvSqrt2, -kInvSqrt2, 0;
  return v;
}

Vector psi_plus() {
  Vector v(4);
  v << 0, kInvSqrt2, kInvSqrt2, 0;
  return v;
}

std::vector<Vector> plane_basis(double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  Vector b0(2);
  Vector b1(2);
  b0 << c, s;
  b1 << -s, c;
  return {b0, b1};
}

std::vector<Matrix> plane_projectors(double theta) {
  const auto basis = plane_basis(theta);
  return {projector(basis[0]), projector(basis[1])};
}

std::vector<Matrix> rank1_test(const Vector& v) {
  const Matrix p = projector(v);
  return {p, identity(static_cast<std::size_t>(v.size())) - p};
}

}  // namespace csbc::qsim::gates
