// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "csbc/qsim/state.hpp"

namespace csbc::qsim::gates {

Matrix identity(std::size_t dim);
Matrix hadamard();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// exp(-i θ Y / 2): rotation in the X-Z plane of the Bloch sphere.
Matrix ry(double theta);

Matrix swap();

/// Rotation by θ inside span{|01⟩, |10⟩}, fixing |00⟩ and |11⟩.
/// θ = π/2 sends |01⟩ to |10⟩.
Matrix partial_swap(double theta);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix projector(const Vector& v);

Vector ket0();
Vector ket1();
Vector ket_plus();
Vector ket_minus();

/// (|01⟩ - |10⟩)/√2
Vector singlet();
/// (|01⟩ + |10⟩)/√2
Vector psi_plus();

/// {|b0⟩, |b1⟩} with |b0⟩ = cos(θ/2)|0⟩ + sin(θ/2)|1⟩; θ = 0 is Z, θ = π/2 is X.
std::vector<Vector> plane_basis(double theta);
std::vector<Matrix> plane_projectors(double theta);

/// Projectors {|v⟩⟨v|, I - |v⟩⟨v|} for a normalized v.
std::vector<Matrix> rank1_test(const Vector& v);

}  // namespace csbc::qsim::gates
