// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace csbc::qsim {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr std::size_t kMaxQubits = 8;

inline constexpr double kNormTol = 1e-10;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kCompletenessTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;

// Outcomes below this probability are treated as impossible.
inline constexpr double kImpossible = 1e-14;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Name of one qubit in a register, e.g. "singlet_A" or "C".
class QubitLabel {
 public:
  QubitLabel() = default;
  explicit QubitLabel(std::string name) : name_(std::move(name)) {}
  explicit QubitLabel(const char* name) : name_(name) {}

  const std::string& name() const noexcept { return name_; }

  friend auto operator<=>(const QubitLabel&, const QubitLabel&) = default;
  friend bool operator==(const QubitLabel&, const QubitLabel&) = default;

 private:
  std::string name_;
};

using Labels = std::vector<QubitLabel>;

/// Helper for literal label lists: labels({"a", "b"}).
Labels labels(std::initializer_list<const char*> names);

/// Probability clamped to [0, 1].
inline double clamp_prob(double p) noexcept {
  return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

}  // namespace csbc::qsim
