// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace csbc::qsim {

using Seed = std::uint64_t;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream.
///
/// The n-th draw is a pure function of (key, n), so a stream can be
/// reconstructed from its key and position alone. Independent streams for
/// parallel trials come from derive(), which hashes the child index into the
/// key; no state is shared between streams.
class SeedStream {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  constexpr explicit SeedStream(Seed seed) noexcept : key_(seed) {}

  /// Stream for trial `index` of this stream's experiment.
  constexpr SeedStream derive(std::uint64_t index) const noexcept {
    return SeedStream(mix64(key_ ^ mix64(index + kGamma)), Tag{});
  }

  constexpr std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal deviate (Box-Muller, one value per call).
  double normal() noexcept;

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t position() const noexcept { return counter_; }

 private:
  struct Tag {};
  constexpr SeedStream(std::uint64_t key, Tag) noexcept : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace csbc::qsim
