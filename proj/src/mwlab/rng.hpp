// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mwlab {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based random stream. The n-th draw is a pure function of (key, n),
// and child streams are derived from the key alone, so a stream tree built
// from one master seed yields the same numbers regardless of the order in
// which workers consume it.
class RngStream {
 public:
  RngStream() : RngStream(0) {}
  explicit RngStream(std::uint64_t seed) : key_(mix64(seed + kSalt)) {}

  RngStream split(std::uint64_t id) const {
    RngStream child;
    child.key_ = mix64(key_ ^ mix64(id + kGamma));
    return child;
  }
  RngStream split(std::uint64_t a, std::uint64_t b) const { return split(a).split(b); }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t position() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept { return mix64(key_ + (++counter_) * kGamma); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n); Lemire's nearly-divisionless rejection.
  std::uint64_t below(std::uint64_t n) noexcept;

  // Standard normal via Box-Muller (no cached second variate).
  double normal() noexcept;

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kSalt = 0x6A09E667F3BCC909ULL;
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// First k entries of a uniformly random permutation of {0, ..., n-1}.
std::vector<std::size_t> random_permutation_prefix(std::size_t n, std::size_t k,
                                                   RngStream& stream);

// Draws atom indices according to a weight vector. Exactly-uniform weights
// (including an empty weight vector) use a plain uniform integer draw so that
// a uniform-weight measure and the corresponding unweighted ensemble consume
// identical random numbers.
class AtomSampler {
 public:
  AtomSampler(std::size_t count, std::span<const double> weights);
  std::size_t operator()(RngStream& stream) const;
  bool uniform() const noexcept { return cumulative_.empty(); }

 private:
  std::size_t count_;
  std::vector<double> cumulative_;
};

}  // namespace mwlab
