// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mwlab {

// Streaming pairwise (binary-tree) summation of vectors of fixed dimension.
// The tree shape depends only on the number of terms, so the rounding is a
// deterministic function of the input sequence; the error grows like
// O(log n) instead of O(n).
class PairwiseAccumulator {
 public:
  explicit PairwiseAccumulator(std::size_t dim) : dim_(dim), levels_(kMaxLevels * dim, 0.0) {}

  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t count() const noexcept { return count_; }

  void add(std::span<const double> term) {
    carry_.assign(term.begin(), term.end());
    std::size_t level = 0;
    for (std::uint64_t bits = count_; bits & 1U; bits >>= 1U, ++level) {
      const double* stored = &levels_[level * dim_];
      for (std::size_t c = 0; c < dim_; ++c) carry_[c] = stored[c] + carry_[c];
    }
    std::copy(carry_.begin(), carry_.end(), levels_.begin() + static_cast<std::ptrdiff_t>(level * dim_));
    ++count_;
  }

  // Sum of all terms added so far, written into `out`.
  void total(std::span<double> out) const {
    for (std::size_t c = 0; c < dim_; ++c) out[c] = 0.0;
    std::size_t level = 0;
    for (std::uint64_t bits = count_; bits != 0; bits >>= 1U, ++level) {
      if (bits & 1U) {
        const double* stored = &levels_[level * dim_];
        for (std::size_t c = 0; c < dim_; ++c) out[c] = stored[c] + out[c];
      }
    }
  }

  void reset() {
    count_ = 0;
    std::fill(levels_.begin(), levels_.end(), 0.0);
  }

 private:
  static constexpr std::size_t kMaxLevels = 64;
  std::size_t dim_;
  std::uint64_t count_ = 0;
  std::vector<double> levels_;
  std::vector<double> carry_;
};

// Deterministic pairwise sum of a scalar sequence.
inline double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace mwlab
