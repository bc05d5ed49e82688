// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mwlab/error.hpp"

namespace mwlab {

std::uint64_t RngStream::below(std::uint64_t n) noexcept {
  if (n <= 1) return 0;
  unsigned __int128 product = static_cast<unsigned __int128>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(product);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(next_u64()) * n;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double RngStream::normal() noexcept {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<std::size_t> random_permutation_prefix(std::size_t n, std::size_t k,
                                                   RngStream& stream) {
  if (k > n) throw DomainError("permutation prefix longer than the permuted set");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(stream.below(n - i));
    std::swap(perm[i], perm[j]);
  }
  perm.resize(k);
  return perm;
}

AtomSampler::AtomSampler(std::size_t count, std::span<const double> weights)
    : count_(count) {
  if (count == 0) throw DomainError("cannot sample from an empty atom set");
  if (weights.empty()) return;
  if (weights.size() != count) throw DomainError("weight vector length mismatch");
  const bool all_equal = std::all_of(weights.begin(), weights.end(),
                                     [&](double w) { return w == weights.front(); });
  if (all_equal) return;
  cumulative_.resize(count);
  double running = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!(weights[i] >= 0.0)) throw DomainError("negative or NaN atom weight");
    running += weights[i];
    cumulative_[i] = running;
  }
  if (!(running > 0.0)) throw DomainError("atom weights sum to zero");
}

std::size_t AtomSampler::operator()(RngStream& stream) const {
  if (cumulative_.empty()) return static_cast<std::size_t>(stream.below(count_));
  const double target = stream.uniform() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  return std::min(static_cast<std::size_t>(it - cumulative_.begin()), count_ - 1);
}

}  // namespace mwlab
