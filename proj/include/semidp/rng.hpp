// Copyright 2026 The SemiDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "semidp/vec.hpp"

namespace semidp {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

}  // namespace detail

// Deterministic random stream keyed by (master_seed, stream_index).
//
// The engine is std::mt19937_64 (whose output sequence is pinned by the
// standard) and all distribution transforms are implemented here, so the
// same key replays the same sequence bit-for-bit. Distinct stream indices
// are seeded through splitmix64 and behave as independent streams; derived
// substreams depend only on the parent key, never on how much of the parent
// has been consumed.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0)
      : master_seed_(master_seed),
        stream_index_(stream_index),
        engine_(detail::mix_seed(master_seed, stream_index)) {}

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  RngStream substream(std::uint64_t index) const {
    return RngStream(detail::mix_seed(master_seed_, stream_index_), index);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  // Standard normal via Box-Muller; consumes exactly two engine outputs.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  Vec normal_vec(std::size_t d, double stddev = 1.0) {
    Vec out(d);
    for (double& x : out) x = stddev * normal();
    return out;
  }

  // Mean-zero Laplace with the given scale parameter.
  double laplace(double scale) {
    const double u = uniform() - 0.5;
    const double s = (u < 0.0) ? -1.0 : 1.0;
    return -scale * s * std::log(1.0 - 2.0 * std::fabs(u));
  }

  Vec laplace_vec(std::size_t d, double scale) {
    Vec out(d);
    for (double& x : out) x = laplace(scale);
    return out;
  }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

// Fisher-Yates shuffle driven by RngStream, so shuffles replay across
// platforms (std::shuffle's draw sequence is implementation-defined).
template <typename T>
void shuffle(std::vector<T>& items, RngStream& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j =
        static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(i)));
    std::swap(items[i - 1], items[j]);
  }
}

// Draws k distinct indices from [0, pool) in shuffled order.
inline std::vector<std::size_t> sample_without_replacement(std::size_t pool,
                                                           std::size_t k,
                                                           RngStream& rng) {
  std::vector<std::size_t> idx(pool);
  for (std::size_t i = 0; i < pool; ++i) idx[i] = i;
  // Partial Fisher-Yates: only the first k slots are needed.
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(
                rng.uniform_below(static_cast<std::uint64_t>(pool - i)));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace semidp
