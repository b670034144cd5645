//
// Copyright 2026 The nerbt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef NERBT_RNG_H_
#define NERBT_RNG_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>

namespace nerbt {

// SplitMix64 finalizer. Used for seeding and for deriving stream seeds.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Order-sensitive hash of a seed and a list of coordinates. Stream seeds are
// derived as DeriveSeed(run_seed, {sentence_index, augmentation_index, ...}).
std::uint64_t DeriveSeed(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> coordinates);
std::uint64_t DeriveSeed(std::uint64_t seed,
                         std::span<const std::uint64_t> coordinates);

// xoshiro256** with SplitMix64 seeding. Every draw helper below is defined in
// terms of Next() only, so sequences are identical on all platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t Next();

  // Uniform in [0, 1) with 53 bits of precision.
  double NextDouble();

  // Uniform in [0, bound). `bound` must be > 0.
  std::uint64_t UniformIndex(std::uint64_t bound);

  // True with probability p; p <= 0 never, p >= 1 always.
  bool Bernoulli(double p);

  template <typename T>
  void Shuffle(std::span<T> items) {
    // Fisher-Yates, high index first.
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(UniformIndex(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_;
};

}  // namespace nerbt

#endif  // NERBT_RNG_H_
