// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPECGEOM_RNG_HPP_
#define SPECGEOM_RNG_HPP_

#include <cstdint>
#include <cmath>
#include <random>

namespace specgeom {

// splitmix64 finalizer; used to derive independent per-batch seeds so that
// Monte-Carlo output does not depend on how batches are scheduled.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(splitmix64(base) ^ (stream * 0xd1b54a32d192ed03ULL));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(derive_seed(seed, stream));
}

// Uniform double in [0, 1) built from the top 53 bits; unlike
// std::uniform_real_distribution its output is identical across standard
// library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Marsaglia polar method, for the same portability reason.
inline double standard_normal(Rng& rng) {
  for (;;) {
    const double u = 2.0 * uniform01(rng) - 1.0;
    const double v = 2.0 * uniform01(rng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

}  // namespace specgeom

#endif  // SPECGEOM_RNG_HPP_
