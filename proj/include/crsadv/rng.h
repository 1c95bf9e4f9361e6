//
// Copyright 2026 The crsadv Authors
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

#ifndef CRSADV_RNG_H_
#define CRSADV_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace crsadv {

// Seeded generator whose draws are identical on every platform:
// mt19937_64 is fully specified by the standard, and bounded draws use
// rejection sampling instead of the implementation-defined distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::size_t Uniform(std::size_t n);

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[Uniform(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Per-instance seed: a pure function of the run seed and the instance key,
// so results do not depend on processing order.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view dialogue_id,
                         int turn_index);

}  // namespace crsadv

#endif  // CRSADV_RNG_H_
