/*
 * Copyright 2026 The kgdistill Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KGDISTILL_RNG_H_
#define KGDISTILL_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace kgdistill {

using Rng = std::mt19937_64;

// Mixes a run seed with a purpose tag so that every consumer of randomness in
// a run (initialization, negatives, random graphs, ...) owns an independent
// stream. Two runs with the same seed draw identical streams per tag.
uint64_t DeriveSeed(uint64_t seed, std::string_view purpose);

inline Rng MakeRng(uint64_t seed, std::string_view purpose) {
  return Rng(DeriveSeed(seed, purpose));
}

}  // namespace kgdistill

#endif  // KGDISTILL_RNG_H_
