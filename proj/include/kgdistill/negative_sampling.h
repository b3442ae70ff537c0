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

#ifndef KGDISTILL_NEGATIVE_SAMPLING_H_
#define KGDISTILL_NEGATIVE_SAMPLING_H_

#include <cstdint>

#include "kgdistill/graph.h"
#include "kgdistill/rng.h"

namespace kgdistill {

struct NegativeSample {
  LabeledEdgeSet negatives;
  // Corruptions accepted after exhausting the retry budget although they
  // reproduce a known positive.
  int64_t collisions = 0;
};

struct NegativeSamplingOptions {
  // Which endpoint to corrupt. Dst-side is the default.
  Side corrupt = Side::kDst;
  int max_retries = 100;
};

// Produces exactly one negative per positive by corrupting one endpoint
// uniformly over its node type. A corruption is rejected when it reproduces
// an edge of `known` or one of `positives`.
NegativeSample SampleNegatives(const HeteroGraph& known,
                               const LabeledEdgeSet& positives, Rng& rng,
                               const NegativeSamplingOptions& options = {});

}  // namespace kgdistill

#endif  // KGDISTILL_NEGATIVE_SAMPLING_H_
