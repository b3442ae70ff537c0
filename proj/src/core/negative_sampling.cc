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

#include "kgdistill/negative_sampling.h"

#include <unordered_set>
#include <vector>

#include "kgdistill/error.h"

namespace kgdistill {

NegativeSample SampleNegatives(const HeteroGraph& known,
                               const LabeledEdgeSet& positives, Rng& rng,
                               const NegativeSamplingOptions& options) {
  if (positives.empty()) throw Error("negative sampling needs positives");
  const Schema& schema = known.schema();
  positives.Validate(schema);

  std::vector<std::unordered_set<uint64_t>> extra(known.num_relations());
  for (const Triple& t : positives.edges()) {
    if (!known.HasEdge(t)) extra[t.relation].insert(EdgeKey(t.src, t.dst));
  }
  auto is_positive = [&](const Triple& t) {
    return known.HasEdge(t) || extra[t.relation].contains(EdgeKey(t.src, t.dst));
  };

  std::vector<Triple> out;
  out.reserve(positives.size());
  int64_t collisions = 0;
  for (const Triple& pos : positives.edges()) {
    const int32_t type = schema.EndpointType(pos.relation, options.corrupt);
    std::uniform_int_distribution<int32_t> pick(0, known.num_nodes(type) - 1);
    Triple candidate = pos;
    bool accepted = false;
    for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
      (options.corrupt == Side::kDst ? candidate.dst : candidate.src) = pick(rng);
      if (!is_positive(candidate)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) ++collisions;
    out.push_back(candidate);
  }
  return {LabeledEdgeSet::Negatives(std::move(out)), collisions};
}

}  // namespace kgdistill
