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

#include "kgdistill/split.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "kgdistill/error.h"
#include "kgdistill/rng.h"

namespace kgdistill {
namespace {

constexpr int64_t kMinTargetEdges = 10;

// Rounded share of `n` items for a fraction, used for valid and test.
int64_t Share(int64_t n, double fraction) {
  return static_cast<int64_t>(std::llround(fraction * static_cast<double>(n)));
}

}  // namespace

void SplitSpec::Validate(const Schema& schema) const {
  if (!(train_fraction > 0 && valid_fraction > 0 && test_fraction > 0)) {
    throw Error("split fractions must be strictly positive");
  }
  if (std::abs(train_fraction + valid_fraction + test_fraction - 1.0) > 1e-9) {
    throw Error("split fractions must sum to 1");
  }
  if (target_relations.empty()) throw Error("no target relations given");
  std::unordered_set<std::string> seen;
  for (const auto& name : target_relations) {
    if (!schema.FindRelation(name)) {
      throw Error("unknown target relation '" + name + "'");
    }
    if (!seen.insert(name).second) {
      throw Error("target relation '" + name + "' listed twice");
    }
  }
}

SplitResult Split(const HeteroGraph& graph, const SplitSpec& spec) {
  spec.Validate(graph.schema());
  const Schema& schema = graph.schema();

  std::vector<int32_t> targets;
  for (const auto& name : spec.target_relations) {
    targets.push_back(*schema.FindRelation(name));
  }

  std::vector<std::vector<Edge>> train_edges = graph.all_edges();
  std::vector<Triple> valid;
  std::vector<Triple> test;
  std::vector<std::vector<int32_t>> held_out;

  for (const int32_t r : targets) {
    const auto edges = graph.edges(r);
    const auto n = static_cast<int64_t>(edges.size());
    const auto& name = schema.relations[r].name;
    if (n < kMinTargetEdges) {
      throw Error("target relation '" + name + "' has fewer than " +
                  std::to_string(kMinTargetEdges) + " edges");
    }
    // One stream per relation keeps a relation's split independent of which
    // other relations are targeted.
    Rng rng = MakeRng(spec.seed, "split/" + name);
    auto& kept = train_edges[r];
    kept.clear();

    if (spec.mode == SplitSpec::Mode::kEdgeRandom) {
      // Parts are assigned per distinct triple so duplicate rows never
      // straddle two parts.
      std::unordered_map<uint64_t, int64_t> distinct_index;
      std::vector<int64_t> group(n);
      for (int64_t i = 0; i < n; ++i) {
        group[i] = distinct_index
                       .try_emplace(EdgeKey(edges[i].src, edges[i].dst),
                                    static_cast<int64_t>(distinct_index.size()))
                       .first->second;
      }
      const auto n_distinct = static_cast<int64_t>(distinct_index.size());
      std::vector<int64_t> order(n_distinct);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      const int64_t n_valid =
          std::max<int64_t>(1, Share(n_distinct, spec.valid_fraction));
      const int64_t n_test =
          std::max<int64_t>(1, Share(n_distinct, spec.test_fraction));
      if (n_valid + n_test >= n_distinct) {
        throw Error("split leaves no training edges for '" + name + "'");
      }
      // Keep the original edge order inside each part.
      std::vector<uint8_t> part(n_distinct, 0);
      for (int64_t i = 0; i < n_valid; ++i) part[order[i]] = 1;
      for (int64_t i = n_valid; i < n_valid + n_test; ++i) part[order[i]] = 2;
      for (int64_t i = 0; i < n; ++i) {
        const Edge& e = edges[i];
        const uint8_t p = part[group[i]];
        if (p == 0) {
          kept.push_back(e);
        } else {
          (p == 1 ? valid : test).push_back({r, e.src, e.dst});
        }
      }
      held_out.emplace_back();
    } else {
      // Hold out dst-side nodes that carry at least one edge.
      std::vector<int32_t> candidates;
      {
        std::vector<uint8_t> has_edge(graph.num_nodes(schema.relations[r].dst_type), 0);
        for (const Edge& e : edges) has_edge[e.dst] = 1;
        for (size_t v = 0; v < has_edge.size(); ++v) {
          if (has_edge[v]) candidates.push_back(static_cast<int32_t>(v));
        }
      }
      std::shuffle(candidates.begin(), candidates.end(), rng);
      const auto m = static_cast<int64_t>(candidates.size());
      const int64_t n_valid = std::max<int64_t>(1, Share(m, spec.valid_fraction));
      const int64_t n_test = std::max<int64_t>(1, Share(m, spec.test_fraction));
      if (n_valid + n_test >= m) {
        throw Error("node holdout would empty the training edges of '" + name +
                    "'");
      }
      std::vector<uint8_t> part(graph.num_nodes(schema.relations[r].dst_type), 0);
      std::vector<int32_t> nodes;
      for (int64_t i = 0; i < n_valid + n_test; ++i) {
        part[candidates[i]] = i < n_valid ? 1 : 2;
        nodes.push_back(candidates[i]);
      }
      std::sort(nodes.begin(), nodes.end());
      for (const Edge& e : edges) {
        switch (part[e.dst]) {
          case 0:
            kept.push_back(e);
            break;
          case 1:
            valid.push_back({r, e.src, e.dst});
            break;
          default:
            test.push_back({r, e.src, e.dst});
        }
      }
      // For same-type relations a held-out node may also appear as src.
      if (schema.relations[r].src_type == schema.relations[r].dst_type) {
        std::vector<Edge> filtered;
        for (const Edge& e : kept) {
          if (part[e.src] == 0) {
            filtered.push_back(e);
          } else {
            (part[e.src] == 1 ? valid : test).push_back({r, e.src, e.dst});
          }
        }
        kept = std::move(filtered);
      }
      if (kept.empty()) {
        throw Error("node holdout would empty the training edges of '" + name +
                    "'");
      }
      held_out.push_back(std::move(nodes));
    }
  }

  return SplitResult{graph.WithEdges(std::move(train_edges)),
                     LabeledEdgeSet::GroundTruth(std::move(valid)),
                     LabeledEdgeSet::GroundTruth(std::move(test)),
                     std::move(targets), std::move(held_out)};
}

void WriteSplitManifest(const SplitResult& split, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  const Schema& s = split.train.schema();
  for (const Triple& t : split.test.edges()) {
    const auto& r = s.relations[t.relation];
    out << r.name << '\t' << s.node_ids[r.src_type][t.src] << '\t'
        << s.node_ids[r.dst_type][t.dst] << '\n';
  }
  if (!out) throw Error("write failed for '" + path + "'");
}

const char* SplitModeName(SplitSpec::Mode mode) {
  return mode == SplitSpec::Mode::kEdgeRandom ? "edge-random" : "node-holdout";
}

SplitSpec::Mode ParseSplitMode(const std::string& name) {
  if (name == "edge-random") return SplitSpec::Mode::kEdgeRandom;
  if (name == "node-holdout") return SplitSpec::Mode::kNodeHoldout;
  throw Error("unknown split mode '" + name + "'");
}

}  // namespace kgdistill
