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

#include "kgdistill/synthetic.h"

#include <cmath>

#include "gtest/gtest.h"
#include "kgdistill/error.h"
#include "kgdistill/metrics.h"
#include "kgdistill/negative_sampling.h"
#include "kgdistill/rng.h"

namespace kgdistill {
namespace {

TEST(Synthetic, SeedDeterminesGraph) {
  SyntheticSpec s;
  s.nodes_per_type = 80;
  s.density = 0.05;
  s.seed = 3;
  const auto a = GenerateSyntheticKg(s);
  const auto b = GenerateSyntheticKg(s);
  EXPECT_EQ(a.graph.all_edges(), b.graph.all_edges());
  EXPECT_EQ(a.latent.node, b.latent.node);
  s.seed = 4;
  EXPECT_NE(GenerateSyntheticKg(s).graph.all_edges(), a.graph.all_edges());
}

TEST(Synthetic, EdgeCountWithinThreeSigma) {
  SyntheticSpec s;
  s.latent_dim = 4;
  s.nodes_per_type = 200;
  s.density = 0.02;
  s.seed = 0;
  const auto kg = GenerateSyntheticKg(s);
  for (int32_t r = 0; r < kg.graph.num_relations(); ++r) {
    const double mean = kg.expected_edges[r];
    const double sd = std::sqrt(kg.edge_count_variance[r]);
    EXPECT_NEAR(mean, s.density * 200 * 200, 1e-6 * mean);
    EXPECT_LE(std::abs(static_cast<double>(kg.graph.edges(r).size()) - mean), 3 * sd)
        << "relation " << r;
  }
}

TEST(Synthetic, PooledEdgeCountWithinThreeSigma) {
  // Independent relations and seeds pooled into one binomial-sum check.
  SyntheticSpec s;
  s.latent_dim = 4;
  s.nodes_per_type = 200;
  s.density = 0.02;
  double observed = 0;
  double mean = 0;
  double variance = 0;
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    s.seed = seed;
    const auto kg = GenerateSyntheticKg(s);
    for (int32_t r = 0; r < kg.graph.num_relations(); ++r) {
      observed += static_cast<double>(kg.graph.edges(r).size());
      mean += kg.expected_edges[r];
      variance += kg.edge_count_variance[r];
    }
  }
  EXPECT_LE(std::abs(observed - mean), 3 * std::sqrt(variance));
}

TEST(Synthetic, InvalidDensityRejected) {
  SyntheticSpec s;
  s.density = 0.0;
  EXPECT_THROW(GenerateSyntheticKg(s), Error);
  s.density = 1.0;
  EXPECT_THROW(GenerateSyntheticKg(s), Error);
  s.density = 1e-6;  // 0.25 expected edges per relation
  EXPECT_THROW(GenerateSyntheticKg(s), Error);
  s.density = 0.02;
  s.nodes_per_type = 0;
  EXPECT_THROW(GenerateSyntheticKg(s), Error);
}

TEST(Synthetic, RelationEndpointsCoverTypes) {
  for (int r = 0; r < 6; ++r) {
    const RelationInfo info = SyntheticRelation(r, 3);
    EXPECT_NE(info.src_type, info.dst_type);
    EXPECT_LT(info.src_type, 3);
    EXPECT_LT(info.dst_type, 3);
  }
  const RelationInfo single = SyntheticRelation(2, 1);
  EXPECT_EQ(single.src_type, 0);
  EXPECT_EQ(single.dst_type, 0);
}

TEST(Synthetic, DegreesAreHeavyTailed) {
  SyntheticSpec s;
  s.seed = 11;
  const auto kg = GenerateSyntheticKg(s);
  for (int32_t r = 0; r < kg.graph.num_relations(); ++r) {
    const auto deg = kg.graph.degree(r, Side::kDst);
    const double mean =
        static_cast<double>(kg.graph.edges(r).size()) / deg.size();
    const int64_t max = *std::max_element(deg.begin(), deg.end());
    EXPECT_GT(max, 3.0 * mean);
  }
}

// The generating score ranks held-out edges far above corrupted ones, so the
// graph carries structure a DistMult model of width latent_dim can express.
TEST(Synthetic, LatentScoreBeatsRandomRanking) {
  SyntheticSpec s;
  s.seed = 5;
  s.nodes_per_type = 200;
  s.density = 0.03;
  const auto kg = GenerateSyntheticKg(s);
  Rng rng = MakeRng(1, "test");
  for (int32_t r = 0; r < kg.graph.num_relations(); ++r) {
    std::vector<Triple> pos;
    for (const Edge& e : kg.graph.edges(r)) pos.push_back({r, e.src, e.dst});
    const auto neg =
        SampleNegatives(kg.graph, LabeledEdgeSet::GroundTruth(pos), rng).negatives;
    std::vector<double> scores;
    std::vector<uint8_t> labels;
    const auto& info = kg.graph.relation(r);
    auto score = [&](const Triple& t) {
      double v = 0.0;
      for (int i = 0; i < s.latent_dim; ++i) {
        v += kg.latent.node[info.src_type][t.src][i] * kg.latent.relation[r][i] *
             kg.latent.node[info.dst_type][t.dst][i];
      }
      return v;
    };
    for (const Triple& t : pos) {
      scores.push_back(score(t));
      labels.push_back(1);
    }
    for (const Triple& t : neg.edges()) {
      scores.push_back(score(t));
      labels.push_back(0);
    }
    EXPECT_GT(Auprc(scores, labels), 0.8) << "relation " << r;
  }
}

}  // namespace
}  // namespace kgdistill
