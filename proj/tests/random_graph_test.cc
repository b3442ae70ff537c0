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

#include "kgdistill/random_graph.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "kgdistill/error.h"
#include "test_util.h"

namespace kgdistill {
namespace {

// One relation a -> b whose src degrees are given; every edge lands on b:0.
HeteroGraph GraphWithSrcDegrees(const std::vector<int>& degrees) {
  const int n = static_cast<int>(degrees.size());
  auto schema = MakeIndexedSchema({{"a", n}, {"b", 2}}, {{"r", 0, 1}});
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int i = 0; i < degrees[u]; ++i) edges.push_back({u, i % 2});
  }
  return HeteroGraph(schema, {edges});
}

std::vector<int64_t> SrcCounts(const std::vector<Triple>& triples, int n) {
  std::vector<int64_t> counts(n, 0);
  for (const Triple& t : triples) ++counts[t.src];
  return counts;
}

// Asserts |count - k p| <= 4 sqrt(k p (1 - p)) for every category.
void ExpectWithinFourSigma(const std::vector<int64_t>& counts,
                           const std::vector<double>& p, int64_t k) {
  for (size_t i = 0; i < p.size(); ++i) {
    const double mean = k * p[i];
    const double sd = std::sqrt(k * p[i] * (1 - p[i]));
    EXPECT_LE(std::abs(counts[i] - mean), 4 * sd + 1e-12) << "category " << i;
  }
}

double ChiSquare(const std::vector<int64_t>& counts, const std::vector<double>& p,
                 int64_t k) {
  double stat = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    const double e = k * p[i];
    stat += (counts[i] - e) * (counts[i] - e) / e;
  }
  return stat;
}

TEST(SamplingWeights, PowerSharpens) {
  const std::vector<int64_t> degrees{1, 3};
  const auto w = SamplingWeights(degrees, 1.5);
  const double raw = std::pow(3.0, 1.5);
  EXPECT_NEAR(raw, 5.196, 1e-3);
  EXPECT_NEAR(w[0], 1 / (1 + raw), 1e-15);
  EXPECT_NEAR(w[0], 0.1614, 5e-5);
  EXPECT_NEAR(w[1], 0.8386, 5e-5);
}

TEST(SamplingWeights, AllZeroRejected) {
  const std::vector<int64_t> degrees{0, 0, 0};
  EXPECT_THROW(SamplingWeights(degrees, 1.0), Error);
}

TEST(RandomGraph, UniformDegrees) {
  const HeteroGraph g = GraphWithSrcDegrees({2, 2, 2, 2});
  RandomGraphSpec spec;
  spec.k = 10000;
  spec.relations = {0};
  Rng rng(1);
  const auto triples = GenerateRandomGraph(g, spec, rng);
  ASSERT_EQ(triples.size(), 10000u);
  ExpectWithinFourSigma(SrcCounts(triples, 4), {0.25, 0.25, 0.25, 0.25}, 10000);
}

TEST(RandomGraph, ZeroDegreeNeverSampled) {
  const HeteroGraph g = GraphWithSrcDegrees({1, 0, 3});
  RandomGraphSpec spec;
  spec.k = 40000;
  spec.relations = {0};
  Rng rng(2);
  const auto counts = SrcCounts(GenerateRandomGraph(g, spec, rng), 3);
  EXPECT_EQ(counts[1], 0);
  ExpectWithinFourSigma(counts, {0.25, 0.0, 0.75}, 40000);
}

TEST(RandomGraph, ModifiedPowerFrequencies) {
  const HeteroGraph g = GraphWithSrcDegrees({1, 3});
  RandomGraphSpec spec;
  spec.k = 20000;
  spec.power = 1.5;
  spec.relations = {0};
  Rng rng(3);
  const auto counts = SrcCounts(GenerateRandomGraph(g, spec, rng), 2);
  const double raw = std::pow(3.0, 1.5);
  ExpectWithinFourSigma(counts, {1 / (1 + raw), raw / (1 + raw)}, 20000);
}

TEST(RandomGraph, ChiSquareGoodnessOfFit) {
  // Critical values of the chi-square distribution at upper tail 1e-6.
  const double critical[] = {23.928, 27.631, 30.665, 33.377};
  const std::vector<std::vector<int>> cases = {{1, 2, 3, 4}, {5, 1}, {2, 7, 1}, {3, 3, 1, 8, 2}};
  for (const double power : {1.0, 1.5}) {
    for (size_t c = 0; c < cases.size(); ++c) {
      const HeteroGraph g = GraphWithSrcDegrees(cases[c]);
      RandomGraphSpec spec;
      spec.k = 100000;
      spec.power = power;
      spec.relations = {0};
      Rng rng(100 + c);
      const auto triples = GenerateRandomGraph(g, spec, rng);
      const int n = static_cast<int>(cases[c].size());
      const std::vector<int64_t> deg(cases[c].begin(), cases[c].end());
      const auto p = SamplingWeights(deg, power);
      EXPECT_LT(ChiSquare(SrcCounts(triples, n), p, spec.k), critical[n - 2])
          << "case " << c << " power " << power;
    }
  }
}

TEST(RandomGraph, DstSideUsesDstDegrees) {
  // b:1 never receives an edge, so it never appears as a dst.
  auto schema = MakeIndexedSchema({{"a", 2}, {"b", 3}}, {{"r", 0, 1}});
  const HeteroGraph g(schema, {{{0, 0}, {1, 2}, {1, 2}}});
  RandomGraphSpec spec;
  spec.k = 5000;
  spec.relations = {0};
  Rng rng(4);
  int64_t hits[3] = {0, 0, 0};
  for (const Triple& t : GenerateRandomGraph(g, spec, rng)) ++hits[t.dst];
  EXPECT_EQ(hits[1], 0);
  EXPECT_GT(hits[2], hits[0]);
}

TEST(RandomGraph, SameTypeRelationCountsBothEndpoints) {
  auto schema = MakeIndexedSchema({{"a", 3}}, {{"r", 0, 0}});
  const HeteroGraph g(schema, {{{0, 1}}});
  RandomGraphSpec spec;
  spec.k = 2000;
  spec.relations = {0};
  Rng rng(5);
  for (const Triple& t : GenerateRandomGraph(g, spec, rng)) {
    EXPECT_NE(t.src, 2);
    EXPECT_NE(t.dst, 2);
  }
}

TEST(RandomGraph, KPerRelationAndDeterminism) {
  const HeteroGraph g = testing::RandomGraph(3, 20, 4, 30, 6);
  RandomGraphSpec spec;
  spec.k = 123;
  spec.relations = {0, 2, 3};
  Rng a(9);
  Rng b(9);
  const auto x = GenerateRandomGraph(g, spec, a);
  EXPECT_EQ(x, GenerateRandomGraph(g, spec, b));
  ASSERT_EQ(x.size(), 3u * 123);
  EXPECT_EQ(x[0].relation, 0);
  EXPECT_EQ(x[123].relation, 2);
  EXPECT_EQ(x.back().relation, 3);
}

TEST(RandomGraph, InvalidSpecs) {
  const HeteroGraph empty(MakeIndexedSchema({{"a", 2}}, {{"r", 0, 0}}), {{}});
  RandomGraphSpec spec;
  spec.relations = {0};
  Rng rng(1);
  EXPECT_THROW(GenerateRandomGraph(empty, spec, rng), Error);
  const HeteroGraph g = GraphWithSrcDegrees({1, 1});
  spec.relations = {3};
  EXPECT_THROW(GenerateRandomGraph(g, spec, rng), Error);
  spec.relations = {0};
  spec.k = 0;
  EXPECT_THROW(GenerateRandomGraph(g, spec, rng), Error);
  spec.k = 10;
  spec.regenerate_every = -1;
  EXPECT_THROW(spec.Validate(), Error);
}

}  // namespace
}  // namespace kgdistill
