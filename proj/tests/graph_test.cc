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

#include "kgdistill/graph.h"

#include <numeric>

#include "gtest/gtest.h"
#include "kgdistill/error.h"
#include "kgdistill/negative_sampling.h"
#include "kgdistill/rng.h"
#include "test_util.h"

namespace kgdistill {
namespace {

int64_t Sum(std::span<const int64_t> v) {
  return std::accumulate(v.begin(), v.end(), int64_t{0});
}

// Degree sum over both endpoints, counting a same-type relation once.
int64_t DegreeSum(const HeteroGraph& g, int32_t r) {
  const auto& info = g.relation(r);
  if (info.src_type == info.dst_type) return Sum(g.degree(r, Side::kSrc));
  return Sum(g.degree(r, Side::kSrc)) + Sum(g.degree(r, Side::kDst));
}

TEST(LoadGraph, ThreeRowsTwoTypes) {
  const auto loaded = ParseGraph(
      "drug\td1\ttreats\tdisease\tx1\n"
      "drug\td2\ttreats\tdisease\tx1\n"
      "drug\td1\ttreats\tdisease\tx2\n");
  const HeteroGraph& g = loaded.graph;
  EXPECT_EQ(g.num_node_types(), 2);
  EXPECT_EQ(g.num_relations(), 1);
  EXPECT_EQ(g.num_edges(), 3);
  EXPECT_EQ(DegreeSum(g, 0), 6);
  EXPECT_EQ(loaded.summary.rows_read, 3);
  EXPECT_EQ(loaded.summary.rows_rejected, 0);
  // Contiguous indices in order of first appearance.
  EXPECT_EQ(g.schema().node_ids[0], (std::vector<std::string>{"d1", "d2"}));
  EXPECT_EQ(g.schema().node_ids[1], (std::vector<std::string>{"x1", "x2"}));
}

TEST(LoadGraph, EmptyInputHasNoEdges) {
  try {
    ParseGraph("");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "no edges");
  }
  EXPECT_THROW(ParseGraph("# only a comment\n"), Error);
}

TEST(LoadGraph, DuplicateRowsAreKeptAndCounted) {
  const auto g = ParseGraph(
                     "a\t1\tr\tb\t1\n"
                     "a\t1\tr\tb\t1\n"
                     "a\t1\tr\tb\t2\n"
                     "a\t2\tr\tb\t1\n")
                     .graph;
  EXPECT_EQ(g.num_edges(), 4);
  const auto src = g.degree(0, Side::kSrc);
  const auto dst = g.degree(0, Side::kDst);
  EXPECT_EQ(std::vector<int64_t>(src.begin(), src.end()),
            (std::vector<int64_t>{3, 1}));
  EXPECT_EQ(std::vector<int64_t>(dst.begin(), dst.end()),
            (std::vector<int64_t>{3, 1}));
}

TEST(LoadGraph, MalformedRowReportsLine) {
  try {
    ParseGraph("a\t1\tr\tb\t1\n# note\na\t2\tr\tb\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  try {
    ParseGraph("a\t1\tr\tb\t1\na\t\tr\tb\t2\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(LoadGraph, InconsistentRelationTypesRejected) {
  EXPECT_THROW(ParseGraph("a\t1\tr\tb\t1\nb\t1\tr\ta\t1\n"), ParseError);
}

TEST(LoadGraph, WhitelistCountsRejectedRows) {
  const auto loaded = ParseGraph(
      "a\t1\tkeep\tb\t1\n"
      "a\t1\tdrop\tb\t2\n"
      "a\t2\tdrop\tb\t2\n",
      std::vector<std::string>{"keep"});
  EXPECT_EQ(loaded.graph.num_relations(), 1);
  EXPECT_EQ(loaded.graph.num_edges(), 1);
  EXPECT_EQ(loaded.summary.rows_read, 3);
  EXPECT_EQ(loaded.summary.rows_rejected, 2);
}

TEST(LoadGraph, CommentsAndCrlfSkipped) {
  const auto loaded = ParseGraph("# header\r\na\t1\tr\tb\t1\r\n\n");
  EXPECT_EQ(loaded.graph.num_edges(), 1);
  EXPECT_EQ(loaded.summary.comment_lines, 1);
  EXPECT_EQ(loaded.graph.schema().node_ids[1][0], "1");
}

TEST(LoadGraph, WriteRoundTripPreservesDegreesAndIsolatedNodes) {
  auto schema = MakeIndexedSchema({{"u", 4}, {"v", 3}},
                                  {{"r0", 0, 1}, {"r1", 1, 1}, {"empty", 0, 0}});
  const HeteroGraph g(schema, {{{0, 1}, {2, 2}, {0, 1}}, {{0, 2}}, {}});
  const std::string dir = testing::TempDir("roundtrip");
  const std::string path = dir + "/g.tsv";
  WriteGraph(g, path);
  const HeteroGraph back = LoadGraph(path).graph;
  ASSERT_EQ(back.num_relations(), g.num_relations());
  ASSERT_EQ(back.num_node_types(), g.num_node_types());
  for (int32_t t = 0; t < g.num_node_types(); ++t) {
    EXPECT_EQ(back.num_nodes(t), g.num_nodes(t));
    EXPECT_EQ(back.schema().node_ids[t], g.schema().node_ids[t]);
  }
  for (int32_t r = 0; r < g.num_relations(); ++r) {
    EXPECT_EQ(back.relation(r).name, g.relation(r).name);
    for (const Side side : {Side::kSrc, Side::kDst}) {
      const auto a = g.degree(r, side);
      const auto b = back.degree(r, side);
      EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
    }
  }
}

TEST(HeteroGraph, RejectsOutOfRangeAndDuplicateNames) {
  auto schema = MakeIndexedSchema({{"u", 2}}, {{"r", 0, 0}});
  EXPECT_THROW(HeteroGraph(schema, {{{0, 2}}}), Error);
  auto dup = MakeIndexedSchema({{"u", 2}}, {{"r", 0, 0}, {"r", 0, 0}});
  EXPECT_THROW(HeteroGraph(dup, {{}, {}}), Error);
}

TEST(HeteroGraph, DegreeSumIsTwiceEdgeCount) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const HeteroGraph g = testing::RandomGraph(3, 7, 5, 40, seed);
    for (int32_t r = 0; r < g.num_relations(); ++r) {
      EXPECT_EQ(DegreeSum(g, r), 2 * static_cast<int64_t>(g.edges(r).size()));
      // Brute-force recount.
      const auto& info = g.relation(r);
      std::vector<int64_t> src(g.num_nodes(info.src_type));
      std::vector<int64_t> dst(g.num_nodes(info.dst_type));
      for (const Edge& e : g.edges(r)) {
        ++src[e.src];
        ++dst[e.dst];
      }
      const auto s = g.degree(r, Side::kSrc);
      const auto d = g.degree(r, Side::kDst);
      EXPECT_TRUE(std::equal(src.begin(), src.end(), s.begin(), s.end()));
      EXPECT_TRUE(std::equal(dst.begin(), dst.end(), d.begin(), d.end()));
    }
  }
}

TEST(HeteroGraph, SameTypeRelationCombinesBothSides) {
  auto schema = MakeIndexedSchema({{"p", 3}}, {{"likes", 0, 0}});
  const HeteroGraph g(schema, {{{0, 1}, {0, 2}, {1, 1}}});
  const auto src = g.degree(0, Side::kSrc);
  EXPECT_EQ(std::vector<int64_t>(src.begin(), src.end()),
            (std::vector<int64_t>{2, 3, 1}));
  const auto dst = g.degree(0, Side::kDst);
  EXPECT_TRUE(std::equal(src.begin(), src.end(), dst.begin(), dst.end()));
}

TEST(LabeledEdgeSet, TargetsMatchKind) {
  EXPECT_THROW(LabeledEdgeSet(LabeledEdgeSet::Kind::kGroundTruth, {{0, 0, 0}},
                              {0.5}),
               Error);
  EXPECT_THROW(LabeledEdgeSet(LabeledEdgeSet::Kind::kNegative, {{0, 0, 0}}, {1.0}),
               Error);
  EXPECT_THROW(LabeledEdgeSet(LabeledEdgeSet::Kind::kTeacherSoft, {{0, 0, 0}},
                              {1.0}),
               Error);
  EXPECT_THROW(LabeledEdgeSet(LabeledEdgeSet::Kind::kTeacherSoft, {{0, 0, 0}},
                              {0.0}),
               Error);
  EXPECT_NO_THROW(LabeledEdgeSet(LabeledEdgeSet::Kind::kTeacherSoft,
                                 {{0, 0, 0}}, {0.3}));
  auto schema = MakeIndexedSchema({{"u", 2}}, {{"r", 0, 0}});
  EXPECT_THROW(LabeledEdgeSet::GroundTruth({{0, 0, 2}}).Validate(*schema), Error);
  EXPECT_THROW(LabeledEdgeSet::GroundTruth({{1, 0, 0}}).Validate(*schema), Error);
}

TEST(SampleNegatives, FiftyInFiftyOut) {
  const HeteroGraph g = testing::RandomGraph(2, 30, 1, 50, 3);
  std::vector<Triple> pos;
  for (const Edge& e : g.edges(0)) pos.push_back({0, e.src, e.dst});
  Rng rng = MakeRng(1, "test");
  const auto sample = SampleNegatives(g, LabeledEdgeSet::GroundTruth(pos), rng);
  ASSERT_EQ(sample.negatives.size(), 50u);
  EXPECT_EQ(sample.negatives.kind(), LabeledEdgeSet::Kind::kNegative);
  for (size_t i = 0; i < pos.size(); ++i) {
    const Triple& n = sample.negatives.edges()[i];
    EXPECT_EQ(sample.negatives.targets()[i], 0.0);
    // Only the dst side is corrupted.
    EXPECT_EQ(n.relation, pos[i].relation);
    EXPECT_EQ(n.src, pos[i].src);
    EXPECT_FALSE(g.HasEdge(n));
  }
  EXPECT_EQ(sample.collisions, 0);
}

TEST(SampleNegatives, SingleDstNodeAlwaysCollides) {
  auto schema = MakeIndexedSchema({{"u", 60}, {"v", 1}}, {{"r", 0, 1}});
  std::vector<Edge> edges;
  for (int i = 0; i < 50; ++i) edges.push_back({i, 0});
  const HeteroGraph g(schema, {edges});
  std::vector<Triple> pos;
  for (const Edge& e : edges) pos.push_back({0, e.src, e.dst});
  Rng rng = MakeRng(2, "test");
  const auto sample = SampleNegatives(g, LabeledEdgeSet::GroundTruth(pos), rng);
  EXPECT_EQ(sample.negatives.size(), 50u);
  EXPECT_EQ(sample.collisions, 50);
}

TEST(SampleNegatives, RejectsPositivesOutsideTheGraph) {
  // Positives not in the known graph must not be produced either.
  auto schema = MakeIndexedSchema({{"u", 1}, {"v", 2}}, {{"r", 0, 1}});
  const HeteroGraph g(schema, {{{0, 0}}});
  const auto pos = LabeledEdgeSet::GroundTruth({{0, 0, 1}});
  Rng rng = MakeRng(3, "test");
  for (int i = 0; i < 20; ++i) {
    const auto s = SampleNegatives(g, pos, rng);
    EXPECT_EQ(s.collisions, 1);
  }
}

TEST(SampleNegatives, SeedDeterminesOutput) {
  const HeteroGraph g = testing::RandomGraph(2, 40, 2, 80, 9);
  std::vector<Triple> pos;
  for (int32_t r = 0; r < 2; ++r) {
    for (const Edge& e : g.edges(r)) pos.push_back({r, e.src, e.dst});
  }
  const auto set = LabeledEdgeSet::GroundTruth(pos);
  Rng a = MakeRng(7, "neg");
  Rng b = MakeRng(7, "neg");
  const auto x = SampleNegatives(g, set, a).negatives;
  const auto y = SampleNegatives(g, set, b).negatives;
  EXPECT_TRUE(std::equal(x.edges().begin(), x.edges().end(), y.edges().begin(),
                         y.edges().end()));
}

TEST(SampleNegatives, SourceCorruptionOption) {
  const HeteroGraph g = testing::RandomGraph(2, 40, 1, 30, 4);
  std::vector<Triple> pos;
  for (const Edge& e : g.edges(0)) pos.push_back({0, e.src, e.dst});
  Rng rng = MakeRng(5, "neg");
  NegativeSamplingOptions opts;
  opts.corrupt = Side::kSrc;
  const auto s = SampleNegatives(g, LabeledEdgeSet::GroundTruth(pos), rng, opts);
  for (size_t i = 0; i < pos.size(); ++i) {
    EXPECT_EQ(s.negatives.edges()[i].dst, pos[i].dst);
  }
}

TEST(SampleNegatives, EmptyPositivesRejected) {
  const HeteroGraph g = testing::RandomGraph(2, 4, 1, 3, 4);
  Rng rng = MakeRng(5, "neg");
  EXPECT_THROW(SampleNegatives(g, LabeledEdgeSet::GroundTruth({}), rng), Error);
}

TEST(Rng, StreamsDifferByPurposeAndSeed) {
  EXPECT_NE(DeriveSeed(1, "a"), DeriveSeed(1, "b"));
  EXPECT_NE(DeriveSeed(1, "a"), DeriveSeed(2, "a"));
  EXPECT_EQ(DeriveSeed(1, "a"), DeriveSeed(1, "a"));
}

}  // namespace
}  // namespace kgdistill
