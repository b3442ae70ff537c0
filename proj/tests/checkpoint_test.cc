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

#include "kgdistill/checkpoint.h"

#include <cmath>
#include <cstring>
#include <limits>

#include "gtest/gtest.h"
#include "kgdistill/error.h"
#include "test_util.h"

namespace kgdistill {
namespace {

Checkpoint MakeCheckpoint() {
  const HeteroGraph g = testing::RandomGraph(3, 5, 4, 6, 2);
  Rng rng(11);
  Checkpoint c;
  c.params = InitParams(g.schema(), 7, 2, rng);
  c.params.node_embed[1](2, 3) = 1e-300;
  c.params.node_embed[1](0, 0) = -0.0;
  c.params.rel_embed[0](0, 0) = 0.1 + 0.2;
  c.dictionary = g.schema();
  c.config = {{"method", "flykd"}, {"seed", "45"}, {"keyframes", "0:1,0,0;1:0.05,0,1"}};
  return c;
}

TEST(Checkpoint, RoundTripIsBitExact) {
  const Checkpoint c = MakeCheckpoint();
  const Checkpoint back = ParseCheckpoint(SerializeCheckpoint(c));
  EXPECT_EQ(back.config, c.config);
  ASSERT_EQ(back.dictionary.node_types.size(), c.dictionary.node_types.size());
  for (size_t t = 0; t < c.dictionary.node_types.size(); ++t) {
    EXPECT_EQ(back.dictionary.node_types[t].name, c.dictionary.node_types[t].name);
    EXPECT_EQ(back.dictionary.node_ids[t], c.dictionary.node_ids[t]);
  }
  ASSERT_EQ(back.dictionary.relations.size(), c.dictionary.relations.size());
  for (size_t r = 0; r < c.dictionary.relations.size(); ++r) {
    EXPECT_EQ(back.dictionary.relations[r].name, c.dictionary.relations[r].name);
    EXPECT_EQ(back.dictionary.relations[r].src_type, c.dictionary.relations[r].src_type);
    EXPECT_EQ(back.dictionary.relations[r].dst_type, c.dictionary.relations[r].dst_type);
  }
  const auto a = c.params.Tensors();
  const auto b = back.params.Tensors();
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(back.params.dim, c.params.dim);
  for (size_t k = 0; k < a.size(); ++k) {
    ASSERT_EQ(a[k]->rows(), b[k]->rows());
    ASSERT_EQ(a[k]->cols(), b[k]->cols());
    EXPECT_EQ(0, std::memcmp(a[k]->data(), b[k]->data(), sizeof(double) * a[k]->size()));
  }
  EXPECT_EQ(SerializeCheckpoint(back), SerializeCheckpoint(c));
}

TEST(Checkpoint, FileRoundTrip) {
  const std::string dir = testing::TempDir("checkpoint");
  const Checkpoint c = MakeCheckpoint();
  SaveCheckpoint(c, dir + "/m.ckpt");
  EXPECT_EQ(SerializeCheckpoint(LoadCheckpoint(dir + "/m.ckpt")), SerializeCheckpoint(c));
  EXPECT_THROW(LoadCheckpoint(dir + "/missing.ckpt"), Error);
}

TEST(Checkpoint, TruncatedOrCorruptTextRejected) {
  const std::string text = SerializeCheckpoint(MakeCheckpoint());
  EXPECT_THROW(ParseCheckpoint(text.substr(0, text.size() / 2)), Error);
  EXPECT_THROW(ParseCheckpoint("not a checkpoint\n"), Error);
  EXPECT_THROW(ParseCheckpoint(""), Error);
}

TEST(FormatDoubleTest, RoundTripsAwkwardValues) {
  const double values[] = {0.1, 1.0 / 3.0, -2.5e-310, 1e308,
                           std::numeric_limits<double>::min(),
                           std::numeric_limits<double>::max(), 123456789.0};
  for (const double v : values) {
    const double back = ParseDouble(FormatDouble(v));
    EXPECT_EQ(0, std::memcmp(&v, &back, sizeof(double))) << FormatDouble(v);
  }
  EXPECT_THROW(ParseDouble("1.5x"), Error);
}

}  // namespace
}  // namespace kgdistill
