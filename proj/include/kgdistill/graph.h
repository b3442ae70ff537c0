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

#ifndef KGDISTILL_GRAPH_H_
#define KGDISTILL_GRAPH_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kgdistill {

struct NodeType {
  std::string name;
  int32_t count = 0;
};

// A declared relation. Edges always point from a `src_type` node to a
// `dst_type` node.
struct RelationInfo {
  std::string name;
  int32_t src_type = 0;
  int32_t dst_type = 0;
};

struct Edge {
  int32_t src = 0;
  int32_t dst = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Triple {
  int32_t relation = 0;
  int32_t src = 0;
  int32_t dst = 0;
  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

enum class Side { kSrc, kDst };

// Node and relation vocabulary shared by a graph and every graph derived from
// it (e.g. the training graph of a split).
struct Schema {
  std::vector<NodeType> node_types;
  std::vector<RelationInfo> relations;
  // node_ids[t][i] is the external id of node i of type t.
  std::vector<std::vector<std::string>> node_ids;

  int32_t EndpointType(int32_t relation, Side side) const {
    const auto& r = relations[relation];
    return side == Side::kSrc ? r.src_type : r.dst_type;
  }
  std::optional<int32_t> FindRelation(std::string_view name) const;
  std::optional<int32_t> FindNodeType(std::string_view name) const;
};

// Heterogeneous knowledge graph with typed nodes and typed directed edges.
// Immutable after construction; the degree table is derived from the edges.
class HeteroGraph {
 public:
  // Validates that node types and relations are unique by name and that all
  // edge endpoints are in range. Throws kgdistill::Error otherwise.
  HeteroGraph(std::shared_ptr<const Schema> schema,
              std::vector<std::vector<Edge>> edges);

  // Same schema, different edges.
  HeteroGraph WithEdges(std::vector<std::vector<Edge>> edges) const;

  const Schema& schema() const { return *schema_; }
  const std::shared_ptr<const Schema>& shared_schema() const { return schema_; }

  int32_t num_node_types() const {
    return static_cast<int32_t>(schema_->node_types.size());
  }
  int32_t num_relations() const {
    return static_cast<int32_t>(schema_->relations.size());
  }
  int32_t num_nodes(int32_t type) const {
    return schema_->node_types[type].count;
  }
  const RelationInfo& relation(int32_t r) const {
    return schema_->relations[r];
  }
  std::span<const Edge> edges(int32_t r) const { return edges_[r]; }
  const std::vector<std::vector<Edge>>& all_edges() const { return edges_; }
  int64_t num_edges() const;

  // Number of times each node of the `side` endpoint type occurs as an
  // endpoint of relation `r`. When both endpoint types coincide, src and dst
  // occurrences are both counted and the two sides return the same vector.
  std::span<const int64_t> degree(int32_t r, Side side) const {
    return side == Side::kSrc ? src_degree_[r] : dst_degree_[r];
  }

  bool HasEdge(const Triple& t) const;

 private:
  std::shared_ptr<const Schema> schema_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<std::vector<int64_t>> src_degree_;
  std::vector<std::vector<int64_t>> dst_degree_;
  std::vector<std::unordered_set<uint64_t>> edge_index_;
};

inline uint64_t EdgeKey(int32_t src, int32_t dst) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(src)) << 32) |
         static_cast<uint32_t>(dst);
}

// (relation, src, dst, target) quadruples stored column-wise.
class LabeledEdgeSet {
 public:
  enum class Kind { kGroundTruth, kNegative, kTeacherSoft };

  LabeledEdgeSet() = default;
  LabeledEdgeSet(Kind kind, std::vector<Triple> edges,
                 std::vector<double> targets);

  static LabeledEdgeSet GroundTruth(std::vector<Triple> edges);
  static LabeledEdgeSet Negatives(std::vector<Triple> edges);

  Kind kind() const { return kind_; }
  size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  std::span<const Triple> edges() const { return edges_; }
  std::span<const double> targets() const { return targets_; }

  // Throws if a triple references an entity outside `schema`.
  void Validate(const Schema& schema) const;

 private:
  Kind kind_ = Kind::kGroundTruth;
  std::vector<Triple> edges_;
  std::vector<double> targets_;
};

struct LoadSummary {
  int64_t rows_read = 0;
  int64_t rows_rejected = 0;
  int64_t comment_lines = 0;
};

struct LoadedGraph {
  HeteroGraph graph;
  LoadSummary summary;
};

// Reads a tab-separated edge list with columns
//   src_type  src_id  relation  dst_type  dst_id
// Lines starting with '#' and blank lines are skipped. When `whitelist` is
// given, rows whose relation is not listed are counted as rejected.
LoadedGraph LoadGraph(const std::string& path,
                      const std::optional<std::vector<std::string>>& whitelist =
                          std::nullopt);

// Parses the same format from memory.
LoadedGraph ParseGraph(std::string_view text,
                       const std::optional<std::vector<std::string>>&
                           whitelist = std::nullopt);

// Writes `graph` in the 5-column format accepted by LoadGraph.
void WriteGraph(const HeteroGraph& graph, const std::string& path);

// Builds a schema whose node ids are "<type>:<index>".
std::shared_ptr<Schema> MakeIndexedSchema(std::vector<NodeType> node_types,
                                          std::vector<RelationInfo> relations);

}  // namespace kgdistill

#endif  // KGDISTILL_GRAPH_H_
