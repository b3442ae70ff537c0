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

#include <fstream>
#include <sstream>
#include <utility>

#include "kgdistill/error.h"

namespace kgdistill {

std::optional<int32_t> Schema::FindRelation(std::string_view name) const {
  for (size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].name == name) return static_cast<int32_t>(i);
  }
  return std::nullopt;
}

std::optional<int32_t> Schema::FindNodeType(std::string_view name) const {
  for (size_t i = 0; i < node_types.size(); ++i) {
    if (node_types[i].name == name) return static_cast<int32_t>(i);
  }
  return std::nullopt;
}

HeteroGraph::HeteroGraph(std::shared_ptr<const Schema> schema,
                         std::vector<std::vector<Edge>> edges)
    : schema_(std::move(schema)), edges_(std::move(edges)) {
  if (!schema_) throw Error("graph without schema");
  const Schema& s = *schema_;
  {
    std::unordered_set<std::string> names;
    for (const auto& t : s.node_types) {
      if (t.count < 0) throw Error("negative node count for type " + t.name);
      if (!names.insert(t.name).second) {
        throw Error("duplicate node type '" + t.name + "'");
      }
    }
  }
  {
    std::unordered_set<std::string> names;
    for (const auto& r : s.relations) {
      if (!names.insert(r.name).second) {
        throw Error("duplicate relation '" + r.name + "'");
      }
      const auto n_types = static_cast<int32_t>(s.node_types.size());
      if (r.src_type < 0 || r.src_type >= n_types || r.dst_type < 0 ||
          r.dst_type >= n_types) {
        throw Error("relation '" + r.name + "' references unknown node type");
      }
    }
  }
  if (edges_.size() != s.relations.size()) {
    throw Error("edge lists do not match the relation count");
  }

  const int32_t n_rel = num_relations();
  src_degree_.resize(n_rel);
  dst_degree_.resize(n_rel);
  edge_index_.resize(n_rel);
  for (int32_t r = 0; r < n_rel; ++r) {
    const auto& info = s.relations[r];
    const int32_t n_src = s.node_types[info.src_type].count;
    const int32_t n_dst = s.node_types[info.dst_type].count;
    std::vector<int64_t> src_deg(n_src, 0);
    std::vector<int64_t> dst_deg(n_dst, 0);
    edge_index_[r].reserve(edges_[r].size());
    for (const Edge& e : edges_[r]) {
      if (e.src < 0 || e.src >= n_src || e.dst < 0 || e.dst >= n_dst) {
        throw Error("edge (" + std::to_string(e.src) + ", " +
                    std::to_string(e.dst) + ") out of range for relation '" +
                    info.name + "'");
      }
      ++src_deg[e.src];
      ++dst_deg[e.dst];
      edge_index_[r].insert(EdgeKey(e.src, e.dst));
    }
    if (info.src_type == info.dst_type) {
      for (int32_t v = 0; v < n_src; ++v) src_deg[v] += dst_deg[v];
      dst_deg = src_deg;
    }
    src_degree_[r] = std::move(src_deg);
    dst_degree_[r] = std::move(dst_deg);
  }
}

HeteroGraph HeteroGraph::WithEdges(std::vector<std::vector<Edge>> edges) const {
  return HeteroGraph(schema_, std::move(edges));
}

int64_t HeteroGraph::num_edges() const {
  int64_t n = 0;
  for (const auto& e : edges_) n += static_cast<int64_t>(e.size());
  return n;
}

bool HeteroGraph::HasEdge(const Triple& t) const {
  if (t.relation < 0 || t.relation >= num_relations()) return false;
  return edge_index_[t.relation].contains(EdgeKey(t.src, t.dst));
}

LabeledEdgeSet::LabeledEdgeSet(Kind kind, std::vector<Triple> edges,
                               std::vector<double> targets)
    : kind_(kind), edges_(std::move(edges)), targets_(std::move(targets)) {
  if (edges_.size() != targets_.size()) {
    throw Error("labeled edge set: edge and target counts differ");
  }
  for (const double y : targets_) {
    const bool ok = kind_ == Kind::kGroundTruth ? y == 1.0
                    : kind_ == Kind::kNegative  ? y == 0.0
                                                : (y > 0.0 && y < 1.0);
    if (!ok) {
      throw Error("labeled edge set: target " + std::to_string(y) +
                  " is invalid for its kind");
    }
  }
}

LabeledEdgeSet LabeledEdgeSet::GroundTruth(std::vector<Triple> edges) {
  std::vector<double> targets(edges.size(), 1.0);
  return LabeledEdgeSet(Kind::kGroundTruth, std::move(edges),
                        std::move(targets));
}

LabeledEdgeSet LabeledEdgeSet::Negatives(std::vector<Triple> edges) {
  std::vector<double> targets(edges.size(), 0.0);
  return LabeledEdgeSet(Kind::kNegative, std::move(edges), std::move(targets));
}

void LabeledEdgeSet::Validate(const Schema& schema) const {
  const auto n_rel = static_cast<int32_t>(schema.relations.size());
  for (const Triple& t : edges_) {
    if (t.relation < 0 || t.relation >= n_rel) {
      throw Error("labeled edge references unknown relation " +
                  std::to_string(t.relation));
    }
    const auto& r = schema.relations[t.relation];
    if (t.src < 0 || t.src >= schema.node_types[r.src_type].count ||
        t.dst < 0 || t.dst >= schema.node_types[r.dst_type].count) {
      throw Error("labeled edge out of range for relation '" + r.name + "'");
    }
  }
}

namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

// Incrementally assembles a schema while reading rows.
class GraphBuilder {
 public:
  int32_t NodeTypeIndex(std::string_view name) {
    auto it = type_index_.find(std::string(name));
    if (it != type_index_.end()) return it->second;
    const auto idx = static_cast<int32_t>(schema_->node_types.size());
    schema_->node_types.push_back({std::string(name), 0});
    schema_->node_ids.emplace_back();
    node_index_.emplace_back();
    type_index_.emplace(std::string(name), idx);
    return idx;
  }

  int32_t NodeIndex(int32_t type, std::string_view id) {
    auto& index = node_index_[type];
    auto it = index.find(std::string(id));
    if (it != index.end()) return it->second;
    const int32_t idx = schema_->node_types[type].count++;
    schema_->node_ids[type].emplace_back(id);
    index.emplace(std::string(id), idx);
    return idx;
  }

  // Returns the relation index, declaring it on first use. Throws if the
  // endpoint types disagree with an earlier declaration.
  int32_t RelationIndex(std::string_view name, int32_t src_type,
                        int32_t dst_type, int line) {
    auto it = relation_index_.find(std::string(name));
    if (it != relation_index_.end()) {
      const auto& r = schema_->relations[it->second];
      if (r.src_type != src_type || r.dst_type != dst_type) {
        throw ParseError("relation '" + std::string(name) +
                             "' used with inconsistent endpoint types",
                         line);
      }
      return it->second;
    }
    const auto idx = static_cast<int32_t>(schema_->relations.size());
    schema_->relations.push_back({std::string(name), src_type, dst_type});
    relation_index_.emplace(std::string(name), idx);
    edges_.emplace_back();
    return idx;
  }

  void AddEdge(int32_t relation, int32_t src, int32_t dst) {
    edges_[relation].push_back({src, dst});
  }

  int64_t edge_count() const {
    int64_t n = 0;
    for (const auto& e : edges_) n += static_cast<int64_t>(e.size());
    return n;
  }

  HeteroGraph Build() && { return HeteroGraph(schema_, std::move(edges_)); }

 private:
  std::shared_ptr<Schema> schema_ = std::make_shared<Schema>();
  std::unordered_map<std::string, int32_t> type_index_;
  std::vector<std::unordered_map<std::string, int32_t>> node_index_;
  std::unordered_map<std::string, int32_t> relation_index_;
  std::vector<std::vector<Edge>> edges_;
};

// Declaration pragmas written by WriteGraph. Other readers treat them as
// comments; here they pin node and relation order so isolated nodes and
// empty relations survive a round trip.
constexpr std::string_view kNodePragma = "#node\t";
constexpr std::string_view kRelationPragma = "#relation\t";

}  // namespace

LoadedGraph ParseGraph(std::string_view text,
                       const std::optional<std::vector<std::string>>&
                           whitelist) {
  std::unordered_set<std::string> allowed;
  if (whitelist) allowed.insert(whitelist->begin(), whitelist->end());

  GraphBuilder builder;
  LoadSummary summary;
  int line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with(kNodePragma)) {
        const auto f = SplitTabs(line.substr(kNodePragma.size()));
        if (f.size() != 2) throw ParseError("malformed node declaration", line_no);
        builder.NodeIndex(builder.NodeTypeIndex(f[0]), f[1]);
      } else if (line.starts_with(kRelationPragma)) {
        const auto f = SplitTabs(line.substr(kRelationPragma.size()));
        if (f.size() != 3) {
          throw ParseError("malformed relation declaration", line_no);
        }
        if (!whitelist || allowed.contains(std::string(f[0]))) {
          builder.RelationIndex(f[0], builder.NodeTypeIndex(f[1]),
                                builder.NodeTypeIndex(f[2]), line_no);
        }
      } else {
        ++summary.comment_lines;
      }
      continue;
    }
    const auto fields = SplitTabs(line);
    if (fields.size() != 5) {
      throw ParseError("expected 5 tab-separated columns, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    for (const auto& f : fields) {
      if (f.empty()) throw ParseError("empty column", line_no);
    }
    ++summary.rows_read;
    if (whitelist && !allowed.contains(std::string(fields[2]))) {
      ++summary.rows_rejected;
      continue;
    }
    const int32_t src_type = builder.NodeTypeIndex(fields[0]);
    const int32_t dst_type = builder.NodeTypeIndex(fields[3]);
    const int32_t rel =
        builder.RelationIndex(fields[2], src_type, dst_type, line_no);
    const int32_t src = builder.NodeIndex(src_type, fields[1]);
    const int32_t dst = builder.NodeIndex(dst_type, fields[4]);
    builder.AddEdge(rel, src, dst);
  }
  if (builder.edge_count() == 0) throw Error("no edges");
  return {std::move(builder).Build(), summary};
}

LoadedGraph LoadGraph(const std::string& path,
                      const std::optional<std::vector<std::string>>& whitelist) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseGraph(buffer.str(), whitelist);
}

void WriteGraph(const HeteroGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  const Schema& s = graph.schema();
  for (size_t t = 0; t < s.node_types.size(); ++t) {
    for (const auto& id : s.node_ids[t]) {
      out << kNodePragma << s.node_types[t].name << '\t' << id << '\n';
    }
  }
  for (const auto& r : s.relations) {
    out << kRelationPragma << r.name << '\t'
        << s.node_types[r.src_type].name << '\t'
        << s.node_types[r.dst_type].name << '\n';
  }
  for (int32_t r = 0; r < graph.num_relations(); ++r) {
    const auto& info = s.relations[r];
    const auto& src_name = s.node_types[info.src_type].name;
    const auto& dst_name = s.node_types[info.dst_type].name;
    for (const Edge& e : graph.edges(r)) {
      out << src_name << '\t' << s.node_ids[info.src_type][e.src] << '\t'
          << info.name << '\t' << dst_name << '\t'
          << s.node_ids[info.dst_type][e.dst] << '\n';
    }
  }
  if (!out) throw Error("write failed for '" + path + "'");
}

std::shared_ptr<Schema> MakeIndexedSchema(std::vector<NodeType> node_types,
                                          std::vector<RelationInfo> relations) {
  auto schema = std::make_shared<Schema>();
  schema->node_types = std::move(node_types);
  schema->relations = std::move(relations);
  for (const auto& t : schema->node_types) {
    auto& ids = schema->node_ids.emplace_back();
    ids.reserve(t.count);
    for (int32_t i = 0; i < t.count; ++i) {
      ids.push_back(t.name + ":" + std::to_string(i));
    }
  }
  return schema;
}

}  // namespace kgdistill
