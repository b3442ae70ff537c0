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

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "kgdistill/error.h"

namespace kgdistill {
namespace {

constexpr std::string_view kMagic = "kgdistill-checkpoint";

// Line-oriented reader with 1-based line numbers for error messages.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  std::string_view Next() {
    if (pos_ >= text_.size()) throw ParseError("unexpected end of checkpoint", line_ + 1);
    size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    return line;
  }
  int line() const { return line_; }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 0;
};

std::vector<std::string_view> Fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t p = line.find(sep, start);
    if (p == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, p - start));
    start = p + 1;
  }
}

int64_t ParseInt(std::string_view s, int line) {
  int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("expected an integer, got '" + std::string(s) + "'", line);
  }
  return v;
}

// Expects "<keyword> <count>" and returns count.
int64_t Header(LineReader& in, std::string_view keyword) {
  const auto line = in.Next();
  const auto f = Fields(line, ' ');
  if (f.size() != 2 || f[0] != keyword) {
    throw ParseError("expected '" + std::string(keyword) + " <n>'", in.line());
  }
  return ParseInt(f[1], in.line());
}

void WriteTensor(std::ostringstream& out, const std::string& name,
                 const Matrix& m) {
  out << "tensor " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << FormatDouble(m(i, j));
    }
    out << '\n';
  }
}

Matrix ReadTensor(LineReader& in, const std::string& expected_name) {
  const auto f = Fields(in.Next(), ' ');
  if (f.size() != 4 || f[0] != "tensor" || f[1] != expected_name) {
    throw ParseError("expected tensor " + expected_name, in.line());
  }
  const auto rows = ParseInt(f[2], in.line());
  const auto cols = ParseInt(f[3], in.line());
  Matrix m(rows, cols);
  for (int64_t i = 0; i < rows; ++i) {
    const auto values = Fields(in.Next(), ' ');
    if (static_cast<int64_t>(values.size()) != cols) {
      throw ParseError("tensor row has wrong length", in.line());
    }
    for (int64_t j = 0; j < cols; ++j) {
      try {
        m(i, j) = ParseDouble(values[j]);
      } catch (const Error& e) {
        throw ParseError(e.what(), in.line());
      }
    }
  }
  return m;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("cannot format double");
  return std::string(buf, ptr);
}

double ParseDouble(std::string_view text) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

std::string SerializeCheckpoint(const Checkpoint& ck) {
  std::ostringstream out;
  out << kMagic << ' ' << kCheckpointVersion << '\n';
  out << "config " << ck.config.size() << '\n';
  for (const auto& [key, value] : ck.config) {
    if (key.find_first_of("=\n") != std::string::npos ||
        value.find('\n') != std::string::npos) {
      throw Error("checkpoint config entries cannot contain newlines or '='");
    }
    out << key << '=' << value << '\n';
  }
  const Schema& s = ck.dictionary;
  out << "node_types " << s.node_types.size() << '\n';
  for (size_t t = 0; t < s.node_types.size(); ++t) {
    out << s.node_types[t].name << '\t' << s.node_types[t].count << '\n';
    for (const auto& id : s.node_ids[t]) out << id << '\n';
  }
  out << "relations " << s.relations.size() << '\n';
  for (const auto& r : s.relations) {
    out << r.name << '\t' << r.src_type << '\t' << r.dst_type << '\n';
  }
  const ModelParams& p = ck.params;
  out << "dim " << p.dim << '\n';
  out << "layers " << p.num_layers() << '\n';
  out << "directions " << (p.layer_weights.empty() ? 0 : p.layer_weights[0].size())
      << '\n';
  const auto names = p.TensorNames();
  const auto tensors = p.Tensors();
  for (size_t i = 0; i < tensors.size(); ++i) WriteTensor(out, names[i], *tensors[i]);
  out << "end\n";
  return out.str();
}

Checkpoint ParseCheckpoint(std::string_view text) {
  LineReader in(text);
  {
    const auto f = Fields(in.Next(), ' ');
    if (f.size() != 2 || f[0] != kMagic) throw ParseError("not a checkpoint", 1);
    if (ParseInt(f[1], 1) != kCheckpointVersion) {
      throw ParseError("unsupported checkpoint version", 1);
    }
  }
  Checkpoint ck;
  const auto n_config = Header(in, "config");
  for (int64_t i = 0; i < n_config; ++i) {
    const auto line = in.Next();
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", in.line());
    ck.config.emplace(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
  }
  Schema& s = ck.dictionary;
  const auto n_types = Header(in, "node_types");
  for (int64_t t = 0; t < n_types; ++t) {
    const auto f = Fields(in.Next(), '\t');
    if (f.size() != 2) throw ParseError("expected '<type>\\t<count>'", in.line());
    const auto count = ParseInt(f[1], in.line());
    s.node_types.push_back({std::string(f[0]), static_cast<int32_t>(count)});
    auto& ids = s.node_ids.emplace_back();
    for (int64_t i = 0; i < count; ++i) ids.emplace_back(in.Next());
  }
  const auto n_rel = Header(in, "relations");
  for (int64_t r = 0; r < n_rel; ++r) {
    const auto f = Fields(in.Next(), '\t');
    if (f.size() != 3) throw ParseError("expected relation descriptor", in.line());
    s.relations.push_back({std::string(f[0]),
                           static_cast<int32_t>(ParseInt(f[1], in.line())),
                           static_cast<int32_t>(ParseInt(f[2], in.line()))});
  }
  ModelParams& p = ck.params;
  p.dim = static_cast<int>(Header(in, "dim"));
  const auto n_layers = Header(in, "layers");
  const auto n_dirs = Header(in, "directions");
  p.node_embed.resize(n_types);
  p.rel_embed.resize(n_rel);
  p.layer_weights.assign(n_layers, std::vector<Matrix>(n_dirs));
  p.self_weights.resize(n_layers);
  const auto names = p.TensorNames();
  const auto tensors = p.Tensors();
  for (size_t i = 0; i < tensors.size(); ++i) *tensors[i] = ReadTensor(in, names[i]);
  if (in.Next() != "end") throw ParseError("expected 'end'", in.line());
  return ck;
}

void SaveCheckpoint(const Checkpoint& checkpoint, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write '" + tmp + "'");
    out << SerializeCheckpoint(checkpoint);
    if (!out) throw Error("write failed for '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCheckpoint(buffer.str());
}

}  // namespace kgdistill
