// Copyright 2026 The Azana Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "azana/csv_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "azana/error.h"

namespace azana {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void Fail(const std::string& path, std::size_t line,
                       const std::string& message) {
  throw InputError(path + ":" + std::to_string(line) + ": " + message);
}

// Reads a CSV file into rows of trimmed fields, skipping blank lines. Line
// numbers are 1-based and refer to the file.
struct CsvRow {
  std::size_t line;
  std::vector<std::string> fields;
};

std::vector<CsvRow> ReadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (Trim(line).empty()) continue;
    rows.push_back({number, SplitCsvLine(line)});
  }
  if (rows.empty()) throw InputError("'" + path + "' is empty (header required)");
  return rows;
}

std::optional<long long> ParseInt(std::string_view text) {
  text = Trim(text);
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

void CheckHeader(const std::string& path, const CsvRow& header,
                 const std::vector<std::string>& expected) {
  std::vector<std::string> got;
  for (const auto& f : header.fields) got.emplace_back(Trim(f));
  if (got != expected) {
    std::string want;
    for (const auto& e : expected) want += (want.empty() ? "" : ",") + e;
    Fail(path, header.line, "expected header '" + want + "'");
  }
}

std::string Quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

}  // namespace

std::optional<ResidualFormat> ParseResidualFormat(std::string_view name) {
  if (name == "long" || name == "long_csv") return ResidualFormat::kLongCsv;
  if (name == "dense" || name == "dense_csv") return ResidualFormat::kDenseCsv;
  return std::nullopt;
}

std::string_view ToString(ResidualFormat format) {
  return format == ResidualFormat::kLongCsv ? "long_csv" : "dense_csv";
}

std::string FormatDouble(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::optional<double> ParseDouble(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(Trim(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.emplace_back(Trim(field));
  return fields;
}

ResidualField LoadResidualsLong(const std::string& path) {
  const std::vector<CsvRow> rows = ReadCsv(path);
  CheckHeader(path, rows[0], {"time", "sensor", "component", "value"});

  struct Entry {
    int time;
    int sensor;
    int component;
    std::optional<double> value;
  };
  std::vector<std::string> sensors;
  std::unordered_map<std::string, int> sensor_index;
  std::vector<Entry> entries;
  std::map<std::tuple<int, int, int>, std::size_t> seen;
  int num_steps = 0;
  int dim = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const CsvRow& row = rows[i];
    if (row.fields.size() != 4) Fail(path, row.line, "expected 4 columns");
    const auto t = ParseInt(row.fields[0]);
    if (!t || *t < 1) Fail(path, row.line, "time must be an integer >= 1");
    const std::string& id = row.fields[1];
    if (id.empty()) Fail(path, row.line, "empty sensor id");
    const auto c = ParseInt(row.fields[2]);
    if (!c || *c < 0) Fail(path, row.line, "component must be an integer >= 0");
    std::optional<double> value;
    if (!row.fields[3].empty()) {
      value = ParseDouble(row.fields[3]);
      if (!value) Fail(path, row.line, "non-numeric value '" + row.fields[3] + "'");
      if (!std::isfinite(*value)) Fail(path, row.line, "non-finite value");
    }
    auto [it, inserted] =
        sensor_index.emplace(id, static_cast<int>(sensors.size()));
    if (inserted) sensors.push_back(id);
    const auto key = std::make_tuple(static_cast<int>(*t), it->second,
                                     static_cast<int>(*c));
    if (auto [pos, fresh] = seen.emplace(key, row.line); !fresh) {
      Fail(path, row.line,
           "duplicate (time, sensor, component) row; first seen on line " +
               std::to_string(pos->second));
    }
    entries.push_back({static_cast<int>(*t), it->second, static_cast<int>(*c),
                       value});
    num_steps = std::max(num_steps, static_cast<int>(*t));
    dim = std::max(dim, static_cast<int>(*c) + 1);
  }
  if (entries.empty()) throw InputError("'" + path + "' has no data rows");

  // Group per cell, then require complete vectors.
  std::map<std::pair<int, int>, std::vector<std::optional<double>>> cells;
  for (const Entry& e : entries) {
    auto& vec = cells[{e.time, e.sensor}];
    if (vec.empty()) vec.assign(dim, std::nullopt);
    vec[e.component] = e.value;
  }
  ResidualField field(num_steps, dim, sensors);
  std::vector<double> buffer(dim);
  for (const auto& [cell, vec] : cells) {
    const auto present =
        std::count_if(vec.begin(), vec.end(), [](auto& v) { return v.has_value(); });
    if (present == 0) continue;
    if (present != dim) {
      throw InputError(path + ": residual at (time " + std::to_string(cell.first) +
                       ", sensor '" + sensors[cell.second] + "') has " +
                       std::to_string(present) + " of " + std::to_string(dim) +
                       " components");
    }
    for (int c = 0; c < dim; ++c) buffer[c] = *vec[c];
    field.Set(cell.first, cell.second, buffer);
  }
  return field;
}

ResidualField LoadResidualsDense(const std::vector<std::string>& paths) {
  if (paths.empty()) throw InputError("no dense residual files given");
  std::vector<std::string> sensors;
  // values[c][(t, s)]
  std::vector<std::map<std::pair<int, int>, double>> values(paths.size());
  std::set<int> times;
  for (std::size_t c = 0; c < paths.size(); ++c) {
    const std::string& path = paths[c];
    const std::vector<CsvRow> rows = ReadCsv(path);
    std::vector<std::string> header(rows[0].fields.begin() + 1,
                                    rows[0].fields.end());
    if (rows[0].fields.size() < 2) Fail(path, rows[0].line, "no sensor columns");
    if (std::set<std::string>(header.begin(), header.end()).size() !=
        header.size()) {
      Fail(path, rows[0].line, "duplicate sensor id in header");
    }
    if (c == 0) {
      sensors = header;
    } else if (header != sensors) {
      Fail(path, rows[0].line, "sensor columns differ from '" + paths[0] + "'");
    }
    std::set<int> file_times;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const CsvRow& row = rows[i];
      if (row.fields.size() != sensors.size() + 1) {
        Fail(path, row.line, "expected " + std::to_string(sensors.size() + 1) +
                                 " columns");
      }
      const auto t = ParseInt(row.fields[0]);
      if (!t || *t < 1) Fail(path, row.line, "time must be an integer >= 1");
      if (!file_times.insert(static_cast<int>(*t)).second) {
        Fail(path, row.line, "duplicate time " + row.fields[0]);
      }
      for (std::size_t s = 0; s < sensors.size(); ++s) {
        const std::string& cell = row.fields[s + 1];
        if (cell.empty()) continue;
        const auto value = ParseDouble(cell);
        if (!value) Fail(path, row.line, "non-numeric value '" + cell + "'");
        if (!std::isfinite(*value)) Fail(path, row.line, "non-finite value");
        values[c][{static_cast<int>(*t), static_cast<int>(s)}] = *value;
      }
    }
    if (file_times.empty()) throw InputError("'" + path + "' has no data rows");
    if (c == 0) {
      times = file_times;
    } else if (file_times != times) {
      throw InputError("'" + path + "' covers different time steps than '" +
                       paths[0] + "'");
    }
  }
  const int num_steps = *times.rbegin();
  const int dim = static_cast<int>(paths.size());
  ResidualField field(num_steps, dim, sensors);
  std::vector<double> buffer(dim);
  for (const auto& [cell, first] : values[0]) {
    buffer[0] = first;
    for (int c = 1; c < dim; ++c) {
      auto it = values[c].find(cell);
      if (it == values[c].end()) {
        throw InputError("'" + paths[c] + "' lacks a value at (time " +
                         std::to_string(cell.first) + ", sensor '" +
                         sensors[cell.second] + "') present in '" + paths[0] +
                         "'");
      }
      buffer[c] = it->second;
    }
    field.Set(cell.first, cell.second, buffer);
  }
  for (int c = 1; c < dim; ++c) {
    if (values[c].size() != values[0].size()) {
      throw InputError("'" + paths[c] + "' has values where '" + paths[0] +
                       "' is empty");
    }
  }
  return field;
}

ResidualField LoadResiduals(const std::vector<std::string>& paths,
                            ResidualFormat format) {
  if (format == ResidualFormat::kDenseCsv) return LoadResidualsDense(paths);
  if (paths.size() != 1) {
    throw InputError("long residual format expects exactly one file");
  }
  return LoadResidualsLong(paths[0]);
}

std::vector<GraphSnapshot> LoadEdges(const std::string& path, int num_steps) {
  if (num_steps < 1) throw InputError("edge loading needs T >= 1");
  const std::vector<CsvRow> rows = ReadCsv(path);
  CheckHeader(path, rows[0], {"time", "src", "dst", "weight", "directed"});

  std::vector<GraphSnapshot> snapshots(num_steps);
  std::vector<std::set<std::string>> nodes(num_steps);
  for (int t = 0; t < num_steps; ++t) snapshots[t].time = t + 1;

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const CsvRow& row = rows[i];
    if (row.fields.size() != 5) Fail(path, row.line, "expected 5 columns");
    SnapshotEdge edge;
    edge.src = row.fields[1];
    edge.dst = row.fields[2];
    if (edge.src.empty() || edge.dst.empty()) {
      Fail(path, row.line, "empty node id");
    }
    if (edge.src == edge.dst) Fail(path, row.line, "self-loop on '" + edge.src + "'");
    const auto weight = ParseDouble(row.fields[3]);
    if (!weight) Fail(path, row.line, "non-numeric weight '" + row.fields[3] + "'");
    if (!std::isfinite(*weight) || *weight <= 0.0) {
      Fail(path, row.line, "weight must be positive and finite");
    }
    edge.weight = *weight;
    if (row.fields[4] == "0") {
      edge.directed = false;
    } else if (row.fields[4] == "1") {
      edge.directed = true;
    } else {
      Fail(path, row.line, "directed must be 0 or 1");
    }
    int first = 1;
    int last = num_steps;
    if (row.fields[0] != "*") {
      const auto t = ParseInt(row.fields[0]);
      if (!t || *t < 1 || *t > num_steps) {
        Fail(path, row.line, "time '" + row.fields[0] + "' outside 1.." +
                                 std::to_string(num_steps));
      }
      first = last = static_cast<int>(*t);
    }
    for (int t = first; t <= last; ++t) {
      snapshots[t - 1].edges.push_back(edge);
      nodes[t - 1].insert(edge.src);
      nodes[t - 1].insert(edge.dst);
    }
  }
  for (int t = 0; t < num_steps; ++t) {
    snapshots[t].nodes.assign(nodes[t].begin(), nodes[t].end());
  }
  return snapshots;
}

void WriteResidualsLong(const ResidualField& residuals,
                        const std::string& path) {
  std::ofstream out = OpenOutput(path);
  out << "time,sensor,component,value\n";
  for (int t = 1; t <= residuals.num_steps(); ++t) {
    for (int s = 0; s < residuals.num_sensors(); ++s) {
      if (!residuals.available(t, s)) continue;
      const auto r = residuals.at(t, s);
      for (int c = 0; c < residuals.component_dim(); ++c) {
        out << t << ',' << Quote(residuals.sensors()[s]) << ',' << c << ','
            << FormatDouble(r[c]) << '\n';
      }
    }
  }
  if (!out) throw InputError("failed writing '" + path + "'");
}

std::vector<std::string> WriteResidualsDense(const ResidualField& residuals,
                                             const std::string& path) {
  std::vector<std::string> paths;
  const int dim = residuals.component_dim();
  if (dim == 1) {
    paths.push_back(path);
  } else {
    const std::filesystem::path p(path);
    for (int c = 0; c < dim; ++c) {
      paths.push_back((p.parent_path() / (p.stem().string() + "_c" +
                                          std::to_string(c) +
                                          p.extension().string()))
                          .string());
    }
  }
  for (int c = 0; c < dim; ++c) {
    std::ofstream out = OpenOutput(paths[c]);
    out << "time";
    for (const auto& id : residuals.sensors()) out << ',' << Quote(id);
    out << '\n';
    for (int t = 1; t <= residuals.num_steps(); ++t) {
      out << t;
      for (int s = 0; s < residuals.num_sensors(); ++s) {
        out << ',';
        if (residuals.available(t, s)) out << FormatDouble(residuals.at(t, s)[c]);
      }
      out << '\n';
    }
    if (!out) throw InputError("failed writing '" + paths[c] + "'");
  }
  return paths;
}

void WriteEdges(const std::vector<GraphSnapshot>& snapshots,
                const std::string& path) {
  auto key = [](const SnapshotEdge& e) {
    return std::make_tuple(e.src, e.dst, e.weight, e.directed);
  };
  using Key = decltype(key(SnapshotEdge{}));
  std::map<Key, std::size_t> counts;
  for (const auto& snap : snapshots) {
    for (const auto& e : snap.edges) ++counts[key(e)];
  }
  std::ofstream out = OpenOutput(path);
  out << "time,src,dst,weight,directed\n";
  auto write = [&](const std::string& time, const SnapshotEdge& e) {
    out << time << ',' << Quote(e.src) << ',' << Quote(e.dst) << ','
        << FormatDouble(e.weight) << ',' << (e.directed ? 1 : 0) << '\n';
  };
  // Static rows first, in the order of the first snapshot.
  if (!snapshots.empty()) {
    for (const auto& e : snapshots.front().edges) {
      if (counts[key(e)] == snapshots.size()) write("*", e);
    }
  }
  for (const auto& snap : snapshots) {
    for (const auto& e : snap.edges) {
      if (counts[key(e)] != snapshots.size()) {
        write(std::to_string(snap.time), e);
      }
    }
  }
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace azana
