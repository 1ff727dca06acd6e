#include "multiweb/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "multiweb/errors.hpp"

namespace multiweb::io {

namespace {

using nlohmann::json;

std::string location(std::string_view text, std::size_t offset) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::size_t skip_string(std::string_view text, std::size_t i) {
  for (++i; i < text.size(); ++i) {
    if (text[i] == '\\') ++i;
    else if (text[i] == '"') return i;
  }
  return i;
}

// Offset of the value of top-level key `key`, or npos.
std::size_t key_offset(std::string_view text, std::string_view key) {
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '"') {
      const std::size_t end = skip_string(text, i);
      if (depth == 1 && text.substr(i + 1, end - i - 1) == key) {
        std::size_t j = end + 1;
        while (j < text.size() && (std::isspace(static_cast<unsigned char>(text[j])) || text[j] == ':'))
          ++j;
        return j;
      }
      i = end;
    } else if (c == '{' || c == '[') {
      ++depth;
    } else if (c == '}' || c == ']') {
      --depth;
    }
  }
  return std::string_view::npos;
}

// Offset of element `index` of the array starting at `start`.
std::size_t element_offset(std::string_view text, std::size_t start,
                           std::size_t index) {
  if (start == std::string_view::npos || start >= text.size()) return start;
  int depth = 0;
  std::size_t seen = 0;
  bool expecting = true;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (depth == 1 && expecting && c != ']') {
      if (seen == index) return i;
      expecting = false;
    }
    if (c == '"') {
      i = skip_string(text, i);
    } else if (c == '[' || c == '{') {
      ++depth;
    } else if (c == ']' || c == '}') {
      if (--depth == 0) break;
    } else if (c == ',' && depth == 1) {
      ++seen;
      expecting = true;
    }
  }
  return start;
}

[[noreturn]] void fail_at(std::string_view text, std::size_t offset,
                          const std::string& what, bool edge_error = false) {
  const std::string msg =
      (offset == std::string_view::npos ? std::string("graph JSON")
                                        : location(text, offset)) +
      ": " + what;
  if (edge_error) throw InvalidEdge(msg);
  throw InvalidArgument(msg);
}

}  // namespace

Graph parse_graph_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
    fail_at(text, at, "malformed JSON");
  }
  if (!doc.is_object()) fail_at(text, 0, "top level must be an object");
  for (const auto& [key, value] : doc.items())
    if (key != "vertex_count" && key != "edges" && key != "labels")
      fail_at(text, key_offset(text, key), "unknown key \"" + key + "\"");

  const std::size_t count_at = key_offset(text, "vertex_count");
  if (!doc.contains("vertex_count")) fail_at(text, 0, "missing \"vertex_count\"");
  const json& vc = doc["vertex_count"];
  if (!vc.is_number_integer() || vc.get<long long>() < 0 ||
      vc.get<long long>() > 1'000'000)
    fail_at(text, count_at, "\"vertex_count\" must be a non-negative integer");
  const int vertex_count = vc.get<int>();

  const std::size_t edges_at = key_offset(text, "edges");
  if (!doc.contains("edges")) fail_at(text, 0, "missing \"edges\"");
  const json& edges = doc["edges"];
  if (!edges.is_array()) fail_at(text, edges_at, "\"edges\" must be an array");

  std::vector<std::pair<int, int>> pairs;
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const json& e = edges[k];
    const std::size_t at = element_offset(text, edges_at, k);
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      fail_at(text, at, "edge " + std::to_string(k) + " must be [i, j] integers");
    const long long a = e[0].get<long long>(), b = e[1].get<long long>();
    if (a < 1 || b < 1 || a > vertex_count || b > vertex_count)
      fail_at(text, at, "edge " + std::to_string(k) + " endpoint outside 1.." +
                            std::to_string(vertex_count), true);
    if (a == b) fail_at(text, at, "edge " + std::to_string(k) + " is a self-loop", true);
    const std::pair<int, int> key{static_cast<int>(std::min(a, b)),
                                  static_cast<int>(std::max(a, b))};
    if (!seen.insert(key).second)
      fail_at(text, at, "edge " + std::to_string(k) + " is a duplicate", true);
    pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const json& l = doc["labels"];
    const std::size_t at = key_offset(text, "labels");
    if (!l.is_array() || l.size() != static_cast<std::size_t>(vertex_count))
      fail_at(text, at, "\"labels\" must list one string per vertex");
    for (const auto& s : l) {
      if (!s.is_string()) fail_at(text, at, "labels must be strings");
      labels.push_back(s.get<std::string>());
    }
  }
  return make_graph(vertex_count, pairs, std::move(labels));
}

Graph read_graph_json(const std::filesystem::path& path) {
  return parse_graph_json(read_file(path));
}

std::string graph_to_json(const Graph& g) {
  json doc;
  doc["vertex_count"] = g.vertex_count();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  doc["edges"] = std::move(edges);
  if (!g.labels().empty()) doc["labels"] = g.labels();
  return doc.dump() + "\n";
}

std::string format_double(double x) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, result.ptr);
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos)
    return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw InvalidArgument("unterminated quoted CSV field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_matrix_csv(std::ostream& out, const MatrixXd& m,
                      const std::vector<std::string>& column_labels,
                      const std::vector<std::string>& row_labels) {
  std::vector<std::string> header{"row"};
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    header.push_back(column_labels.empty() ? std::to_string(j)
                                           : column_labels.at(j));
  write_csv_row(out, header);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<std::string> fields{row_labels.empty() ? std::to_string(i)
                                                       : row_labels.at(i)};
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      fields.push_back(format_double(m(i, j)));
    write_csv_row(out, fields);
  }
}

std::string matrix_csv(const MatrixXd& m,
                       const std::vector<std::string>& column_labels,
                       const std::vector<std::string>& row_labels) {
  std::ostringstream out;
  write_matrix_csv(out, m, column_labels, row_labels);
  return out.str();
}

MatrixXd parse_matrix_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw InvalidArgument("empty CSV");
  const std::size_t cols = rows[0].size() - 1;
  MatrixXd m(rows.size() - 1, cols);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != cols + 1)
      throw InvalidArgument("CSV row " + std::to_string(i + 1) +
                            " has the wrong number of fields");
    for (std::size_t j = 0; j < cols; ++j) {
      const std::string& f = rows[i][j + 1];
      double x = 0.0;
      const auto r = std::from_chars(f.data(), f.data() + f.size(), x);
      if (r.ec != std::errc() || r.ptr != f.data() + f.size())
        throw InvalidArgument("CSV row " + std::to_string(i + 1) + ", field " +
                              std::to_string(j + 2) + ": not a number");
      m(i - 1, j) = x;
    }
  }
  return m;
}

void atomic_write(const std::filesystem::path& path, std::string_view contents) {
  const std::filesystem::path dir =
      path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  if (!std::filesystem::exists(dir)) std::filesystem::create_directories(dir);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw InvalidArgument("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace multiweb::io
