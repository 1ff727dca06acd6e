#ifndef MULTIWEB_IO_HPP
#define MULTIWEB_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "multiweb/graph.hpp"
#include "multiweb/types.hpp"

namespace multiweb::io {

/// Reads {"vertex_count": int, "edges": [[i, j], ...]} with 1-based
/// vertices. Errors carry "line L, column C" of the offending token.
Graph parse_graph_json(std::string_view text);
Graph read_graph_json(const std::filesystem::path& path);
std::string graph_to_json(const Graph& g);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// Quotes a CSV field when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view field);

/// One CSV record terminated by LF.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Splits CSV text into records, honoring quoted fields.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Square or rectangular matrix with a header row "row,<col labels...>" and
/// one leading label per row.
void write_matrix_csv(std::ostream& out, const MatrixXd& m,
                      const std::vector<std::string>& column_labels = {},
                      const std::vector<std::string>& row_labels = {});
std::string matrix_csv(const MatrixXd& m,
                       const std::vector<std::string>& column_labels = {},
                       const std::vector<std::string>& row_labels = {});
/// Inverse of matrix_csv; values round-trip bit-exactly.
MatrixXd parse_matrix_csv(std::string_view text);

/// Writes `contents` to a temporary sibling of `path` and renames it over
/// `path`.
void atomic_write(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace multiweb::io

#endif  // MULTIWEB_IO_HPP
