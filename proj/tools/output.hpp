#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace gapbench::cli {

/// Shortest round-trip decimal form; identical input gives identical text.
std::string format_number(double value);

/// Subcommand parameters as seen after parsing, in declaration order. Echoed
/// into every output file.
struct RunConfig {
  std::string command;
  std::vector<std::pair<std::string, std::string>> entries;

  std::string value(const std::string& key) const;
  /// "gapbench <version>", "command: ...", one "key = value" per entry.
  std::vector<std::string> provenance() const;
};

/// CSV with a '#'-prefixed provenance block, a header row, then rows.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> cells);
  std::size_t row_count() const { return rows_.size(); }

  void write(std::ostream& out, const RunConfig& config) const;

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
  bool markers = true;  ///< scatter markers; otherwise a polyline
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotSeries> series;
};

/// Minimal standalone SVG line/scatter chart.
std::string render_svg(const Chart& plot, const RunConfig& config);

/// Writes `text` to `path`, or throws InvalidInput.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace gapbench::cli
