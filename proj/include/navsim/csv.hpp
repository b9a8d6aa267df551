#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "navsim/simulate.hpp"

namespace navsim::io {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest round-trippable decimal form ("%.12g"); used for every numeric
/// cell so identical runs serialize to identical bytes.
std::string format_double(double v);

/// Per-tick log. First line is the comment `# schema=1`, then a header row,
/// then one row per tick. Optional cells (no measurement this tick, no
/// estimator in this mode, ...) are left empty.
void write_run_log(std::ostream& os, const std::vector<sim::LogRow>& rows);

void write_trajectory(std::ostream& os, const traj::Trajectory& t);

void write_metrics(std::ostream& os, const sim::RunMetrics& m);

/// Loosely typed CSV table: cells stay strings until a column is requested
/// as numbers. Lines starting with '#' are skipped.
struct ParsedTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_of_row;  ///< 1-based source line per row

  bool has_column(const std::string& name) const;
  std::size_t column_index(const std::string& name) const;

  /// Column as doubles; empty cells become NaN. Throws CsvError naming the
  /// column and source line for non-numeric cells.
  std::vector<double> numeric_column(const std::string& name) const;
};

/// Parses CSV from a stream. Throws CsvError with a line number for rows
/// whose cell count does not match the header.
ParsedTable read_csv(std::istream& is);

}  // namespace navsim::io
