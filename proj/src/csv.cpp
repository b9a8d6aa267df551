#include "navsim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

namespace navsim::io {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

const char* kLogHeader =
    "tick,t,truth_x,truth_y,truth_theta,truth_v,meas_x,meas_y,"
    "est_x,est_y,est_theta,est_v,ref_x,ref_y,ref_theta,ref_v,"
    "u_alpha,u_delta,qp_status,qp_iters,qp_objective";

}  // namespace

void write_run_log(std::ostream& os, const std::vector<sim::LogRow>& rows) {
  os << "# schema=1\n" << kLogHeader << "\n";
  for (const auto& r : rows) {
    os << r.tick << ',' << format_double(r.t) << ','
       << format_double(r.truth.x) << ',' << format_double(r.truth.y) << ','
       << format_double(r.truth.theta) << ',' << format_double(r.truth.v)
       << ',';
    if (r.meas_xy) {
      os << format_double(r.meas_xy->x()) << ',' << format_double(r.meas_xy->y());
    } else {
      os << ',';
    }
    os << ',';
    if (r.est) {
      os << format_double(r.est->x) << ',' << format_double(r.est->y) << ','
         << format_double(r.est->theta) << ',' << format_double(r.est->v);
    } else {
      os << ",,,";
    }
    os << ',';
    if (r.ref) {
      os << format_double(r.ref->x) << ',' << format_double(r.ref->y) << ','
         << format_double(r.ref->theta) << ',' << format_double(r.ref->v);
    } else {
      os << ",,,";
    }
    os << ',' << format_double(r.u.alpha) << ',' << format_double(r.u.delta)
       << ',';
    if (r.qp) {
      os << qp::status_name(r.qp->status) << ',' << r.qp->iterations << ','
         << format_double(r.qp->objective);
    } else {
      os << ",,";
    }
    os << '\n';
  }
}

void write_trajectory(std::ostream& os, const traj::Trajectory& t) {
  os << "# schema=1\n";
  os << "x,y,theta,v,alpha_ref,delta_ref\n";
  for (const auto& p : t) {
    os << format_double(p.x) << ',' << format_double(p.y) << ','
       << format_double(p.theta) << ',' << format_double(p.v) << ','
       << format_double(p.u_ref.alpha) << ',' << format_double(p.u_ref.delta)
       << '\n';
  }
}

void write_metrics(std::ostream& os, const sim::RunMetrics& m) {
  os << "# schema=1\n";
  os << "source,avg_m,max_m,count\n";
  auto line = [&](const char* name, const metrics::ErrorStats& s) {
    os << name << ',' << format_double(s.avg) << ',' << format_double(s.max)
       << ',' << s.count << '\n';
  };
  line("meas_vs_truth", m.meas_vs_truth);
  line("est_vs_truth", m.est_vs_truth);
  line("truth_vs_ref", m.truth_vs_ref);
}

bool ParsedTable::has_column(const std::string& name) const {
  for (const auto& n : names) {
    if (n == name) return true;
  }
  return false;
}

std::size_t ParsedTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw CsvError("missing column '" + name + "'");
}

std::vector<double> ParsedTable::numeric_column(const std::string& name) const {
  const std::size_t col = column_index(name);
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string& cell = rows[i][col];
    if (cell.empty()) {
      out[i] = std::nan("");
      continue;
    }
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') {
      throw CsvError("column '" + name + "', line " +
                     std::to_string(line_of_row[i]) + ": '" + cell +
                     "' is not a number");
    }
    out[i] = v;
  }
  return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

ParsedTable read_csv(std::istream& is) {
  ParsedTable table;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_line(line);
    if (!have_header) {
      table.names = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.names.size()) {
      throw CsvError("line " + std::to_string(line_no) + ": expected " +
                     std::to_string(table.names.size()) + " cells, found " +
                     std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
    table.line_of_row.push_back(line_no);
  }
  if (!have_header) throw CsvError("no header row found");
  return table;
}

}  // namespace navsim::io
