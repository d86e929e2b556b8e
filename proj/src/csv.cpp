#include "rswr/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "rswr/errors.hpp"

namespace rswr::csv {

namespace {

std::vector<double> parse_row(const std::string& line, std::size_t line_no) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t comma = line.find(',', pos);
    const std::string cell =
        line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size() || (errno == ERANGE && std::isinf(v))) {
      throw InvalidInput("csv line " + std::to_string(line_no) + ": bad number '" + cell + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) {
      break;
    }
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_solution(std::ostream& out, const FieldSlab& slab, std::size_t stride) {
  if (stride == 0) {
    throw InvalidInput("write_solution: stride must be >= 1");
  }
  out << 't';
  for (std::size_t i = 0; i < slab.n_nodes(); i += stride) {
    out << ',' << format_number(slab.grid().x(i));
  }
  out << '\n';
  for (std::size_t s = 0; s < slab.n_rows(); ++s) {
    out << format_number(static_cast<double>(slab.step0() + static_cast<std::int64_t>(s)) *
                         slab.dt());
    for (std::size_t i = 0; i < slab.n_nodes(); i += stride) {
      out << ',' << format_number(slab.at(s, i));
    }
    out << '\n';
  }
}

SolutionTable read_solution(std::istream& in) {
  SolutionTable table;
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,", 0) != 0) {
    throw InvalidInput("csv: missing 't,...' header");
  }
  table.x = parse_row(line.substr(2), 1);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    auto row = parse_row(line, line_no);
    if (row.size() != table.x.size() + 1) {
      throw InvalidInput("csv line " + std::to_string(line_no) + ": expected " +
                         std::to_string(table.x.size() + 1) + " columns, got " +
                         std::to_string(row.size()));
    }
    table.t.push_back(row.front());
    row.erase(row.begin());
    table.values.push_back(std::move(row));
  }
  return table;
}

void write_errors(std::ostream& out, std::span<const runtime::WindowRecord> windows,
                  std::span<const double> per_window_max) {
  if (windows.size() != per_window_max.size()) {
    throw InvalidInput("write_errors: one error value per window required");
  }
  out << "k,t_start,span_steps,max_abs\n";
  for (std::size_t i = 0; i < windows.size(); ++i) {
    out << windows[i].k << ',' << format_number(windows[i].t_start) << ','
        << windows[i].global_steps << ',' << format_number(per_window_max[i]) << '\n';
  }
}

double max_abs_difference(const SolutionTable& a, const SolutionTable& b) {
  if (a.x.size() != b.x.size() || a.t.size() != b.t.size()) {
    throw InvalidInput("tables differ in shape: " + std::to_string(a.t.size()) + "x" +
                       std::to_string(a.x.size()) + " vs " + std::to_string(b.t.size()) + "x" +
                       std::to_string(b.x.size()));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    worst = std::max(worst, std::abs(a.x[i] - b.x[i]));
  }
  for (std::size_t r = 0; r < a.t.size(); ++r) {
    worst = std::max(worst, std::abs(a.t[r] - b.t[r]));
    for (std::size_t c = 0; c < a.x.size(); ++c) {
      worst = std::max(worst, std::abs(a.values[r][c] - b.values[r][c]));
    }
  }
  return worst;
}

}  // namespace rswr::csv
