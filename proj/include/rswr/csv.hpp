#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rswr/grid.hpp"
#include "rswr/runtime.hpp"

namespace rswr::csv {

/// 17 significant digits, which round-trips exactly through strtod.
std::string format_number(double value);

/// Header "t,<x of each sampled node>", then one row per time level.
/// Sampled nodes are 0, stride, 2 stride, ...
void write_solution(std::ostream& out, const FieldSlab& slab, std::size_t stride);

struct SolutionTable {
  std::vector<double> x;
  std::vector<double> t;
  /// values[row][column]
  std::vector<std::vector<double>> values;
};

/// Parses a file produced by write_solution. InvalidInput on malformed content.
SolutionTable read_solution(std::istream& in);

/// Columns k,t_start,span_steps,max_abs; one row per window.
void write_errors(std::ostream& out, std::span<const runtime::WindowRecord> windows,
                  std::span<const double> per_window_max);

/// Largest absolute difference over t, x and values. InvalidInput if shapes differ.
double max_abs_difference(const SolutionTable& a, const SolutionTable& b);

}  // namespace rswr::csv
