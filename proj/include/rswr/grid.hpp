#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rswr {

/// Uniform 1-D node set. A restricted grid keeps the parent's spacing and
/// global indexing, so positions of shared nodes are bit-identical.
class Grid1D {
 public:
  /// Empty grid; only useful as a placeholder before assignment.
  Grid1D() = default;

  /// Throws InvalidInput unless n_nodes >= 3 and x_max > x_min.
  static Grid1D uniform(double x_min, double x_max, std::size_t n_nodes);

  /// Sub-grid over local node indices [first, last] (inclusive).
  Grid1D restrict_to(std::size_t first, std::size_t last) const;

  std::size_t size() const { return n_; }
  double dx() const { return dx_; }
  /// Global index of local node 0.
  std::size_t offset() const { return offset_; }
  double x(std::size_t i) const;
  double x_min() const { return x(0); }
  double x_max() const { return x(n_ - 1); }

  bool operator==(const Grid1D&) const = default;

 private:
  double origin_ = 0.0;
  double end_ = 0.0;
  std::size_t global_n_ = 0;
  std::size_t offset_ = 0;
  std::size_t n_ = 0;
  double dx_ = 0.0;
};

/// Space-time block: row s holds the field at global step step0 + s.
class FieldSlab {
 public:
  FieldSlab(Grid1D grid, std::int64_t step0, double dt, std::size_t n_steps);

  const Grid1D& grid() const { return grid_; }
  std::int64_t step0() const { return step0_; }
  double dt() const { return dt_; }
  double t_start() const { return static_cast<double>(step0_) * dt_; }
  std::size_t n_steps() const { return n_steps_; }
  std::size_t n_rows() const { return n_steps_ + 1; }
  std::size_t n_nodes() const { return grid_.size(); }

  double& at(std::size_t step, std::size_t node) { return values_[step * grid_.size() + node]; }
  double at(std::size_t step, std::size_t node) const { return values_[step * grid_.size() + node]; }

  std::span<double> row(std::size_t step);
  std::span<const double> row(std::size_t step) const;
  std::span<const double> values() const { return values_; }

  /// Copy of rows [first_step, first_step + n_steps] and local nodes [first_node, last_node].
  FieldSlab slice(std::size_t first_step, std::size_t n_steps, std::size_t first_node,
                  std::size_t last_node) const;

  /// Same as slice() over all rows.
  FieldSlab restrict_nodes(std::size_t first_node, std::size_t last_node) const;

  /// Appends rows 1..n of `next`, whose row 0 must continue this slab's last row.
  void append(const FieldSlab& next);

 private:
  Grid1D grid_;
  std::int64_t step0_;
  double dt_;
  std::size_t n_steps_;
  std::vector<double> values_;
};

}  // namespace rswr
