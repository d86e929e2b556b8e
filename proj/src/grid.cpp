#include "rswr/grid.hpp"

#include <algorithm>
#include <string>

#include "rswr/errors.hpp"

namespace rswr {

Grid1D Grid1D::uniform(double x_min, double x_max, std::size_t n_nodes) {
  if (n_nodes < 3) {
    throw InvalidInput("Grid1D: n_nodes must be >= 3, got " + std::to_string(n_nodes));
  }
  if (!(x_max > x_min)) {
    throw InvalidInput("Grid1D: x_max must exceed x_min");
  }
  Grid1D g;
  g.origin_ = x_min;
  g.end_ = x_max;
  g.global_n_ = n_nodes;
  g.offset_ = 0;
  g.n_ = n_nodes;
  g.dx_ = (x_max - x_min) / static_cast<double>(n_nodes - 1);
  return g;
}

Grid1D Grid1D::restrict_to(std::size_t first, std::size_t last) const {
  if (first > last || last >= n_) {
    throw InvalidInput("Grid1D::restrict_to: range [" + std::to_string(first) + ", " +
                       std::to_string(last) + "] outside grid of " + std::to_string(n_) +
                       " nodes");
  }
  Grid1D g = *this;
  g.offset_ = offset_ + first;
  g.n_ = last - first + 1;
  return g;
}

double Grid1D::x(std::size_t i) const {
  const std::size_t global = offset_ + i;
  if (global + 1 == global_n_) {
    return end_;
  }
  return origin_ + static_cast<double>(global) * dx_;
}

FieldSlab::FieldSlab(Grid1D grid, std::int64_t step0, double dt, std::size_t n_steps)
    : grid_(grid),
      step0_(step0),
      dt_(dt),
      n_steps_(n_steps),
      values_((n_steps + 1) * grid.size(), 0.0) {}

std::span<double> FieldSlab::row(std::size_t step) {
  return {values_.data() + step * grid_.size(), grid_.size()};
}

std::span<const double> FieldSlab::row(std::size_t step) const {
  return {values_.data() + step * grid_.size(), grid_.size()};
}

FieldSlab FieldSlab::slice(std::size_t first_step, std::size_t n_steps, std::size_t first_node,
                           std::size_t last_node) const {
  if (first_step + n_steps > n_steps_) {
    throw InvalidInput("FieldSlab::slice: step range exceeds slab");
  }
  FieldSlab out(grid_.restrict_to(first_node, last_node),
                step0_ + static_cast<std::int64_t>(first_step), dt_, n_steps);
  for (std::size_t s = 0; s <= n_steps; ++s) {
    const auto src = row(first_step + s);
    std::copy(src.begin() + static_cast<std::ptrdiff_t>(first_node),
              src.begin() + static_cast<std::ptrdiff_t>(last_node) + 1, out.row(s).begin());
  }
  return out;
}

FieldSlab FieldSlab::restrict_nodes(std::size_t first_node, std::size_t last_node) const {
  return slice(0, n_steps_, first_node, last_node);
}

void FieldSlab::append(const FieldSlab& next) {
  if (!(next.grid_ == grid_) || next.step0_ != step0_ + static_cast<std::int64_t>(n_steps_)) {
    throw InvalidInput("FieldSlab::append: slab does not continue this one");
  }
  const auto tail = next.values_.begin() + static_cast<std::ptrdiff_t>(grid_.size());
  values_.insert(values_.end(), tail, next.values_.end());
  n_steps_ += next.n_steps_;
}

}  // namespace rswr
