#pragma once

// Ground truth for the protocol: the single-domain solve with the same stencil,
// analytic d'Alembert references, and slab error metrics.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "rswr/config.hpp"
#include "rswr/grid.hpp"
#include "rswr/wave.hpp"

namespace rswr::oracle {

struct ErrorReport {
  double max_abs = 0.0;
  /// sqrt(dx dt sum(diff^2)).
  double l2_spacetime = 0.0;
  std::vector<double> per_window_max;
  /// (row, node) of max_abs; rows count from the first compared row.
  std::pair<std::size_t, std::size_t> location_of_max{0, 0};
};

/// Whole-domain solve over [0, total_steps * dt] from zero initial data.
FieldSlab solve_monolithic(const RswrConfig& config);

/// Element-wise metrics. InvalidInput unless shapes, step0 and dt agree.
ErrorReport compare(const FieldSlab& a, const FieldSlab& b);

/// Compares a window sequence against the matching rows of `reference`
/// (same grid); per_window_max gets one entry per window.
ErrorReport compare_windows(std::span<const FieldSlab> windows, const FieldSlab& reference);

/// Level pair (row - 1, row) of a slab as a restartable state. Requires row >= 1.
WaveState state_at(const FieldSlab& slab, std::size_t row);

/// Exact solution f(t - (x - x_min) / a) of a quiescent half-line driven at x_min,
/// valid until the front reaches the far boundary.
FieldSlab dalembert_left_drive(const Grid1D& grid, const std::function<double(double)>& f,
                               double a, std::int64_t step0, double dt, std::size_t n_steps);

/// Discrete leapfrog energy of the level pair; conserved under zero-Dirichlet ends.
double discrete_energy(const WaveState& state, double dx, double dt, double a);

}  // namespace rswr::oracle
