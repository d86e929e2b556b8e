#include "rswr/oracle.hpp"

#include <cmath>
#include <string>

#include "rswr/errors.hpp"

namespace rswr::oracle {

FieldSlab solve_monolithic(const RswrConfig& config) {
  const Grid1D grid = config.grid();
  const std::size_t steps = config.total_steps();
  const WaveState start = WaveState::zero(grid.size());
  return solve_window(grid, start,
                      BoundaryCondition::dirichlet(config.drive_series(Side::Left, 0, steps)),
                      BoundaryCondition::dirichlet(config.drive_series(Side::Right, 0, steps)),
                      steps, config.dt(), config.a)
      .slab;
}

ErrorReport compare(const FieldSlab& a, const FieldSlab& b) {
  if (a.n_nodes() != b.n_nodes() || a.n_steps() != b.n_steps() || a.step0() != b.step0() ||
      a.dt() != b.dt()) {
    throw InvalidInput("compare: slabs differ in shape, start step or dt");
  }
  ErrorReport r;
  double sum_sq = 0.0;
  for (std::size_t s = 0; s < a.n_rows(); ++s) {
    for (std::size_t i = 0; i < a.n_nodes(); ++i) {
      const double d = std::abs(a.at(s, i) - b.at(s, i));
      sum_sq += d * d;
      if (d > r.max_abs) {
        r.max_abs = d;
        r.location_of_max = {s, i};
      }
    }
  }
  r.l2_spacetime = std::sqrt(a.grid().dx() * a.dt() * sum_sq);
  r.per_window_max.push_back(r.max_abs);
  return r;
}

ErrorReport compare_windows(std::span<const FieldSlab> windows, const FieldSlab& reference) {
  ErrorReport total;
  double sum_sq = 0.0;
  for (const auto& w : windows) {
    if (w.step0() < reference.step0()) {
      throw InvalidInput("compare_windows: window starts before the reference");
    }
    const auto first = static_cast<std::size_t>(w.step0() - reference.step0());
    const FieldSlab ref = reference.slice(first, w.n_steps(), 0, reference.n_nodes() - 1);
    const ErrorReport r = compare(w, ref);
    total.per_window_max.push_back(r.max_abs);
    if (r.max_abs > total.max_abs) {
      total.max_abs = r.max_abs;
      total.location_of_max = {first + r.location_of_max.first, r.location_of_max.second};
    }
    const double scale = reference.grid().dx() * reference.dt();
    sum_sq += r.l2_spacetime * r.l2_spacetime / scale;
  }
  total.l2_spacetime = std::sqrt(reference.grid().dx() * reference.dt() * sum_sq);
  return total;
}

WaveState state_at(const FieldSlab& slab, std::size_t row) {
  if (row == 0 || row > slab.n_steps()) {
    throw InvalidInput("state_at: row " + std::to_string(row) + " has no previous level");
  }
  WaveState s;
  const auto prev = slab.row(row - 1);
  const auto curr = slab.row(row);
  s.u_prev.assign(prev.begin(), prev.end());
  s.u_curr.assign(curr.begin(), curr.end());
  s.step_index = slab.step0() + static_cast<std::int64_t>(row);
  s.t_curr = static_cast<double>(s.step_index) * slab.dt();
  return s;
}

FieldSlab dalembert_left_drive(const Grid1D& grid, const std::function<double(double)>& f,
                               double a, std::int64_t step0, double dt, std::size_t n_steps) {
  FieldSlab out(grid, step0, dt, n_steps);
  const double x0 = grid.x_min();
  for (std::size_t s = 0; s <= n_steps; ++s) {
    const double t = static_cast<double>(step0 + static_cast<std::int64_t>(s)) * dt;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double retarded = t - (grid.x(i) - x0) / a;
      out.at(s, i) = retarded >= 0.0 ? f(retarded) : 0.0;
    }
  }
  return out;
}

double discrete_energy(const WaveState& state, double dx, double dt, double a) {
  const auto& u = state.u_curr;
  const auto& up = state.u_prev;
  const double a2 = a * a;
  double e = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = (u[i] - up[i]) / dt;
    e += v * v;
    if (i + 1 < u.size()) {
      e += a2 * ((u[i + 1] - u[i]) / dx) * ((up[i + 1] - up[i]) / dx);
    }
  }
  return e * dx / 2.0;
}

}  // namespace rswr::oracle
