#include "rswr/wave.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rswr/errors.hpp"

namespace rswr {

namespace {

constexpr double kCourantRounding = 1e-12;

// Shared by interior nodes and ghost-point boundaries so that both produce
// bit-identical results for identical neighbor values.
inline double stencil(double prev, double left, double center, double right, double c2) {
  return 2.0 * center - prev + c2 * (right - 2.0 * center + left);
}

void check_courant(double courant) {
  if (!(courant > 0.0) || courant > 1.0 + kCourantRounding) {
    throw StabilityError("courant number " + std::to_string(courant) + " outside (0, 1]");
  }
}

void check_levels(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidInput("time levels have different lengths (" + std::to_string(a.size()) +
                       " vs " + std::to_string(b.size()) + ")");
  }
  if (a.size() < 3) {
    throw InvalidInput("time levels need at least 3 nodes");
  }
}

}  // namespace

const char* to_string(Side side) { return side == Side::Left ? "left" : "right"; }

WaveState WaveState::zero(std::size_t n_nodes) {
  WaveState s;
  s.u_prev.assign(n_nodes, 0.0);
  s.u_curr.assign(n_nodes, 0.0);
  return s;
}

WaveState WaveState::restrict_nodes(std::size_t first, std::size_t last) const {
  if (first > last || last >= u_curr.size()) {
    throw InvalidInput("WaveState::restrict_nodes: range outside state");
  }
  WaveState s;
  const auto lo = static_cast<std::ptrdiff_t>(first);
  const auto hi = static_cast<std::ptrdiff_t>(last) + 1;
  s.u_prev.assign(u_prev.begin() + lo, u_prev.begin() + hi);
  s.u_curr.assign(u_curr.begin() + lo, u_curr.begin() + hi);
  s.t_curr = t_curr;
  s.step_index = step_index;
  return s;
}

FluxWaveform FluxWaveform::truncated(std::size_t n) const {
  if (n + 1 > values.size()) {
    throw InvalidInput("flux waveform has " + std::to_string(n_steps()) +
                       " steps, cannot truncate to " + std::to_string(n));
  }
  FluxWaveform out = *this;
  out.values.resize(n + 1);
  return out;
}

BoundaryCondition BoundaryCondition::dirichlet(std::vector<double> series) {
  return {BcKind::DirichletSeries, std::move(series)};
}

BoundaryCondition BoundaryCondition::neumann(std::vector<double> flux) {
  return {BcKind::NeumannFluxSeries, std::move(flux)};
}

BoundaryCondition BoundaryCondition::neumann_zero() { return {BcKind::NeumannZero, {}}; }

double courant_number(double a, double dt, double dx) {
  double c = a * dt / dx;
  check_courant(c);
  return std::min(c, 1.0);
}

std::vector<double> leapfrog_step(std::span<const double> u_prev, std::span<const double> u_curr,
                                  double courant) {
  check_levels(u_prev, u_curr);
  check_courant(courant);
  const double c2 = courant * courant;
  const std::size_t n = u_curr.size();
  std::vector<double> next(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    next[i] = stencil(u_prev[i], u_curr[i - 1], u_curr[i], u_curr[i + 1], c2);
  }
  return next;
}

std::vector<double> first_step(std::span<const double> u0, std::span<const double> v0,
                               double courant, double dt) {
  check_levels(u0, v0);
  check_courant(courant);
  const double half_c2 = 0.5 * courant * courant;
  const std::size_t n = u0.size();
  std::vector<double> u1(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    u1[i] = u0[i] + dt * v0[i] + half_c2 * (u0[i + 1] - 2.0 * u0[i] + u0[i - 1]);
  }
  return u1;
}

WaveState initial_state(std::span<const double> u0, std::span<const double> v0, double courant,
                        double dt, std::int64_t step_index) {
  std::vector<double> neg_v0(v0.size());
  std::transform(v0.begin(), v0.end(), neg_v0.begin(), [](double v) { return -v; });
  WaveState s;
  s.u_prev = first_step(u0, neg_v0, courant, dt);
  const std::size_t last = u0.size() - 1;
  s.u_prev[0] = u0[0] - dt * v0[0];
  s.u_prev[last] = u0[last] - dt * v0[last];
  s.u_curr.assign(u0.begin(), u0.end());
  s.step_index = step_index;
  s.t_curr = static_cast<double>(step_index) * dt;
  return s;
}

double impose_boundary(std::span<double> u_next, const WaveState& before, Side side,
                       const BoundaryCondition& bc, std::size_t step, double courant, double dx) {
  const auto& u = before.u_curr;
  const auto& up = before.u_prev;
  const std::size_t n = u.size();
  if (n < 3 || up.size() != n || u_next.size() != n) {
    throw InvalidInput("impose_boundary: level lengths disagree");
  }
  if (step == 0) {
    throw InvalidInput("impose_boundary: row 0 is the initial state");
  }
  const std::size_t b = side == Side::Left ? 0 : n - 1;
  double value = 0.0;
  if (bc.kind == BcKind::DirichletSeries) {
    if (step >= bc.series.size()) {
      throw InvalidInput("impose_boundary: Dirichlet series has no sample for row " +
                         std::to_string(step));
    }
    value = bc.series[step];
  } else {
    double flux = 0.0;
    if (bc.kind == BcKind::NeumannFluxSeries) {
      if (step - 1 >= bc.series.size()) {
        throw InvalidInput("impose_boundary: flux series has no sample for row " +
                           std::to_string(step - 1));
      }
      flux = bc.series[step - 1];
    }
    const double c2 = courant * courant;
    if (side == Side::Left) {
      const double ghost = u[1] - 2.0 * dx * flux;
      value = stencil(up[0], ghost, u[0], u[1], c2);
    } else {
      const double ghost = u[b - 1] + 2.0 * dx * flux;
      value = stencil(up[b], u[b - 1], u[b], ghost, c2);
    }
  }
  u_next[b] = value;
  return value;
}

WindowSolution solve_window(const Grid1D& grid, const WaveState& initial,
                            const BoundaryCondition& left, const BoundaryCondition& right,
                            std::size_t n_steps, double dt, double a) {
  const std::size_t n = grid.size();
  if (initial.u_curr.size() != n || initial.u_prev.size() != n) {
    throw InvalidInput("solve_window: state has " + std::to_string(initial.u_curr.size()) +
                       " nodes, grid has " + std::to_string(n));
  }
  for (const auto* bc : {&left, &right}) {
    if (bc->kind != BcKind::NeumannZero && bc->series.size() < n_steps + 1) {
      throw InvalidInput("solve_window: boundary series has " + std::to_string(bc->series.size()) +
                         " samples, need " + std::to_string(n_steps + 1));
    }
  }
  const double courant = courant_number(a, dt, grid.dx());
  const double c2 = courant * courant;

  FieldSlab slab(grid, initial.step_index, dt, n_steps);
  std::copy(initial.u_curr.begin(), initial.u_curr.end(), slab.row(0).begin());

  WaveState state = initial;
  std::vector<double> next(n);
  for (std::size_t s = 1; s <= n_steps; ++s) {
    const auto& u = state.u_curr;
    const auto& up = state.u_prev;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      next[i] = stencil(up[i], u[i - 1], u[i], u[i + 1], c2);
    }
    impose_boundary(next, state, Side::Left, left, s, courant, grid.dx());
    impose_boundary(next, state, Side::Right, right, s, courant, grid.dx());
    std::copy(next.begin(), next.end(), slab.row(s).begin());
    std::swap(state.u_prev, state.u_curr);
    std::swap(state.u_curr, next);
    state.step_index += 1;
  }
  state.t_curr = static_cast<double>(state.step_index) * dt;
  return {std::move(slab), std::move(state)};
}

FluxWaveform extract_flux(const FieldSlab& slab, std::size_t node, Side side) {
  if (node == 0 || node + 1 >= slab.n_nodes()) {
    throw InvalidInput("extract_flux: node " + std::to_string(node) +
                       " has no centered stencil inside a slab of " +
                       std::to_string(slab.n_nodes()) + " nodes");
  }
  const double two_dx = 2.0 * slab.grid().dx();
  FluxWaveform f;
  f.side = side;
  f.step0 = slab.step0();
  f.t_start = slab.t_start();
  f.dt = slab.dt();
  f.values.resize(slab.n_rows());
  for (std::size_t s = 0; s < slab.n_rows(); ++s) {
    f.values[s] = (slab.at(s, node + 1) - slab.at(s, node - 1)) / two_dx;
  }
  return f;
}

}  // namespace rswr
