#pragma once

// Leapfrog discretization of u_tt = a^2 u_xx on a uniform grid, with
// Dirichlet or ghost-point Neumann boundaries, and boundary flux extraction.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rswr/grid.hpp"

namespace rswr {

enum class Side { Left, Right };

const char* to_string(Side side);

/// Two consecutive time levels. The pair encodes du/dt, so windows chain
/// without re-differentiating.
struct WaveState {
  std::vector<double> u_prev;
  std::vector<double> u_curr;
  double t_curr = 0.0;
  std::int64_t step_index = 0;

  static WaveState zero(std::size_t n_nodes);
  /// Both levels restricted to nodes [first, last].
  WaveState restrict_nodes(std::size_t first, std::size_t last) const;
};

/// Time series of du/dx at one node; values[s] belongs to global step step0 + s.
struct FluxWaveform {
  Side side = Side::Left;
  std::int64_t step0 = 0;
  double t_start = 0.0;
  double dt = 0.0;
  std::vector<double> values;

  std::size_t n_steps() const { return values.empty() ? 0 : values.size() - 1; }
  /// First n_steps + 1 samples.
  FluxWaveform truncated(std::size_t n_steps) const;
};

enum class BcKind { DirichletSeries, NeumannFluxSeries, NeumannZero };

struct BoundaryCondition {
  BcKind kind = BcKind::NeumannZero;
  std::vector<double> series;

  static BoundaryCondition dirichlet(std::vector<double> series);
  static BoundaryCondition neumann(std::vector<double> flux);
  static BoundaryCondition neumann_zero();
};

/// Interior update. Entries 0 and n-1 of the result are unspecified (left at 0);
/// the caller imposes boundary conditions.
std::vector<double> leapfrog_step(std::span<const double> u_prev, std::span<const double> u_curr,
                                  double courant);

/// Second-order Taylor start from displacement u0 and velocity v0 (interior nodes).
std::vector<double> first_step(std::span<const double> u0, std::span<const double> v0,
                               double courant, double dt);

/// State at the first time level whose leapfrog continuation reproduces
/// first_step(u0, v0): the backward level is first_step(u0, -v0).
WaveState initial_state(std::span<const double> u0, std::span<const double> v0, double courant,
                        double dt, std::int64_t step_index = 0);

/// Sets the boundary node of u_next (row `step` of the window, step >= 1) on `side` and
/// returns the assigned value. Series are sampled per row: Dirichlet takes series[step];
/// Neumann takes the flux q = series[step - 1] at the level of before.u_curr and uses the
/// ghost node g = u[1] - 2 dx q (left) or g = u[B-1] + 2 dx q (right) in the interior stencil.
double impose_boundary(std::span<double> u_next, const WaveState& before, Side side,
                       const BoundaryCondition& bc, std::size_t step, double courant, double dx);

struct WindowSolution {
  FieldSlab slab;
  WaveState terminal;
};

/// Advances `initial` by n_steps. Row 0 of the slab is initial.u_curr. Boundary
/// series need n_steps + 1 samples (see impose_boundary for which sample each row uses).
WindowSolution solve_window(const Grid1D& grid, const WaveState& initial,
                            const BoundaryCondition& left, const BoundaryCondition& right,
                            std::size_t n_steps, double dt, double a);

/// Centered difference (v[node+1] - v[node-1]) / (2 dx) for every row.
FluxWaveform extract_flux(const FieldSlab& slab, std::size_t node, Side side);

/// a dt / dx, checked against (0, 1]. Values within 1e-12 above 1 are taken as 1.
double courant_number(double a, double dt, double dx);

}  // namespace rswr
