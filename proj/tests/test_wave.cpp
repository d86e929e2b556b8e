#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "rswr/errors.hpp"
#include "rswr/oracle.hpp"
#include "rswr/wave.hpp"
#include "test_support.hpp"

using namespace rswr;

namespace {

double bump(double z) { return std::exp(-z * z / 4.0); }

// Hand-written stencil, independent of the library loop.
double reference_stencil(const std::vector<double>& up, const std::vector<double>& u,
                         std::size_t i, double c) {
  return 2.0 * u[i] - up[i] + c * c * (u[i + 1] - 2.0 * u[i] + u[i - 1]);
}

}  // namespace

TEST_CASE("leapfrog_step: zero field is a fixed point") {
  const std::vector<double> z(9, 0.0);
  const auto next = leapfrog_step(z, z, 0.7);
  for (std::size_t i = 1; i + 1 < next.size(); ++i) {
    CHECK(next[i] == 0.0);
  }
}

TEST_CASE("leapfrog_step: hand-evaluated stencil") {
  const auto next = leapfrog_step(std::vector<double>{0, 0, 0}, std::vector<double>{0, 1, 0}, 1.0);
  CHECK(next[1] == 0.0);

  std::mt19937_64 rng(7);
  const auto up = test_support::random_field(rng, 12);
  const auto u = test_support::random_field(rng, 12);
  const auto got = leapfrog_step(up, u, 0.63);
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    CHECK(got[i] == doctest::Approx(reference_stencil(up, u, i, 0.63)).epsilon(1e-15));
  }
}

TEST_CASE("leapfrog_step: right-moving pulse advects exactly at courant 1") {
  const std::size_t n = 60;
  const int shift = 20;
  std::vector<double> prev(n);
  std::vector<double> curr(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = static_cast<double>(i) - shift;
    prev[i] = bump(z + 1.0);
    curr[i] = bump(z);
  }
  // Brute-force 15 steps and compare against the shifted profile.
  for (int step = 1; step <= 15; ++step) {
    auto next = leapfrog_step(prev, curr, 1.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (i > 3 && i < n - 3) {
        const double expected = bump(static_cast<double>(i) - shift - step);
        REQUIRE(std::abs(next[i] - expected) <= 1e-13);
      }
    }
    next[0] = bump(-shift - static_cast<double>(step));
    next[n - 1] = bump(static_cast<double>(n - 1) - shift - step);
    prev = curr;
    curr = next;
  }
}

TEST_CASE("leapfrog_step: contract errors") {
  const std::vector<double> a(5, 0.0);
  const std::vector<double> b(6, 0.0);
  CHECK_THROWS_AS(leapfrog_step(a, b, 0.5), InvalidInput);
  CHECK_THROWS_AS(leapfrog_step(a, a, 1.5), StabilityError);
  CHECK_THROWS_AS(leapfrog_step(a, a, 0.0), StabilityError);
  CHECK_THROWS_AS(leapfrog_step(std::vector<double>{0, 0}, std::vector<double>{0, 0}, 0.5),
                  InvalidInput);
}

TEST_CASE("first_step: hand-evaluated Taylor start") {
  const std::vector<double> z(3, 0.0);
  CHECK(first_step(z, z, 0.8, 0.01)[1] == 0.0);
  CHECK(first_step(std::vector<double>{0, 1, 0}, z, 1.0, 0.37)[1] == 0.0);
  const double c = 2.5;
  const double dt = 0.125;
  CHECK(first_step(z, std::vector<double>{0, c, 0}, 0.5, dt)[1] == c * dt);
  CHECK_THROWS_AS(first_step(z, std::vector<double>(4, 0.0), 0.5, dt), InvalidInput);
}

TEST_CASE("initial_state: leapfrog continuation equals the Taylor first step") {
  std::mt19937_64 rng(11);
  const auto u0 = test_support::random_field(rng, 16);
  const auto v0 = test_support::random_field(rng, 16);
  const double courant = 0.85;
  const double dt = 0.01;
  const auto s = initial_state(u0, v0, courant, dt);
  const auto via_leapfrog = leapfrog_step(s.u_prev, s.u_curr, courant);
  const auto via_taylor = first_step(u0, v0, courant, dt);
  for (std::size_t i = 1; i + 1 < u0.size(); ++i) {
    CHECK(via_leapfrog[i] == doctest::Approx(via_taylor[i]).epsilon(1e-13));
  }
}

TEST_CASE("impose_boundary: Dirichlet and zero-flux cases") {
  auto state = WaveState::zero(6);
  std::vector<double> next(6, 0.0);
  CHECK(impose_boundary(next, state, Side::Left, BoundaryCondition::neumann_zero(), 1, 0.9, 0.1) ==
        0.0);
  const auto bc = BoundaryCondition::dirichlet({0.0, 0.5, 0.25});
  CHECK(impose_boundary(next, state, Side::Right, bc, 1, 0.9, 0.1) == 0.5);
  CHECK(next[5] == 0.5);
  CHECK_THROWS_AS(impose_boundary(next, state, Side::Right, bc, 3, 0.9, 0.1), InvalidInput);
  CHECK_THROWS_AS(
      impose_boundary(next, state, Side::Right, BoundaryCondition::neumann({}), 1, 0.9, 0.1),
      InvalidInput);
  CHECK_THROWS_AS(
      impose_boundary(next, state, Side::Right, BoundaryCondition::dirichlet({}), 1, 0.9, 0.1),
      InvalidInput);
}

TEST_CASE("ghost reconstruction inverts extract_flux up to rounding") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dxs(1e-4, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto v = test_support::random_field(rng, 3, 10.0);
    const double dx = dxs(rng);
    auto grid = Grid1D::uniform(0.0, 2.0 * dx, 3);
    FieldSlab slab(grid, 0, 1.0, 0);
    std::copy(v.begin(), v.end(), slab.row(0).begin());
    const double flux = extract_flux(slab, 1, Side::Right).values[0];
    const double ghost = v[0] + 2.0 * grid.dx() * flux;
    REQUIRE(std::abs(ghost - v[2]) <= 4.0 * std::numeric_limits<double>::epsilon() * 10.0);
  }
}

TEST_CASE("Neumann boundary with neighbor flux reproduces the monolithic stencil") {
  // Monolithic 20-node solve; a 12-node left piece is driven on its right edge by the flux
  // extracted from the monolithic slab.
  const auto grid = Grid1D::uniform(0.0, 1.0, 20);
  const double a = 1.0;
  const double dt = 0.9 * grid.dx() / a;
  std::vector<double> u0(20);
  for (std::size_t i = 0; i < 20; ++i) {
    u0[i] = bump((static_cast<double>(i) - 9.0) / 1.5);
  }
  const auto start = initial_state(u0, std::vector<double>(20, 0.0), 0.9, dt);
  const std::size_t steps = 30;
  const auto zero = BoundaryCondition::dirichlet(std::vector<double>(steps + 1, 0.0));
  const auto mono = solve_window(grid, start, zero, zero, steps, dt, a).slab;

  const std::size_t edge = 11;
  const auto flux = extract_flux(mono, edge, Side::Right);
  const auto piece =
      solve_window(grid.restrict_to(0, edge), start.restrict_nodes(0, edge), zero,
                   BoundaryCondition::neumann(flux.values), steps, dt, a)
          .slab;
  double worst = 0.0;
  for (std::size_t s = 0; s <= steps; ++s) {
    for (std::size_t i = 0; i <= edge; ++i) {
      worst = std::max(worst, std::abs(piece.at(s, i) - mono.at(s, i)));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("solve_window: homogeneous problem stays exactly zero") {
  const auto grid = Grid1D::uniform(0.0, 1.0, 33);
  const auto zero = BoundaryCondition::dirichlet(std::vector<double>(201, 0.0));
  const auto sol =
      solve_window(grid, WaveState::zero(33), zero, BoundaryCondition::neumann_zero(), 200,
                   0.9 * grid.dx(), 1.0);
  for (double v : sol.slab.values()) {
    REQUIRE(v == 0.0);
  }
}

TEST_CASE("solve_window: empty window returns the initial row") {
  const auto grid = Grid1D::uniform(0.0, 1.0, 5);
  WaveState s = WaveState::zero(5);
  s.u_curr = {0, 1, 2, 3, 0};
  s.step_index = 7;
  const auto sol = solve_window(grid, s, BoundaryCondition::neumann_zero(),
                                BoundaryCondition::neumann_zero(), 0, 0.1, 1.0);
  CHECK(sol.slab.n_rows() == 1);
  CHECK(sol.slab.step0() == 7);
  CHECK(test_support::max_abs_diff(sol.slab.row(0), s.u_curr) == 0.0);
  CHECK(sol.terminal.u_curr == s.u_curr);
  CHECK(sol.terminal.step_index == 7);
}

TEST_CASE("solve_window: boundary pulse travels one cell per step at courant 1") {
  const auto grid = Grid1D::uniform(0.0, 1.0, 201);
  const double dt = grid.dx();
  const double w = 5.0 * dt;
  auto f = [&](double t) { return std::exp(-std::pow((t - 6.0 * w) / w, 2)); };
  const std::size_t steps = 150;
  std::vector<double> drive(steps + 1);
  for (std::size_t s = 0; s <= steps; ++s) {
    drive[s] = f(static_cast<double>(s) * dt);
  }
  const auto sol =
      solve_window(grid, WaveState::zero(201), BoundaryCondition::dirichlet(drive),
                   BoundaryCondition::dirichlet(std::vector<double>(steps + 1, 0.0)), steps, dt,
                   1.0);
  double worst = 0.0;
  for (std::size_t s = 1; s <= steps; ++s) {
    for (std::size_t i = 1; i < 200; ++i) {
      const double expected = s >= i ? drive[s - i] : 0.0;
      worst = std::max(worst, std::abs(sol.slab.at(s, i) - expected));
    }
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("solve_window: chaining windows reproduces one long solve bit-for-bit") {
  const auto cfg = test_support::pulse_config();
  const auto grid = cfg.grid();
  const std::size_t total = 300;
  auto bc_l = [&](std::int64_t s0, std::size_t n) {
    return BoundaryCondition::dirichlet(cfg.drive_series(Side::Left, s0, n));
  };
  const auto zero = BoundaryCondition::neumann_zero();
  const auto whole = solve_window(grid, WaveState::zero(grid.size()), bc_l(0, total), zero, total,
                                  cfg.dt(), cfg.a);
  WaveState state = WaveState::zero(grid.size());
  std::size_t done = 0;
  for (std::size_t piece : {17u, 1u, 100u, 182u}) {
    auto part = solve_window(grid, state, bc_l(static_cast<std::int64_t>(done), piece), zero,
                             piece, cfg.dt(), cfg.a);
    for (std::size_t s = 0; s <= piece; ++s) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        REQUIRE(part.slab.at(s, i) == whole.slab.at(done + s, i));
      }
    }
    state = part.terminal;
    done += piece;
  }
  CHECK(done == total);
  CHECK(state.step_index == static_cast<std::int64_t>(total));
}

TEST_CASE("solve_window: contract errors") {
  const auto grid = Grid1D::uniform(0.0, 1.0, 11);
  const auto zero = BoundaryCondition::neumann_zero();
  CHECK_THROWS_AS(solve_window(grid, WaveState::zero(10), zero, zero, 1, 0.05, 1.0), InvalidInput);
  CHECK_THROWS_AS(solve_window(grid, WaveState::zero(11), zero, zero, 1, 0.2, 1.0),
                  StabilityError);
  CHECK_THROWS_AS(solve_window(grid, WaveState::zero(11), BoundaryCondition::dirichlet({0.0}),
                               zero, 3, 0.05, 1.0),
                  InvalidInput);
}

TEST_CASE("extract_flux: constant and linear fields") {
  const auto grid = Grid1D::uniform(0.0, 2.0, 9);
  FieldSlab slab(grid, 4, 0.1, 3);
  const double c = -1.75;
  for (std::size_t s = 0; s < slab.n_rows(); ++s) {
    for (std::size_t i = 0; i < 9; ++i) {
      slab.at(s, i) = c * grid.x(i) + 3.0;
    }
  }
  const auto f = extract_flux(slab, 4, Side::Left);
  CHECK(f.values.size() == slab.n_rows());
  CHECK(f.step0 == 4);
  CHECK(f.side == Side::Left);
  for (double q : f.values) {
    CHECK(q == doctest::Approx(c).epsilon(1e-14));
  }
  FieldSlab flat(grid, 0, 0.1, 2);
  for (double q : extract_flux(flat, 1, Side::Right).values) {
    CHECK(q == 0.0);
  }
  CHECK_THROWS_AS(extract_flux(slab, 0, Side::Left), InvalidInput);
  CHECK_THROWS_AS(extract_flux(slab, 8, Side::Right), InvalidInput);
}

TEST_CASE("discrete energy is conserved with reflecting ends") {
  const auto grid = Grid1D::uniform(0.0, 1.0, 201);
  const double dt = 0.9 * grid.dx();
  std::vector<double> u0(201);
  for (std::size_t i = 0; i < 201; ++i) {
    u0[i] = bump((grid.x(i) - 0.4) / 0.03);
  }
  u0.front() = u0.back() = 0.0;
  const auto start = initial_state(u0, std::vector<double>(201, 0.0), 0.9, dt);
  const std::size_t steps = 1000;
  const auto zero = BoundaryCondition::dirichlet(std::vector<double>(steps + 1, 0.0));
  const auto slab = solve_window(grid, start, zero, zero, steps, dt, 1.0).slab;
  const double e0 = oracle::discrete_energy(oracle::state_at(slab, 1), grid.dx(), dt, 1.0);
  double drift = 0.0;
  for (std::size_t s = 2; s <= steps; ++s) {
    const double e = oracle::discrete_energy(oracle::state_at(slab, s), grid.dx(), dt, 1.0);
    drift = std::max(drift, std::abs(e - e0) / e0);
  }
  CHECK(e0 > 0.0);
  CHECK(drift <= 1e-10);
}
