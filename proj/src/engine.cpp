#include "rswr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rswr/errors.hpp"

namespace rswr {

namespace {

BoundaryCondition physical_bc(const PhysicalSeries& physical, Side side, std::size_t n_steps,
                              std::size_t sub_id) {
  const auto& series = physical.on(side);
  if (!series) {
    throw InvalidInput("subdomain " + std::to_string(sub_id) + ": no physical drive for " +
                       to_string(side) + " boundary");
  }
  if (series->size() < n_steps + 1) {
    throw InvalidInput("subdomain " + std::to_string(sub_id) + ": physical drive for " +
                       to_string(side) + " boundary is shorter than the window");
  }
  return BoundaryCondition::dirichlet(*series);
}

}  // namespace

WindowPlan WindowPlan::first(std::size_t initial_predict_steps, double dt, std::int64_t step0) {
  WindowPlan p;
  p.k = 1;
  p.step0 = step0;
  p.dt = dt;
  p.t_start = static_cast<double>(step0) * dt;
  p.predict_steps = initial_predict_steps;
  return p;
}

FieldSlab predict(const WaveState& state, const Subdomain& sub, std::size_t predict_steps,
                  const PhysicalSeries& physical, double dt, double a) {
  if (predict_steps == 0) {
    throw InvalidInput("predict: predict_steps must be >= 1");
  }
  auto bc = [&](Side side) {
    return sub.kind(side) == BoundaryKind::InterfaceNeumann
               ? BoundaryCondition::neumann_zero()
               : physical_bc(physical, side, predict_steps, sub.id);
  };
  return solve_window(sub.grid, state, bc(Side::Left), bc(Side::Right), predict_steps, dt, a)
      .slab;
}

PredictExchange make_exchange(const FieldSlab& predictive, const Subdomain& sub,
                              const OverlapRegion& region) {
  Side side;
  if (sub.right_neighbor && region.pair == std::pair{sub.id, *sub.right_neighbor}) {
    side = Side::Right;
  } else if (sub.left_neighbor && region.pair == std::pair{*sub.left_neighbor, sub.id}) {
    side = Side::Left;
  } else {
    throw InvalidInput("make_exchange: subdomain " + std::to_string(sub.id) +
                       " is not part of the overlap");
  }
  if (predictive.grid().offset() != sub.first_node || predictive.n_nodes() != sub.n_nodes()) {
    throw InvalidInput("make_exchange: slab does not cover subdomain " + std::to_string(sub.id));
  }
  const std::size_t out_node = *sub.output_node(side);
  // The receiver's input boundary lies on the opposite side of the receiver.
  const Side receiver_side = side == Side::Right ? Side::Left : Side::Right;
  return PredictExchange{
      sub.id, side,
      predictive.restrict_nodes(sub.local(region.first_node), sub.local(region.last_node)),
      extract_flux(predictive, sub.local(out_node), receiver_side)};
}

std::size_t select_span(const PredictExchange& a, const PredictExchange& b, double epsilon) {
  const FieldSlab& sa = a.overlap_slab;
  const FieldSlab& sb = b.overlap_slab;
  if (sa.n_nodes() != sb.n_nodes() || sa.n_steps() != sb.n_steps() ||
      sa.grid().offset() != sb.grid().offset() || sa.step0() != sb.step0()) {
    throw InvalidInput("select_span: overlap slabs cover different nodes or steps");
  }
  std::size_t best = 0;
  for (std::size_t x = 0; x < sa.n_nodes(); ++x) {
    std::size_t agree_rows = 0;
    while (agree_rows < sa.n_rows() &&
           std::abs(sa.at(agree_rows, x) - sb.at(agree_rows, x)) <= epsilon) {
      ++agree_rows;
    }
    // agree_rows rows (0..agree_rows-1) match, i.e. a span of agree_rows - 1 steps.
    if (agree_rows > 0) {
      best = std::max(best, agree_rows - 1);
    }
  }
  return best;
}

std::size_t cap_span(std::size_t selected, const OverlapRegion& region,
                     std::size_t safety_steps) {
  if (safety_steps == 0) {
    throw ConfigError("cap_span: safety_steps must be >= 1");
  }
  const std::size_t half = region.width_cells / 2;
  if (half <= safety_steps) {
    throw ConfigError("overlap (" + std::to_string(region.pair.first) + "," +
                      std::to_string(region.pair.second) + ") of " +
                      std::to_string(region.width_cells) + " cells is too thin for safety_steps " +
                      std::to_string(safety_steps) + ": span cap would be zero");
  }
  return std::min(selected, half - safety_steps);
}

std::size_t global_span(const PairwiseSpans& pairwise, std::size_t predict_steps) {
  if (pairwise.empty()) {
    return predict_steps;
  }
  std::size_t span = pairwise.begin()->second;
  for (const auto& [pair, value] : pairwise) {
    if (value == 0) {
      throw ProtocolError("zero span for pair (" + std::to_string(pair.first) + "," +
                          std::to_string(pair.second) + "): no progress possible");
    }
    span = std::min(span, value);
  }
  return span;
}

WindowSolution update_window(const WaveState& state, const Subdomain& sub,
                             const NeighborFlux& neighbor_flux, std::size_t span,
                             const PhysicalSeries& physical, double dt, double a) {
  auto bc = [&](Side side) {
    if (sub.kind(side) == BoundaryKind::PhysicalDirichlet) {
      return physical_bc(physical, side, span, sub.id);
    }
    const auto& flux = neighbor_flux.on(side);
    if (!flux) {
      throw InvalidInput("update_window: subdomain " + std::to_string(sub.id) +
                         " has no neighbor flux for its " + to_string(side) + " interface");
    }
    if (flux->n_steps() < span) {
      throw InvalidInput("update_window: " + std::string(to_string(side)) + " flux of subdomain " +
                         std::to_string(sub.id) + " covers " + std::to_string(flux->n_steps()) +
                         " steps, span is " + std::to_string(span));
    }
    return BoundaryCondition::neumann(flux->truncated(span).values);
  };
  return solve_window(sub.grid, state, bc(Side::Left), bc(Side::Right), span, dt, a);
}

std::size_t next_predict_steps(std::size_t accepted_span, double beta,
                               std::size_t minimum_predict_steps) {
  const double grown = (1.0 + beta) * static_cast<double>(accepted_span);
  const auto steps = static_cast<std::size_t>(std::ceil(grown * (1.0 - 1e-9)));
  return std::max(steps, minimum_predict_steps);
}

WindowPlan advance_plan(const WindowPlan& plan, std::size_t accepted_span, double beta,
                        std::size_t minimum_predict_steps) {
  if (accepted_span == 0) {
    throw InvalidInput("advance_plan: accepted span must be >= 1");
  }
  WindowPlan next;
  next.k = plan.k + 1;
  next.step0 = plan.step0 + static_cast<std::int64_t>(accepted_span);
  next.dt = plan.dt;
  next.t_start = static_cast<double>(next.step0) * plan.dt;
  next.predict_steps = next_predict_steps(accepted_span, beta, minimum_predict_steps);
  return next;
}

FieldSlab stitch(std::span<const FieldSlab> slabs, std::span<const Subdomain> subs,
                 const Grid1D& global) {
  if (slabs.empty() || slabs.size() != subs.size()) {
    throw InvalidInput("stitch: need one slab per subdomain");
  }
  const auto& ref = slabs.front();
  for (const auto& s : slabs) {
    if (s.step0() != ref.step0() || s.n_steps() != ref.n_steps() || s.dt() != ref.dt()) {
      throw InvalidInput("stitch: slabs cover different windows");
    }
  }
  FieldSlab out(global, ref.step0(), ref.dt(), ref.n_steps());
  std::size_t next_node = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto& sub = subs[i];
    if (sub.first_node > next_node) {
      throw InternalError("stitch: global node " + std::to_string(next_node) +
                          " is not covered by any subdomain");
    }
    const std::size_t begin = next_node;
    const std::size_t end = std::max(next_node, sub.last_node + 1);
    for (std::size_t s = 0; s < out.n_rows(); ++s) {
      for (std::size_t g = begin; g < end; ++g) {
        out.at(s, g) = slabs[i].at(s, sub.local(g));
      }
    }
    next_node = end;
  }
  if (next_node != global.size()) {
    throw InternalError("stitch: global node " + std::to_string(next_node) +
                        " is not covered by any subdomain");
  }
  return out;
}

}  // namespace rswr
