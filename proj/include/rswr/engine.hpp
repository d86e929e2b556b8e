#pragma once

// Predict / select / update window protocol for overlapping subdomains.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rswr/decomposition.hpp"
#include "rswr/grid.hpp"
#include "rswr/wave.hpp"

namespace rswr {

/// Bookkeeping for window k. Spans are counted in time steps.
struct WindowPlan {
  std::size_t k = 1;
  std::int64_t step0 = 0;
  double dt = 0.0;
  double t_start = 0.0;
  std::size_t predict_steps = 0;
  /// Smallest capped pairwise span of the round (0 until selection).
  std::size_t selected_steps = 0;
  /// Steps committed by every subdomain in this window.
  std::size_t global_steps = 0;

  /// Window 1 predicts over the initial span regardless of any growth factor.
  static WindowPlan first(std::size_t initial_predict_steps, double dt, std::int64_t step0 = 0);
};

/// What one subdomain sends to an adjacent one after predicting.
struct PredictExchange {
  std::size_t sender = 0;
  /// Side of the sender the receiver sits on.
  Side side = Side::Left;
  /// Predictive values on the overlap nodes only.
  FieldSlab overlap_slab;
  /// Predictive flux at the receiver's input boundary.
  FluxWaveform output_flux;
};

/// Physical Dirichlet samples for a window, one per row; only needed on physical sides.
struct PhysicalSeries {
  std::optional<std::vector<double>> left;
  std::optional<std::vector<double>> right;

  const std::optional<std::vector<double>>& on(Side side) const {
    return side == Side::Left ? left : right;
  }
};

/// Flux received from neighbors, keyed by the receiving side.
struct NeighborFlux {
  std::optional<FluxWaveform> left;
  std::optional<FluxWaveform> right;

  const std::optional<FluxWaveform>& on(Side side) const {
    return side == Side::Left ? left : right;
  }
};

/// Pairwise span keyed by (left id, right id).
using PairwiseSpans = std::map<std::pair<std::size_t, std::size_t>, std::size_t>;

/// Predictive solve: zero flux on every interface side, physical drive elsewhere.
FieldSlab predict(const WaveState& state, const Subdomain& sub, std::size_t predict_steps,
                  const PhysicalSeries& physical, double dt, double a);

/// Builds the message `sub` sends across `region` from its predictive slab.
PredictExchange make_exchange(const FieldSlab& predictive, const Subdomain& sub,
                              const OverlapRegion& region);

/// Largest m(x) over overlap nodes, where rows 0..m(x) of both predictions agree
/// within epsilon at x. Symmetric in its arguments.
std::size_t select_span(const PredictExchange& a, const PredictExchange& b, double epsilon);

/// min(selected, floor(width / 2) - safety_steps): the discrete, strict form of
/// span * dt < width_length / (2 a) at one cell per step. ConfigError if the cap is < 1.
std::size_t cap_span(std::size_t selected, const OverlapRegion& region, std::size_t safety_steps);

/// Minimum over adjacent pairs; predict_steps when there are none. ProtocolError
/// naming the pair if any entry is zero.
std::size_t global_span(const PairwiseSpans& pairwise, std::size_t predict_steps);

/// Accepted solve over `span` steps using the neighbors' predictive output flux.
WindowSolution update_window(const WaveState& state, const Subdomain& sub,
                             const NeighborFlux& neighbor_flux, std::size_t span,
                             const PhysicalSeries& physical, double dt, double a);

/// ceil((1 + beta) * accepted_span), at least minimum_predict_steps. A relative slack of
/// 1e-9 keeps products like 1.1 * 10 from rounding up to the next integer.
std::size_t next_predict_steps(std::size_t accepted_span, double beta,
                               std::size_t minimum_predict_steps = 1);

/// Window k + 1 after committing accepted_span steps in window k.
WindowPlan advance_plan(const WindowPlan& plan, std::size_t accepted_span, double beta,
                        std::size_t minimum_predict_steps = 1);

/// Global slab in which each node comes from the lowest-id subdomain that contains it.
FieldSlab stitch(std::span<const FieldSlab> slabs, std::span<const Subdomain> subs,
                 const Grid1D& global);

}  // namespace rswr
