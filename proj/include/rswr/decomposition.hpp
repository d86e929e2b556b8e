#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rswr/grid.hpp"
#include "rswr/wave.hpp"

namespace rswr {

enum class BoundaryKind { PhysicalDirichlet, InterfaceNeumann };

/// One overlapping piece of the global grid. All node indices are global.
struct Subdomain {
  std::size_t id = 0;
  Grid1D grid;
  std::size_t first_node = 0;
  std::size_t last_node = 0;
  BoundaryKind left_kind = BoundaryKind::PhysicalDirichlet;
  BoundaryKind right_kind = BoundaryKind::PhysicalDirichlet;
  std::optional<std::size_t> left_neighbor;
  std::optional<std::size_t> right_neighbor;
  /// Artificial boundary where this subdomain receives flux (its own edge node).
  std::optional<std::size_t> left_input_node;
  std::optional<std::size_t> right_input_node;
  /// Neighbor's input boundary, strictly inside this subdomain; flux is produced here.
  std::optional<std::size_t> left_output_node;
  std::optional<std::size_t> right_output_node;

  BoundaryKind kind(Side side) const { return side == Side::Left ? left_kind : right_kind; }
  std::optional<std::size_t> neighbor(Side side) const {
    return side == Side::Left ? left_neighbor : right_neighbor;
  }
  std::optional<std::size_t> output_node(Side side) const {
    return side == Side::Left ? left_output_node : right_output_node;
  }
  bool contains(std::size_t global) const {
    return global >= first_node && global <= last_node;
  }
  std::size_t local(std::size_t global) const { return global - first_node; }
  std::size_t n_nodes() const { return last_node - first_node + 1; }
};

/// Shared nodes of two adjacent subdomains, [input node of the right one, input node of the left one].
struct OverlapRegion {
  std::pair<std::size_t, std::size_t> pair;
  std::size_t first_node = 0;
  std::size_t last_node = 0;
  std::size_t width_cells = 0;
  /// Steps for a disturbance to cross the overlap at one cell per step.
  std::size_t transit_steps = 0;
  double width_length = 0.0;
};

struct Partition {
  std::vector<Subdomain> subdomains;
  std::vector<OverlapRegion> overlaps;
};

/// Even split: interface i sits at round(i (n-1) / N) and is widened by overlap_cells / 2
/// each way. Throws InvalidInput for odd or too small overlaps and for geometries in which
/// overlaps would touch or reach a physical boundary.
Partition partition(const Grid1D& global, std::size_t n_subdomains, std::size_t overlap_cells);

/// Region shared by i and j, or nullopt for disjoint pairs. Throws InvalidInput when i == j.
std::optional<OverlapRegion> overlap_of(std::size_t i, std::size_t j,
                                        std::span<const OverlapRegion> regions);

}  // namespace rswr
