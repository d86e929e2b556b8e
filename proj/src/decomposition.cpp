#include "rswr/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rswr/errors.hpp"

namespace rswr {

Partition partition(const Grid1D& global, std::size_t n_subdomains, std::size_t overlap_cells) {
  if (n_subdomains == 0) {
    throw InvalidInput("partition: need at least one subdomain");
  }
  const std::size_t n = global.size();
  Partition out;
  if (n_subdomains == 1) {
    Subdomain only;
    only.grid = global;
    only.first_node = 0;
    only.last_node = n - 1;
    out.subdomains.push_back(std::move(only));
    return out;
  }
  if (overlap_cells < 2 || overlap_cells % 2 != 0) {
    throw InvalidInput("partition: overlap_cells must be even and >= 2, got " +
                       std::to_string(overlap_cells));
  }
  const std::size_t half = overlap_cells / 2;
  const std::size_t cells = n - 1;

  std::vector<std::size_t> centers(n_subdomains + 1);
  for (std::size_t i = 0; i <= n_subdomains; ++i) {
    centers[i] = static_cast<std::size_t>(
        std::llround(static_cast<double>(i * cells) / static_cast<double>(n_subdomains)));
  }
  // Overlaps must stay off the physical boundaries and must not touch each other.
  if (centers[1] < half + 1 || centers[n_subdomains - 1] + half + 1 > cells) {
    throw InvalidInput("partition: overlap of " + std::to_string(overlap_cells) +
                       " cells reaches a physical boundary of a " + std::to_string(n) +
                       "-node grid split " + std::to_string(n_subdomains) + " ways");
  }
  for (std::size_t i = 1; i + 1 < n_subdomains; ++i) {
    if (centers[i + 1] - centers[i] <= overlap_cells) {
      throw InvalidInput("partition: overlaps around interfaces " + std::to_string(i) + " and " +
                         std::to_string(i + 1) + " would touch");
    }
  }

  for (std::size_t i = 0; i < n_subdomains; ++i) {
    Subdomain sub;
    sub.id = i;
    sub.first_node = i == 0 ? 0 : centers[i] - half;
    sub.last_node = i + 1 == n_subdomains ? cells : centers[i + 1] + half;
    sub.grid = global.restrict_to(sub.first_node, sub.last_node);
    if (i > 0) {
      sub.left_kind = BoundaryKind::InterfaceNeumann;
      sub.left_neighbor = i - 1;
      sub.left_input_node = sub.first_node;
      sub.left_output_node = centers[i] + half;
    }
    if (i + 1 < n_subdomains) {
      sub.right_kind = BoundaryKind::InterfaceNeumann;
      sub.right_neighbor = i + 1;
      sub.right_input_node = sub.last_node;
      sub.right_output_node = centers[i + 1] - half;
    }
    out.subdomains.push_back(std::move(sub));
  }
  for (std::size_t i = 0; i + 1 < n_subdomains; ++i) {
    OverlapRegion r;
    r.pair = {i, i + 1};
    r.first_node = out.subdomains[i + 1].first_node;
    r.last_node = out.subdomains[i].last_node;
    r.width_cells = r.last_node - r.first_node;
    r.transit_steps = r.width_cells;
    r.width_length = static_cast<double>(r.width_cells) * global.dx();
    out.overlaps.push_back(r);
  }
  return out;
}

std::optional<OverlapRegion> overlap_of(std::size_t i, std::size_t j,
                                        std::span<const OverlapRegion> regions) {
  if (i == j) {
    throw InvalidInput("overlap_of: a subdomain does not overlap itself (" + std::to_string(i) +
                       ")");
  }
  const auto key = std::minmax(i, j);
  for (const auto& r : regions) {
    if (r.pair.first == key.first && r.pair.second == key.second) {
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace rswr
