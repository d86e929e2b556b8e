#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rswr/grid.hpp"
#include "rswr/wave.hpp"

namespace rswr {

enum class Placement { LeftBoundary, RightBoundary };
enum class PulseShape { GaussianPulse, RaisedCosine, Zero };
enum class ExecutionMode { Parallel, SingleThreadedDeterministic };

/// A boundary drive term. Gaussian: A exp(-((t - c) / w)^2). Raised cosine:
/// A (1 + cos(2 pi (t - c) / w)) / 2 on |t - c| <= w / 2, zero elsewhere.
struct SourceSpec {
  Placement placement = Placement::LeftBoundary;
  PulseShape shape = PulseShape::GaussianPulse;
  double amplitude = 1.0;
  double center_time = 0.0;
  double width = 0.0;

  double evaluate(double t) const;
};

struct OutputOptions {
  std::filesystem::path dir = "rswr_out";
  std::size_t sample_stride = 4;
};

struct RswrConfig {
  double a = 1.0;
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n_nodes = 401;
  double courant = 0.9;
  std::size_t n_subdomains = 2;
  std::size_t overlap_cells = 40;
  double epsilon_rel = 1e-10;
  double beta = 0.1;
  /// 0 selects the default, one overlap transit (overlap_cells).
  std::size_t initial_predict_steps = 0;
  std::size_t safety_steps = 1;
  double t_end = 2.0;
  std::vector<SourceSpec> sources;
  ExecutionMode mode = ExecutionMode::Parallel;
  OutputOptions outputs;

  Grid1D grid() const { return Grid1D::uniform(x_min, x_max, n_nodes); }
  double dx() const { return (x_max - x_min) / static_cast<double>(n_nodes - 1); }
  double dt() const { return courant * dx() / a; }
  /// Smallest step count reaching t_end (0 for t_end <= 0).
  std::size_t total_steps() const;
  std::size_t predict_steps_at_start() const {
    return initial_predict_steps == 0 ? overlap_cells : initial_predict_steps;
  }

  /// Sum of sources placed on the boundary at `side`, evaluated at time t.
  double drive(Side side, double t) const;
  /// drive(side, (step0 + s) dt) for s = 0..n_steps.
  std::vector<double> drive_series(Side side, std::int64_t step0, std::size_t n_steps) const;

  /// Throws StabilityError for courant outside (0, 1] and ConfigError for anything else.
  void validate() const;
};

RswrConfig parse_config(const nlohmann::json& j);
/// Reads, parses and validates. Unknown keys are rejected.
RswrConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RswrConfig& config);

const char* to_string(ExecutionMode mode);
ExecutionMode parse_mode(const std::string& name);

}  // namespace rswr
