#pragma once

#include <filesystem>
#include <string>

#include "rswr/config.hpp"
#include "rswr/oracle.hpp"
#include "rswr/runtime.hpp"

namespace rswr {

enum class Preset { N2, N10, Custom };

Preset parse_preset(const std::string& name);
const char* to_string(Preset preset);

/// Two-subdomain pulse experiment: 401 nodes, one Gaussian pulse per boundary.
/// Ten-subdomain pulse experiment: 2001 nodes, five pulses per boundary staggered in time.
/// Presets replace n_nodes, n_subdomains and sources; everything else comes from `seed`.
/// Pulses span about 20 cells (Gaussian width 5 dx / a, centred 6 widths after onset).
RswrConfig apply_preset(Preset preset, RswrConfig seed);

struct ExperimentResult {
  oracle::ErrorReport error;
  runtime::RunReport run;
  /// max |u| of the monolithic solution.
  double scale = 1.0;
  double tolerance = 0.0;
  bool within_tolerance = false;
  std::filesystem::path solution_csv;
  std::filesystem::path error_csv;
  std::filesystem::path report_txt;
};

/// Runs the monolithic oracle and the windowed protocol, then writes solution.csv,
/// errors.csv and report.txt under config.outputs.dir. Tolerance is 1e-10 * scale.
ExperimentResult run_experiment(Preset preset, const RswrConfig& config,
                                const runtime::RunOptions& options = {});

}  // namespace rswr
