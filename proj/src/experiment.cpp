#include "rswr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "rswr/csv.hpp"
#include "rswr/errors.hpp"

namespace rswr {

namespace {

constexpr double kRelativeTolerance = 1e-10;

SourceSpec gaussian(Placement placement, double center, double width) {
  return SourceSpec{placement, PulseShape::GaussianPulse, 1.0, center, width};
}

void write_report(std::ostream& out, Preset preset, const RswrConfig& config,
                  const ExperimentResult& r) {
  const auto& run = r.run;
  out << "preset: " << to_string(preset) << '\n'
      << "subdomains: " << config.n_subdomains << ", nodes: " << config.n_nodes
      << ", overlap_cells: " << config.overlap_cells << ", courant: " << config.courant
      << ", t_end: " << config.t_end << '\n'
      << "mode: " << to_string(run.mode) << ", threads: " << run.threads << '\n'
      << "steps: " << run.total_steps << ", windows: " << run.windows.size() << '\n';
  out << "\n[error]\n"
      << "max_abs: " << csv::format_number(r.error.max_abs) << '\n'
      << "l2_spacetime: " << csv::format_number(r.error.l2_spacetime) << '\n'
      << "location_of_max: step " << r.error.location_of_max.first << ", node "
      << r.error.location_of_max.second << '\n'
      << "scale (max |u|): " << csv::format_number(r.scale) << '\n'
      << "tolerance: " << csv::format_number(r.tolerance) << '\n'
      << "within_tolerance: " << (r.within_tolerance ? "yes" : "no") << '\n';

  std::size_t min_span = 0;
  std::size_t max_span = 0;
  for (std::size_t i = 0; i < run.windows.size(); ++i) {
    const auto s = run.windows[i].global_steps;
    min_span = i == 0 ? s : std::min(min_span, s);
    max_span = std::max(max_span, s);
  }
  out << "\n[run]\n"
      << "span_steps: min " << min_span << ", max " << max_span << '\n'
      << "messages: exchange " << run.messages.exchange << ", vote " << run.messages.vote
      << ", decision " << run.messages.decision << ", termination " << run.messages.termination
      << '\n';
  if (!run.windows.empty()) {
    out << "field messages per round: " << run.windows.front().field_messages << '\n';
  }
  out << "seconds: predict " << run.seconds.predict << ", vote " << run.seconds.vote
      << ", reduce " << run.seconds.reduce << ", update " << run.seconds.update << ", stitch "
      << run.seconds.stitch << '\n';
}

}  // namespace

Preset parse_preset(const std::string& name) {
  if (name == "n2") {
    return Preset::N2;
  }
  if (name == "n10") {
    return Preset::N10;
  }
  if (name == "custom") {
    return Preset::Custom;
  }
  throw ConfigError("preset must be n2, n10 or custom, got '" + name + "'");
}

const char* to_string(Preset preset) {
  switch (preset) {
    case Preset::N2:
      return "n2";
    case Preset::N10:
      return "n10";
    case Preset::Custom:
      return "custom";
  }
  return "custom";
}

RswrConfig apply_preset(Preset preset, RswrConfig seed) {
  if (preset == Preset::Custom) {
    return seed;
  }
  const double transit = (seed.x_max - seed.x_min) / seed.a;
  seed.sources.clear();
  if (preset == Preset::N2) {
    seed.n_nodes = 401;
    seed.n_subdomains = 2;
  } else {
    seed.n_nodes = 2001;
    seed.n_subdomains = 10;
  }
  const double width = 5.0 * seed.dx() / seed.a;
  const double onset = 6.0 * width;
  if (preset == Preset::N2) {
    seed.sources.push_back(gaussian(Placement::LeftBoundary, onset, width));
    seed.sources.push_back(gaussian(Placement::RightBoundary, onset + 0.1 * transit, width));
  } else {
    for (int j = 0; j < 5; ++j) {
      seed.sources.push_back(gaussian(Placement::LeftBoundary, onset + 0.2 * j * transit, width));
      seed.sources.push_back(
          gaussian(Placement::RightBoundary, onset + (0.1 + 0.2 * j) * transit, width));
    }
  }
  seed.validate();
  return seed;
}

ExperimentResult run_experiment(Preset preset, const RswrConfig& input,
                                const runtime::RunOptions& options) {
  const RswrConfig config = apply_preset(preset, input);
  config.validate();

  const FieldSlab reference = oracle::solve_monolithic(config);
  runtime::RswrResult rswr = runtime::run_rswr(config, options);

  ExperimentResult r;
  r.run = rswr.report;
  double max_u = 0.0;
  for (double v : reference.values()) {
    max_u = std::max(max_u, std::abs(v));
  }
  r.scale = max_u;
  r.tolerance = kRelativeTolerance * r.scale;
  r.error = oracle::compare_windows(rswr.windows, reference);
  r.within_tolerance = r.error.max_abs <= r.tolerance;

  const auto& dir = config.outputs.dir;
  std::filesystem::create_directories(dir);
  r.solution_csv = dir / "solution.csv";
  r.error_csv = dir / "errors.csv";
  r.report_txt = dir / "report.txt";

  const FieldSlab solution = rswr.assemble(config.grid(), config.dt());
  std::ofstream sol(r.solution_csv);
  csv::write_solution(sol, solution, config.outputs.sample_stride);
  std::ofstream err(r.error_csv);
  csv::write_errors(err, r.run.windows, r.error.per_window_max);
  std::ofstream rep(r.report_txt);
  write_report(rep, preset, config, r);
  if (!sol || !err || !rep) {
    throw ConfigError("cannot write outputs under " + dir.string());
  }
  return r;
}

}  // namespace rswr
