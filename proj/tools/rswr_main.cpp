// rswr: run windowed Schwarz experiments and compare solution files.
//
//   rswr run --config <path> [--preset n2|n10|custom] [--mode parallel|single] [--out <dir>]
//   rswr compare --a <csv> --b <csv>
//
// Exit status: 0 success, 1 configuration or input error, 2 protocol error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rswr/config.hpp"
#include "rswr/csv.hpp"
#include "rswr/errors.hpp"
#include "rswr/experiment.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kProtocolError = 2;

int run_command(const std::string& config_path, const std::string& preset_name,
                const std::string& mode, const std::string& out_dir) {
  rswr::RswrConfig config = rswr::load_config(config_path);
  if (!mode.empty()) {
    try {
      config.mode = rswr::parse_mode(mode);
    } catch (const std::invalid_argument& e) {
      throw rswr::ConfigError(e.what());
    }
  }
  if (!out_dir.empty()) {
    config.outputs.dir = out_dir;
  }
  const auto preset = rswr::parse_preset(preset_name);
  const auto result = rswr::run_experiment(preset, config);
  std::cout << "windows: " << result.run.windows.size()
            << "  max_abs: " << rswr::csv::format_number(result.error.max_abs)
            << "  tolerance: " << rswr::csv::format_number(result.tolerance)
            << (result.within_tolerance ? "  ok" : "  EXCEEDED") << '\n'
            << "wrote " << result.solution_csv.string() << ", " << result.error_csv.string()
            << ", " << result.report_txt.string() << '\n';
  return 0;
}

int compare_command(const std::string& a_path, const std::string& b_path) {
  auto read = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) {
      throw rswr::InvalidInput("cannot open " + path);
    }
    return rswr::csv::read_solution(in);
  };
  const auto a = read(a_path);
  const auto b = read(b_path);
  const double diff = rswr::csv::max_abs_difference(a, b);
  std::cout << "rows: " << a.t.size() << "  columns: " << a.x.size()
            << "  max_abs: " << rswr::csv::format_number(diff)
            << (diff == 0.0 ? "  (identical)" : "") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Windowed overlapping Schwarz solver for the 1-D wave equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset = "custom";
  std::string mode;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run the oracle and the windowed protocol, write CSVs");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--preset", preset, "n2, n10 or custom")
      ->check(CLI::IsMember({"n2", "n10", "custom"}));
  run->add_option("--mode", mode, "parallel or single")
      ->check(CLI::IsMember({"parallel", "single"}));
  run->add_option("--out", out_dir, "Output directory (overrides outputs.dir)");

  std::string a_path;
  std::string b_path;
  auto* compare = app.add_subcommand("compare", "Max absolute difference of two solution CSVs");
  compare->add_option("--a", a_path, "First solution CSV")->required();
  compare->add_option("--b", b_path, "Second solution CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) {
      return run_command(config_path, preset, mode, out_dir);
    }
    return compare_command(a_path, b_path);
  } catch (const rswr::ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << '\n';
    return kProtocolError;
  } catch (const rswr::StabilityError& e) {
    std::cerr << "stability error: " << e.what() << '\n';
    return kConfigError;
  } catch (const rswr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const rswr::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}
