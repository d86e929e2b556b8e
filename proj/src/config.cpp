#include "rswr/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "rswr/decomposition.hpp"
#include "rswr/errors.hpp"

namespace rswr {

namespace {

using nlohmann::json;

const char* to_string(Placement p) { return p == Placement::LeftBoundary ? "left" : "right"; }

const char* to_string(PulseShape s) {
  switch (s) {
    case PulseShape::GaussianPulse:
      return "gaussian";
    case PulseShape::RaisedCosine:
      return "raised_cosine";
    case PulseShape::Zero:
      return "zero";
  }
  return "zero";
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) {
    return;
  }
  const auto& v = j.at(key);
  try {
    if constexpr (std::is_same_v<T, std::size_t>) {
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(where + ": '" + key + "' must be a non-negative integer");
      }
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) {
        throw ConfigError(where + ": '" + key + "' must be a number");
      }
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) {
        throw ConfigError(where + ": '" + key + "' must be a string");
      }
    }
    out = v.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": '" + key + "': " + e.what());
  }
}

SourceSpec parse_source(const json& j, std::size_t index) {
  const std::string where = "sources[" + std::to_string(index) + "]";
  if (!j.is_object()) {
    throw ConfigError(where + ": must be an object");
  }
  reject_unknown(j, {"placement", "shape", "amplitude", "center_time", "width"}, where);
  SourceSpec s;
  std::string placement = "left";
  std::string shape = "gaussian";
  read(j, "placement", placement, where);
  read(j, "shape", shape, where);
  read(j, "amplitude", s.amplitude, where);
  read(j, "center_time", s.center_time, where);
  read(j, "width", s.width, where);
  if (placement == "left") {
    s.placement = Placement::LeftBoundary;
  } else if (placement == "right") {
    s.placement = Placement::RightBoundary;
  } else {
    throw ConfigError(where + ": 'placement' must be left or right");
  }
  if (shape == "gaussian") {
    s.shape = PulseShape::GaussianPulse;
  } else if (shape == "raised_cosine") {
    s.shape = PulseShape::RaisedCosine;
  } else if (shape == "zero") {
    s.shape = PulseShape::Zero;
  } else {
    throw ConfigError(where + ": 'shape' must be gaussian, raised_cosine or zero");
  }
  return s;
}

}  // namespace

double SourceSpec::evaluate(double t) const {
  switch (shape) {
    case PulseShape::GaussianPulse: {
      const double z = (t - center_time) / width;
      return amplitude * std::exp(-z * z);
    }
    case PulseShape::RaisedCosine: {
      const double z = (t - center_time) / width;
      if (std::abs(z) > 0.5) {
        return 0.0;
      }
      return amplitude * 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * z));
    }
    case PulseShape::Zero:
      return 0.0;
  }
  return 0.0;
}

std::size_t RswrConfig::total_steps() const {
  if (!(t_end > 0.0)) {
    return 0;
  }
  return static_cast<std::size_t>(std::ceil(t_end / dt() * (1.0 - 1e-12)));
}

double RswrConfig::drive(Side side, double t) const {
  const Placement p = side == Side::Left ? Placement::LeftBoundary : Placement::RightBoundary;
  double sum = 0.0;
  for (const auto& s : sources) {
    if (s.placement == p) {
      sum += s.evaluate(t);
    }
  }
  return sum;
}

std::vector<double> RswrConfig::drive_series(Side side, std::int64_t step0,
                                             std::size_t n_steps) const {
  const double step_dt = dt();
  std::vector<double> out(n_steps + 1);
  for (std::size_t s = 0; s <= n_steps; ++s) {
    out[s] = drive(side, static_cast<double>(step0 + static_cast<std::int64_t>(s)) * step_dt);
  }
  return out;
}

void RswrConfig::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ConfigError("a: wave speed must be > 0");
  }
  if (!(x_max > x_min)) {
    throw ConfigError("x_max: must exceed x_min");
  }
  if (n_nodes < 3) {
    throw ConfigError("n_nodes: must be >= 3");
  }
  if (!(courant > 0.0) || courant > 1.0) {
    throw StabilityError("courant: " + std::to_string(courant) + " outside (0, 1]");
  }
  if (n_subdomains < 1) {
    throw ConfigError("n_subdomains: must be >= 1");
  }
  if (overlap_cells % 2 != 0) {
    throw ConfigError("overlap_cells: must be even, got " + std::to_string(overlap_cells));
  }
  if (overlap_cells < 4) {
    throw ConfigError("overlap_cells: must be >= 4, got " + std::to_string(overlap_cells));
  }
  if (!(epsilon_rel > 0.0)) {
    throw ConfigError("epsilon_rel: must be > 0");
  }
  if (!(beta >= 0.0)) {
    throw ConfigError("beta: must be >= 0");
  }
  if (safety_steps < 1) {
    throw ConfigError("safety_steps: must be >= 1");
  }
  if (overlap_cells / 2 <= safety_steps) {
    throw ConfigError("overlap_cells: " + std::to_string(overlap_cells) +
                      " leaves no span after safety_steps " + std::to_string(safety_steps));
  }
  if (!std::isfinite(t_end) || t_end < 0.0) {
    throw ConfigError("t_end: must be finite and >= 0");
  }
  if (outputs.sample_stride < 1) {
    throw ConfigError("outputs.sample_stride: must be >= 1");
  }
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto& s = sources[i];
    const std::string where = "sources[" + std::to_string(i) + "]";
    if (s.shape == PulseShape::Zero) {
      continue;
    }
    if (!(s.width > 0.0)) {
      throw ConfigError(where + ".width: must be > 0");
    }
    if (std::abs(s.evaluate(0.0)) > 1e-14 * std::abs(s.amplitude)) {
      throw ConfigError(where + ": drive is not zero at t = 0 (incompatible with zero initial data)");
    }
  }
  try {
    partition(grid(), n_subdomains, overlap_cells);
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("n_subdomains/overlap_cells: ") + e.what());
  }
}

RswrConfig parse_config(const json& j) {
  const std::string where = "config";
  if (!j.is_object()) {
    throw ConfigError("config: top level must be a JSON object");
  }
  reject_unknown(j,
                 {"a", "x_min", "x_max", "n_nodes", "courant", "n_subdomains", "overlap_cells",
                  "epsilon_rel", "beta", "initial_predict_steps", "safety_steps", "t_end",
                  "sources", "mode", "outputs"},
                 where);
  RswrConfig c;
  read(j, "a", c.a, where);
  read(j, "x_min", c.x_min, where);
  read(j, "x_max", c.x_max, where);
  read(j, "n_nodes", c.n_nodes, where);
  read(j, "courant", c.courant, where);
  read(j, "n_subdomains", c.n_subdomains, where);
  read(j, "overlap_cells", c.overlap_cells, where);
  read(j, "epsilon_rel", c.epsilon_rel, where);
  read(j, "beta", c.beta, where);
  read(j, "initial_predict_steps", c.initial_predict_steps, where);
  read(j, "safety_steps", c.safety_steps, where);
  read(j, "t_end", c.t_end, where);
  if (j.contains("sources")) {
    const auto& src = j.at("sources");
    if (!src.is_array()) {
      throw ConfigError("config: 'sources' must be an array");
    }
    for (std::size_t i = 0; i < src.size(); ++i) {
      c.sources.push_back(parse_source(src[i], i));
    }
  }
  if (j.contains("mode")) {
    std::string mode;
    read(j, "mode", mode, where);
    try {
      c.mode = parse_mode(mode);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: 'mode': ") + e.what());
    }
  }
  if (j.contains("outputs")) {
    const auto& out = j.at("outputs");
    if (!out.is_object()) {
      throw ConfigError("config: 'outputs' must be an object");
    }
    reject_unknown(out, {"dir", "sample_stride"}, "outputs");
    std::string dir = c.outputs.dir.string();
    read(out, "dir", dir, "outputs");
    c.outputs.dir = dir;
    read(out, "sample_stride", c.outputs.sample_stride, "outputs");
  }
  c.validate();
  return c;
}

RswrConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

nlohmann::json to_json(const RswrConfig& c) {
  json sources = json::array();
  for (const auto& s : c.sources) {
    sources.push_back({{"placement", to_string(s.placement)},
                       {"shape", to_string(s.shape)},
                       {"amplitude", s.amplitude},
                       {"center_time", s.center_time},
                       {"width", s.width}});
  }
  return {{"a", c.a},
          {"x_min", c.x_min},
          {"x_max", c.x_max},
          {"n_nodes", c.n_nodes},
          {"courant", c.courant},
          {"n_subdomains", c.n_subdomains},
          {"overlap_cells", c.overlap_cells},
          {"epsilon_rel", c.epsilon_rel},
          {"beta", c.beta},
          {"initial_predict_steps", c.predict_steps_at_start()},
          {"safety_steps", c.safety_steps},
          {"t_end", c.t_end},
          {"sources", sources},
          {"mode", to_string(c.mode)},
          {"outputs", {{"dir", c.outputs.dir.string()}, {"sample_stride", c.outputs.sample_stride}}}};
}

const char* to_string(ExecutionMode mode) {
  return mode == ExecutionMode::Parallel ? "parallel" : "single";
}

ExecutionMode parse_mode(const std::string& name) {
  if (name == "parallel") {
    return ExecutionMode::Parallel;
  }
  if (name == "single") {
    return ExecutionMode::SingleThreadedDeterministic;
  }
  throw std::invalid_argument("mode must be parallel or single, got '" + name + "'");
}

}  // namespace rswr
