#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgapod/adaptive.hpp"
#include "tgapod/linear_solver.hpp"

namespace tgapod {

/// Invalid configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { Fem, Pod, ApodResidual, TgApod };
enum class SweepAxis { Gamma3, Gamma12, CoarseN };

const char* method_name(Method m);
Method parse_method(const std::string& s);
const char* sweep_axis_name(SweepAxis a);

struct RunConfig {
  std::string problem = "kolmogorov";
  double eps = 0.1;
  double w = 1.0;

  std::size_t fine_n = 8;
  std::size_t coarse_n = 4;
  double coarse_dt = 0.05;
  /// fine step, horizon, T₀, δT, δM, γ's and η₀ live here
  AdaptiveParams adaptive;
  SolverConfig solver;

  Method method = Method::Pod;
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 0;

  // converge
  std::vector<std::size_t> converge_n = {8, 16, 32};
  double converge_dt = 1e-3;
  double converge_T = 0.1;
  std::size_t converge_time_n = 16;
  std::vector<double> converge_time_dt = {0.04, 0.02, 0.01};
  double converge_time_T = 1.0;

  // sweep
  SweepAxis sweep_axis = SweepAxis::Gamma3;
  std::vector<double> sweep_values;

  TwoGridParams two_grid() const { return {coarse_n, coarse_dt}; }
  /// Throws ConfigError on any range or alignment violation.
  void validate() const;
};

/// Flat `section.key = value` text; `#` starts a comment. Unknown or repeated
/// keys are errors. Unset warm-up parameters follow the flow and diffusivity.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::filesystem::path& path);

}  // namespace tgapod
