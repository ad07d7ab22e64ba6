#include "tgapod/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tgapod {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  if (used != value.size()) throw ConfigError(key + ": expected a number, got '" + value + "'");
  return v;
}

std::int64_t to_int(const std::string& key, const std::string& value) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  return v;
}

std::size_t to_count(const std::string& key, const std::string& value) {
  const auto v = to_int(key, value);
  if (v < 0) throw ConfigError(key + ": must be non-negative");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void require_multiple(double span, const char* span_key, double step, const char* step_key) {
  try {
    integral_steps(span, step, span_key);
  } catch (const std::invalid_argument&) {
    throw ConfigError(std::string("alignment error: ") + span_key + "=" + fmt(span) + " is not a multiple of " +
                      step_key + "=" + fmt(step));
  }
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::Fem: return "fem";
    case Method::Pod: return "pod";
    case Method::ApodResidual: return "apod-residual";
    case Method::TgApod: return "tg-apod";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "fem") return Method::Fem;
  if (s == "pod") return Method::Pod;
  if (s == "apod-residual" || s == "apod") return Method::ApodResidual;
  if (s == "tg-apod" || s == "tgapod") return Method::TgApod;
  throw ConfigError("run.method: unknown method '" + s + "' (fem, pod, apod-residual, tg-apod)");
}

const char* sweep_axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::Gamma3: return "gamma3";
    case SweepAxis::Gamma12: return "gamma12";
    case SweepAxis::CoarseN: return "coarse-n";
  }
  return "?";
}

void RunConfig::validate() const {
  require(problem == "kolmogorov" || problem == "abc" || problem == "manufactured",
          "problem.name: unknown problem '" + problem + "' (kolmogorov, abc, manufactured)");
  require(eps > 0.0, "problem.eps: must be positive");
  require(fine_n >= 2, "fine.n: must be at least 2");
  require(coarse_n >= 2, "coarse.n: must be at least 2");
  require(coarse_n < fine_n, "coarse.n: must be smaller than fine.n");
  const auto& a = adaptive;
  require(a.dt > 0.0, "fine.dt: must be positive");
  require(coarse_dt > 0.0, "coarse.dt: must be positive");
  require(a.horizon > 0.0, "problem.T: must be positive");
  require(a.gamma1 > 0.0 && a.gamma1 < 1.0, "pod.gamma1: must lie in (0, 1)");
  require(a.gamma2 > 0.0 && a.gamma2 < 1.0, "pod.gamma2: must lie in (0, 1)");
  require(a.gamma3 > 0.0 && a.gamma3 < 1.0, "pod.gamma3: must lie in (0, 1)");
  require(a.eta0 > 0.0, "pod.eta0: must be positive, got " + fmt(a.eta0));
  require(a.warmup > 0.0, "pod.T0: must be positive");
  require(a.warmup < a.horizon, "pod.T0: must be smaller than problem.T");
  require(a.update_window > 0.0, "pod.dT: must be positive");
  require(a.snapshot_stride >= 1, "pod.dM: must be at least 1");
  require(solver.rel_tol > 0.0 && solver.rel_tol < 1.0, "solver.rel_tol: must lie in (0, 1)");
  require(solver.max_iter >= 1, "solver.max_iter: must be at least 1");
  require(solver.restart >= 1, "solver.restart: must be at least 1");

  require_multiple(coarse_dt, "coarse.dt", a.dt, "fine.dt");
  require_multiple(a.horizon, "problem.T", a.dt, "fine.dt");
  require_multiple(a.warmup, "pod.T0", coarse_dt, "coarse.dt");
  require_multiple(a.update_window, "pod.dT", coarse_dt, "coarse.dt");
  require_multiple(a.horizon, "problem.T", coarse_dt, "coarse.dt");

  for (auto n : converge_n) require(n >= 2, "converge.n: every entry must be at least 2");
  require(converge_dt > 0.0 && converge_T > 0.0, "converge.dt / converge.T: must be positive");
  require_multiple(converge_T, "converge.T", converge_dt, "converge.dt");
  require(converge_time_n >= 2, "converge.time_n: must be at least 2");
  for (double dt : converge_time_dt) {
    require(dt > 0.0, "converge.time_dt: entries must be positive");
    require_multiple(converge_time_T, "converge.time_T", dt, "converge.time_dt");
  }
  for (double v : sweep_values) {
    if (sweep_axis == SweepAxis::CoarseN) {
      require(v >= 2.0 && v < static_cast<double>(fine_n) && v == std::floor(v),
              "sweep.values: coarse-n entries must be integers in [2, fine.n)");
    } else {
      require(v > 0.0 && v < 1.0, "sweep.values: energy fractions must lie in (0, 1)");
    }
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  cfg.adaptive.dt = 0.01;
  cfg.adaptive.horizon = 10.0;
  bool warmup_set = false, window_set = false, stride_set = false;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"problem.name", [&](auto&, auto& v) { cfg.problem = v; }},
      {"problem.eps", [&](auto& k, auto& v) { cfg.eps = to_double(k, v); }},
      {"problem.w", [&](auto& k, auto& v) { cfg.w = to_double(k, v); }},
      {"problem.T", [&](auto& k, auto& v) { cfg.adaptive.horizon = to_double(k, v); }},
      {"fine.n", [&](auto& k, auto& v) { cfg.fine_n = to_count(k, v); }},
      {"fine.dt", [&](auto& k, auto& v) { cfg.adaptive.dt = to_double(k, v); }},
      {"coarse.n", [&](auto& k, auto& v) { cfg.coarse_n = to_count(k, v); }},
      {"coarse.dt", [&](auto& k, auto& v) { cfg.coarse_dt = to_double(k, v); }},
      {"pod.gamma1", [&](auto& k, auto& v) { cfg.adaptive.gamma1 = to_double(k, v); }},
      {"pod.gamma2", [&](auto& k, auto& v) { cfg.adaptive.gamma2 = to_double(k, v); }},
      {"pod.gamma3", [&](auto& k, auto& v) { cfg.adaptive.gamma3 = to_double(k, v); }},
      {"pod.eta0", [&](auto& k, auto& v) { cfg.adaptive.eta0 = to_double(k, v); }},
      {"pod.T0", [&](auto& k, auto& v) { cfg.adaptive.warmup = to_double(k, v); warmup_set = true; }},
      {"pod.dT", [&](auto& k, auto& v) { cfg.adaptive.update_window = to_double(k, v); window_set = true; }},
      {"pod.dM", [&](auto& k, auto& v) { cfg.adaptive.snapshot_stride = to_int(k, v); stride_set = true; }},
      {"solver.method",
       [&](auto& k, auto& v) {
         if (v == "krylov") cfg.solver.method = SolverMethod::Krylov;
         else if (v == "direct") cfg.solver.method = SolverMethod::Direct;
         else throw ConfigError(k + ": expected 'krylov' or 'direct', got '" + v + "'");
       }},
      {"solver.rel_tol", [&](auto& k, auto& v) { cfg.solver.rel_tol = to_double(k, v); }},
      {"solver.max_iter", [&](auto& k, auto& v) { cfg.solver.max_iter = static_cast<int>(to_int(k, v)); }},
      {"solver.restart", [&](auto& k, auto& v) { cfg.solver.restart = static_cast<int>(to_int(k, v)); }},
      {"run.method", [&](auto&, auto& v) { cfg.method = parse_method(v); }},
      {"run.out", [&](auto&, auto& v) { cfg.out_dir = v; }},
      {"run.seed", [&](auto& k, auto& v) { cfg.seed = static_cast<std::uint64_t>(to_count(k, v)); }},
      {"converge.n",
       [&](auto& k, auto& v) {
         cfg.converge_n.clear();
         for (const auto& item : split_list(v)) cfg.converge_n.push_back(to_count(k, item));
       }},
      {"converge.dt", [&](auto& k, auto& v) { cfg.converge_dt = to_double(k, v); }},
      {"converge.T", [&](auto& k, auto& v) { cfg.converge_T = to_double(k, v); }},
      {"converge.time_n", [&](auto& k, auto& v) { cfg.converge_time_n = to_count(k, v); }},
      {"converge.time_dt",
       [&](auto& k, auto& v) {
         cfg.converge_time_dt.clear();
         for (const auto& item : split_list(v)) cfg.converge_time_dt.push_back(to_double(k, item));
       }},
      {"converge.time_T", [&](auto& k, auto& v) { cfg.converge_time_T = to_double(k, v); }},
      {"sweep.axis",
       [&](auto& k, auto& v) {
         if (v == "gamma3") cfg.sweep_axis = SweepAxis::Gamma3;
         else if (v == "gamma12") cfg.sweep_axis = SweepAxis::Gamma12;
         else if (v == "coarse-n") cfg.sweep_axis = SweepAxis::CoarseN;
         else throw ConfigError(k + ": expected gamma3, gamma12 or coarse-n, got '" + v + "'");
       }},
      {"sweep.values",
       [&](auto& k, auto& v) {
         cfg.sweep_values.clear();
         for (const auto& item : split_list(v)) cfg.sweep_values.push_back(to_double(k, item));
       }},
  };

  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown key '" + key + "' on line " + std::to_string(line_no));
    if (!seen.insert(key).second) throw ConfigError(key + ": given more than once");
    if (value.empty()) throw ConfigError(key + ": empty value");
    it->second(key, value);
  }

  // warm-up schedule of the benchmark runs; the slow-diffusion cases need a longer one
  const bool slow = cfg.problem == "abc" ? cfg.eps <= 0.05 : cfg.eps <= 0.01;
  if (!warmup_set) cfg.adaptive.warmup = slow ? 5.0 : 1.5;
  if (!window_set) cfg.adaptive.update_window = slow ? (cfg.problem == "abc" ? 4.0 : 3.0) : 1.0;
  if (!stride_set) cfg.adaptive.snapshot_stride = slow ? 20 : 5;

  cfg.validate();
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace tgapod
