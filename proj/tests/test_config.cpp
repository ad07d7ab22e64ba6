#include <string>

#include "doctest.h"
#include "tgapod/config.hpp"

using namespace tgapod;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("minimal config gets the standard defaults") {
  const auto cfg = parse_config_text("run.method = pod\n");
  CHECK(cfg.method == Method::Pod);
  CHECK(cfg.adaptive.gamma1 == 0.999);
  CHECK(cfg.adaptive.gamma2 == 0.999);
  CHECK(cfg.adaptive.gamma3 == 1.0 - 1e-8);
  CHECK(cfg.adaptive.eta0 == 0.005);
  CHECK(cfg.adaptive.warmup == 1.5);
  CHECK(cfg.adaptive.update_window == 1.0);
  CHECK(cfg.adaptive.snapshot_stride == 5);
  CHECK(cfg.problem == "kolmogorov");
}

TEST_CASE("slow diffusion picks the longer warm-up") {
  const auto k = parse_config_text("problem.eps = 0.01\nproblem.T = 20\n");
  CHECK(k.adaptive.warmup == 5.0);
  CHECK(k.adaptive.update_window == 3.0);
  CHECK(k.adaptive.snapshot_stride == 20);
  const auto a = parse_config_text("problem.name = abc\nproblem.eps = 0.05\nproblem.T = 20\n");
  CHECK(a.adaptive.warmup == 5.0);
  CHECK(a.adaptive.update_window == 4.0);
  const auto explicit_cfg = parse_config_text("problem.eps = 0.01\npod.T0 = 2\npod.dT = 1\npod.dM = 4\n");
  CHECK(explicit_cfg.adaptive.warmup == 2.0);
  CHECK(explicit_cfg.adaptive.snapshot_stride == 4);
}

TEST_CASE("all keys parse") {
  const auto cfg = parse_config_text(R"(# comment
problem.name = abc
problem.eps = 0.5   # trailing comment
problem.w = 2
problem.T = 20
fine.n = 10
fine.dt = 0.005
coarse.n = 5
coarse.dt = 0.025
pod.gamma1 = 0.99
pod.gamma2 = 0.98
pod.gamma3 = 0.999
pod.eta0 = 0.01
pod.T0 = 2
pod.dT = 0.5
pod.dM = 3
solver.method = direct
solver.rel_tol = 1e-9
solver.max_iter = 100
solver.restart = 30
run.method = tg-apod
run.out = results
run.seed = 7
converge.n = 4, 8
converge.dt = 0.01
converge.T = 0.05
converge.time_n = 6
converge.time_dt = 0.1, 0.05
converge.time_T = 0.5
sweep.axis = coarse-n
sweep.values = 3, 4
)");
  CHECK(cfg.problem == "abc");
  CHECK(cfg.w == 2.0);
  CHECK(cfg.fine_n == 10);
  CHECK(cfg.coarse_dt == 0.025);
  CHECK(cfg.adaptive.snapshot_stride == 3);
  CHECK(cfg.solver.method == SolverMethod::Direct);
  CHECK(cfg.solver.restart == 30);
  CHECK(cfg.method == Method::TgApod);
  CHECK(cfg.out_dir == "results");
  CHECK(cfg.seed == 7);
  CHECK(cfg.converge_n == std::vector<std::size_t>{4, 8});
  CHECK(cfg.converge_time_dt.size() == 2);
  CHECK(cfg.sweep_axis == SweepAxis::CoarseN);
  CHECK(cfg.sweep_values == std::vector<double>{3, 4});
  CHECK(cfg.two_grid().coarse_cells == 5);
}

TEST_CASE("diagnostics name the offending key or values") {
  const auto align = error_of("coarse.dt = 0.033\n");
  CHECK(align.find("coarse.dt=0.033") != std::string::npos);
  CHECK(align.find("fine.dt=0.01") != std::string::npos);

  CHECK(error_of("pod.eta0 = -1\n").find("pod.eta0") != std::string::npos);
  CHECK(error_of("pod.gama1 = 0.9\n").find("pod.gama1") != std::string::npos);
  CHECK(error_of("fine.n = 8\nfine.n = 9\n").find("fine.n") != std::string::npos);
  CHECK(error_of("fine.n = eight\n").find("fine.n") != std::string::npos);
  CHECK(error_of("run.method = galerkin\n").find("run.method") != std::string::npos);
  CHECK(error_of("coarse.n = 8\n").find("coarse.n") != std::string::npos);
  CHECK(error_of("pod.T0 = 1.52\n").find("pod.T0") != std::string::npos);
  CHECK(error_of("just some words\n").find("line 1") != std::string::npos);
  CHECK(error_of("sweep.axis = gamma3\nsweep.values = 1.5\n").find("sweep.values") != std::string::npos);
  CHECK_THROWS_AS(parse_config("/nonexistent/path.cfg"), ConfigError);
}
