#include <doctest.h>

#include <filesystem>

#include "nlslab/conserved.hpp"
#include "nlslab/initial_data.hpp"
#include "nlslab/integrator.hpp"
#include "nlslab/spectral.hpp"
#include "support.hpp"

using namespace nlslab;
using namespace testing;

namespace {

SimulationConfig small_config() {
  SimulationConfig c;
  c.n = 2;
  c.points = 64;
  c.length = 16.0;
  c.t_end = 0.5;
  c.dt_init = 1e-3;
  c.dt_min = 1e-3;
  c.dt_max = 1e-3;
  c.initial.amplitude = 1.0;
  c.initial.width = 1.2;
  return c;
}

}  // namespace

TEST_SUITE("integrator") {

TEST_CASE("phase step is the exact pointwise flow") {
  Rng rng(1);
  const Grid g(2, 16, 6.0);
  const auto u = random_smooth(g, rng, 0.8, 1.4, 1.5);
  const Nonlinearity nl{1.5, -0.7, 1.3, 3.1};
  const double tau = 0.37;
  const auto v = nonlinear_phase_step(u, tau, nl);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = std::abs(u[i]);
    const double rate = 1.5 * std::pow(a, 1.3) - 0.7 * std::pow(a, 3.1);
    CHECK(std::abs(v[i] - u[i] * std::polar(1.0, -tau * rate)) <= 1e-13);
  }
}

TEST_CASE("Strang step without nonlinearity is free propagation") {
  Rng rng(2);
  const Grid g(3, 16, 8.0);
  const auto u = random_smooth(g, rng, 0.8, 1.4);
  CHECK(max_abs_diff(strang_step(u, 0.05, Nonlinearity{}), free_propagate(u, 0.05)) <= 1e-13);
}

TEST_CASE("Strang step is symmetric and conserves mass") {
  Rng rng(3);
  const Grid g(2, 32, 10.0);
  const Nonlinearity nl{1.0, 1.0, 2.0, 4.0};
  const auto u = random_smooth(g, rng, 0.8, 1.4, 1.2);
  const auto fwd = strang_step(u, 0.02, nl);
  CHECK(max_abs_diff(strang_step(fwd, -0.02, nl), u) <= 1e-12);
  CHECK(l2_sq(fwd) == doctest::Approx(l2_sq(u)).epsilon(1e-13));
}

TEST_CASE("Strang splitting converges at second order") {
  const Grid g(2, 32, 12.0);
  const Nonlinearity nl{1.0, 1.0, 2.0, 4.0};
  const auto u0 = complex_gaussian(g, 1.3, 0.4);
  const double T = 0.2;
  const auto run = [&](int steps) {
    ComplexField u = u0;
    for (int k = 0; k < steps; ++k) u = strang_step(u, T / steps, nl);
    return u;
  };
  const auto ref = run(2048);
  std::vector<double> lx, ly;
  for (int steps : {16, 32, 64, 128}) {
    lx.push_back(std::log(T / steps));
    ly.push_back(std::log(rel_l2(run(steps), ref)));
  }
  const double slope = ls_slope(lx, ly);
  CHECK(slope >= 1.9);
  CHECK(slope <= 2.1);
}

TEST_CASE("config-checked Strang step enforces the dt range and grid") {
  auto cfg = small_config();
  const auto u = make_initial_data(cfg.initial, cfg.grid());
  CHECK_NOTHROW(strang_step(u, 1e-3, cfg));
  CHECK_THROWS_AS(strang_step(u, 2e-3, cfg), DataError);
  const ComplexField other(Grid(2, 16, 16.0));
  CHECK_THROWS_AS(strang_step(other, 1e-3, cfg), DataError);
}

TEST_CASE("phase overflow is reported") {
  const Grid g(1, 8, 4.0);
  ComplexField u(g);
  u[3] = 1e80;
  CHECK_THROWS_AS(nonlinear_phase_step(u, 0.1, Nonlinearity{1.0, 1.0, 2.0, 4.0}),
                  AmplitudeOverflowError);
}

TEST_CASE("resolution sentinel readings") {
  const Grid g(1, 64, 16.0);
  SUBCASE("single lattice modes") {
    // max |m| > N/4 = 16 is the tail.
    for (int m : {3, 16, 17, 31}) {
      ComplexField f(g);
      for (std::size_t j = 0; j < 64; ++j) f[j] = std::polar(1.0, 2.0 * std::numbers::pi * m * j / 64.0);
      const auto r = resolution_sentinel(f, 1e-4, 1.0 - 1e-9);
      CHECK(r.tail_fraction == doctest::Approx(m > 16 ? 1.0 : 0.0).epsilon(1e-12));
    }
  }
  SUBCASE("boundary mass") {
    // Indicator on cells with |x| > 3L/8 = 6: j < 8 and j > 56 carry 15 of 64 cells.
    ComplexField f(g);
    for (auto& v : f.values()) v = 1.0;
    const auto r = resolution_sentinel(f, 1.0 - 1e-9, 1e-4);
    CHECK(r.boundary_fraction == doctest::Approx(15.0 / 64.0));
    CHECK_FALSE(r.ok);
  }
  SUBCASE("centred Gaussian is resolved") {
    const auto r = resolution_sentinel(complex_gaussian(g, 1.0, 0.5), 1e-4, 1e-4);
    CHECK(r.ok);
    CHECK(r.tail_fraction < 1e-12);
  }
}

TEST_CASE("evolve stops at every snapshot time") {
  auto cfg = small_config();
  cfg.snapshot_times = {0.0, 0.1, 0.25, 0.5};
  std::vector<double> seen;
  const auto res = evolve(cfg, {[&](double t, const ComplexField&) { seen.push_back(t); }});
  CHECK(res.outcome == RunOutcome::completed);
  CHECK(seen == cfg.snapshot_times);
  REQUIRE(res.snapshots.size() == 4);
  CHECK(res.snapshots.back().t == 0.5);
  CHECK(res.t_final == doctest::Approx(0.5));
  CHECK(res.steps.size() == 500);
}

TEST_CASE("adaptive and fixed stepping agree") {
  auto cfg = small_config();
  const auto fixed = evolve(cfg);
  auto acfg = cfg;
  acfg.dt_min = 1e-6;
  acfg.dt_max = 0.05;
  acfg.accuracy_target = 1e-9;
  const auto adaptive = evolve(acfg);
  REQUIRE(adaptive.outcome == RunOutcome::completed);
  CHECK(rel_l2(adaptive.snapshots.back().u, fixed.snapshots.back().u) <= 1e-5);
  for (const auto& s : adaptive.steps) CHECK(s.local_error_estimate <= acfg.accuracy_target);
}

TEST_CASE("evolve is bitwise deterministic") {
  auto cfg = small_config();
  cfg.lambda2 = -1.0;
  const auto a = evolve(cfg);
  const auto b = evolve(cfg);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (std::size_t i = 0; i < a.snapshots.back().u.size(); ++i)
    CHECK(a.snapshots.back().u[i] == b.snapshots.back().u[i]);
}

TEST_CASE("zero data stays zero") {
  auto cfg = small_config();
  cfg.initial.amplitude = 0.0;
  const auto res = evolve(cfg);
  CHECK(res.outcome == RunOutcome::completed);
  for (const auto& v : res.snapshots.back().u.values()) CHECK(v == cplx(0.0));
}

TEST_CASE("sentinel trip ends the run as resolution-lost") {
  auto cfg = small_config();
  cfg.initial.offset = {6.5, 0.0};
  const auto res = evolve(cfg);
  CHECK(res.outcome == RunOutcome::resolution_lost);
  CHECK(res.t_final == 0.0);
  // The wrapped bump also widens the spectrum, so either indicator may fire first.
  CHECK(res.stop_reason.find("fraction exceeded") != std::string::npos);
  const auto u0 = make_initial_data(cfg.initial, cfg.grid());
  CHECK(resolution_sentinel(u0, cfg.eps_tail, cfg.eps_bnd).boundary_fraction > cfg.eps_bnd);
}

TEST_CASE("gradient growth triggers blowup detection") {
  // A modest factor makes the detector observable on a small grid.
  auto cfg = small_config();
  cfg.n = 2;
  cfg.lambda1 = -1.0;
  cfg.lambda2 = -1.0;
  cfg.p1 = 2.0;
  cfg.p2 = 3.0;
  cfg.length = 12.0;
  cfg.points = 64;
  cfg.initial.amplitude = 3.0;
  cfg.initial.width = 1.0;
  cfg.blowup_gradient_factor = 1.5;
  cfg.t_end = 1.0;
  cfg.dt_min = 1e-7;
  cfg.dt_max = 1e-3;
  cfg.accuracy_target = 1e-7;
  const auto res = evolve(cfg);
  CHECK(res.outcome == RunOutcome::blowup_detected);
  CHECK(res.gradient_norm_final >= 1.5 * res.gradient_norm_initial);
}

TEST_CASE("step budget exhaustion is not reported as completion") {
  auto cfg = small_config();
  cfg.max_steps = 10;
  const auto res = evolve(cfg);
  CHECK(res.outcome == RunOutcome::resolution_lost);
  CHECK(res.stop_reason == "step budget exhausted");
}

TEST_CASE("initial data profiles") {
  const Grid g(2, 64, 16.0);
  InitialDataSpec s;
  s.amplitude = 0.8;
  s.width = 1.1;
  s.chirp = -0.2;
  s.profile = Profile::chirped_gaussian;
  s.offset = {1.0, -0.5};
  const auto u = make_initial_data(s, g);
  for (std::size_t i = 0; i < u.size(); i += 97) {
    const double dx = coord(g, i, 0) - 1.0, dy = coord(g, i, 1) + 0.5;
    const double r2 = dx * dx + dy * dy;
    CHECK(std::abs(u[i] - 0.8 * std::exp(-r2 / (2 * 1.21)) * std::polar(1.0, -0.2 * r2)) <= 1e-15);
  }
  s.profile = Profile::ring;
  s.ring_radius = 3.0;
  s.chirp = 0.0;
  s.offset.clear();
  const auto ring = make_initial_data(s, g);
  for (std::size_t i = 0; i < ring.size(); i += 101) {
    const double r = std::sqrt(radius_sq(g, i));
    CHECK(std::abs(ring[i] - 0.8 * std::exp(-(r - 3.0) * (r - 3.0) / (2 * 1.21))) <= 1e-15);
  }
}

TEST_CASE("sample file round trip") {
  Rng rng(9);
  const Grid g(3, 8, 5.5);
  const auto f = random_noise(g, rng);
  const auto path = (std::filesystem::temp_directory_path() / "nlslab_sample_test.nlsf").string();
  write_sample_file(path, f);
  const auto back = read_sample_file(path);
  CHECK(back.grid() == g);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
  CHECK(std::filesystem::file_size(path) == 32 + 16 * 512);

  InitialDataSpec s;
  s.profile = Profile::sample_file;
  s.sample_file = path;
  CHECK(max_abs_diff(make_initial_data(s, g), f) == 0.0);
  CHECK_THROWS_AS(make_initial_data(s, Grid(3, 16, 5.5)), DataError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_sample_file(path), DataError);
}

}  // TEST_SUITE
