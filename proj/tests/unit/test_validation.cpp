#include <doctest.h>

#include <cmath>
#include <numbers>

#include "divcs/error.hpp"
#include "divcs/selftest.hpp"
#include "divcs/validation.hpp"

using namespace divcs;
using doctest::Approx;

TEST_CASE("replicate seeds are distinct and stable") {
  CHECK(replicate_seed(1, 0) == replicate_seed(1, 0));
  CHECK(replicate_seed(1, 0) != replicate_seed(1, 1));
  CHECK(replicate_seed(1, 5) != replicate_seed(2, 5));
}

TEST_CASE("parallel_for covers every index and propagates errors") {
  std::vector<int> hit(1000, 0);
  parallel_for(1000, [&](std::int64_t r) { hit[std::size_t(r)] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK_THROWS(parallel_for(10, [](std::int64_t r) {
    if (r == 7) fail(ErrorCode::InvalidArgument, "boom");
  }));
}

TEST_CASE("report finalisation") {
  SimReport r;
  r.target = 0.05;
  r.first_violation = {0, 3, 0, 0};
  r.finalize();
  CHECK(r.replications == 4);
  CHECK(r.violation_count == 1);
  CHECK(r.violation_rate == 0.25);
  CHECK(r.standard_error == Approx(std::sqrt(0.25 * 0.75 / 4)));
  CHECK_FALSE(r.asserted);
  CHECK(r.passed);
  CHECK(r.to_json().find("wall_time_s") == std::string::npos);
  CHECK(r.to_json(true).find("wall_time_s") != std::string::npos);
  CHECK(r.per_replicate_csv() == "replicate,violated,first_violation\n0,0,0\n1,1,3\n2,0,0\n3,0,0\n");
}

TEST_CASE("leave-one-out audits") {
  for (auto k : {AuditKind::TV, AuditKind::KL, AuditKind::KS, AuditKind::W1, AuditKind::MMD,
                 AuditKind::OT, AuditKind::UStat})
    for (int a : {2, 3}) {
      auto r = leave_one_out_audit(k, a, a == 2 ? 5 : 4);
      INFO(to_string(k), " alphabet ", a, " residual ", r.worst_residual);
      CHECK(r.passed);
      CHECK(r.violations == 0);
      CHECK(r.cases > 0);
      if (k == AuditKind::UStat) CHECK(std::abs(r.worst_residual) <= 1e-12);
    }
}

TEST_CASE("reverse Ville checks") {
  auto r = reverse_ville_check(VilleProcess::AbsMean, 10, 1.0, 2000, 5, 500);
  CHECK(r.expectation == Approx(std::sqrt(2 / (10 * std::numbers::pi))));
  CHECK(r.sim.violation_rate <= r.bound + 3 * r.sim.standard_error);
  auto far = reverse_ville_check(VilleProcess::AbsMean, 10, 50.0, 200, 5, 200);
  CHECK(far.sim.violation_count == 0);
  auto two = reverse_ville_check(VilleProcess::MeanDifference, 10, 1.5, 1000, 6, 300);
  CHECK(two.sim.violation_rate <= two.bound + 3 * two.sim.standard_error);
  CHECK(two.sim.violation_rate <= two.moment_bound + 3 * two.sim.standard_error);
}

TEST_CASE("fast scenarios agree with the reference monitor") {
  struct Case {
    const char* name;
    double shift;
  };
  // shifts put the asserted truth above the intervals so that violations
  // happen at varied times; shift -0.5 falls below every lower bound
  for (auto c : {Case{"dkw-uniform", 0.6}, Case{"ks-null", 1.0}, Case{"mmd-null", 1.5},
                 Case{"tv-finite", 0.3}, Case{"ot-finite", 0.6}, Case{"ot-finite", 1.0},
                 Case{"mean-gauss", 1.0}, Case{"ks-null", -0.5}, Case{"kl-finite", 0.0},
                 Case{"ks-null", 0.0}}) {
    ScenarioParams p{30, 300, 0.05, 3, c.shift};
    auto fast = run_scenario(c.name, p);
    auto setup = scenario_setup(c.name, p);
    auto ref = coverage_sim(setup.config, setup.truth, setup.generator, setup.steps, 30, 3,
                            setup.target);
    INFO(c.name, " shift ", c.shift);
    CHECK(fast.first_violation == ref.first_violation);
  }
}

TEST_CASE("scenario registry") {
  CHECK(is_scenario("dkw-uniform"));
  CHECK_FALSE(is_scenario("nope"));
  CHECK_THROWS(run_scenario("nope", {}));
  CHECK_THROWS(scenario_setup("loo-audit", {}));
  auto one = run_scenario("dkw-uniform", {1, 50, 0.05, 1});
  CHECK(one.replications == 1);
  CHECK_FALSE(one.asserted);
  auto a = run_scenario("tv-finite", {40, 300, 0.05, 9});
  auto b = run_scenario("tv-finite", {40, 300, 0.05, 9});
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("upward bias") {
  const std::vector<std::int64_t> grid{10, 20, 40, 80};
  for (auto e : {BiasEstimator::KS, BiasEstimator::TV, BiasEstimator::MMD, BiasEstimator::KL}) {
    auto r = bias_direction_check(e, 0.0, grid, 1000, 3);
    INFO(to_string(e));
    CHECK(r.passed);
    CHECK(r.means.front() > r.means.back());
  }
  auto shifted = bias_direction_check(BiasEstimator::TV, 0.1, grid, 1000, 4);
  CHECK(shifted.truth == Approx(0.1));
  CHECK(shifted.passed);
  auto u = bias_direction_check(BiasEstimator::MMDUStat, 0.5, grid, 1000, 5);
  CHECK(u.unbiased);
  // KL under the null scales like (k - 1) / (2t)
  auto kl = bias_direction_check(BiasEstimator::KL, 0.0, {100, 200}, 2000, 6);
  CHECK(kl.means[0] == Approx(1.0 / 100).epsilon(0.15));
  CHECK(kl.means[1] == Approx(1.0 / 200).epsilon(0.15));
}

TEST_CASE("selftest suite passes") {
  auto res = run_selftest();
  REQUIRE(!res.empty());
  for (const auto& r : res) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed);
  }
}
