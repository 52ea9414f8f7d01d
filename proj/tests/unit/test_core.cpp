#include <doctest.h>

#include <cmath>
#include <numbers>

#include "divcs/cgf.hpp"
#include "divcs/error.hpp"
#include "divcs/radius.hpp"
#include "divcs/stitching.hpp"

using namespace divcs;
using doctest::Approx;

namespace {
bool throws_code(auto&& fn, ErrorCode code) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}
}  // namespace

TEST_CASE("zeta values") {
  CHECK(zeta(2.0) == Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-15));
  CHECK(zeta(3.0) == Approx(1.2020569031595942).epsilon(1e-15));
  CHECK(throws_code([] { zeta(1.0); }, ErrorCode::InvalidArgument));
}

TEST_CASE("ell and g") {
  StitchingFunctions st;
  const double z2 = zeta(2.0), z3 = zeta(3.0);
  CHECK(st.ell(0) == Approx(z2));
  CHECK(st.ell(0.5) == Approx(z2));
  CHECK(st.ell(3) == Approx(9 * z2));
  CHECK(st.g(1) == Approx(std::exp(1.0) * 8 * (z2 - z3)));
  CHECK(st.log_g(2) == Approx(2.2649787114229268).epsilon(1e-14));
  CHECK(st.log_ell(7.25) == Approx(std::log(st.ell(7.25))).epsilon(1e-14));
}

TEST_CASE("stitching parameters are validated") {
  CHECK(throws_code([] { StitchingFunctions(1.0, 2, 2); }, ErrorCode::InvalidArgument));
  CHECK(throws_code([] { StitchingFunctions(2, 1.0, 2); }, ErrorCode::InvalidArgument));
  CHECK(throws_code([] { StitchingFunctions(2, 2, 0.5); }, ErrorCode::InvalidArgument));
}

TEST_CASE("halving rules") {
  StitchingFunctions real(2, 2, 2, HalvingRule::Real);
  StitchingFunctions ceil(2, 2, 2, HalvingRule::Ceil);
  CHECK(real.bar_t(1) == 0.5);
  CHECK(real.bar_t(7) == 3.5);
  CHECK(ceil.bar_t(1) == 1);
  CHECK(ceil.bar_t(7) == 4);
  StitchingFunctions e3(2, 3, 2.5, HalvingRule::Ceil);
  CHECK(e3.bar_t(7) == 3);
  CHECK(e3.bar_s(7) == 3);  // ceil(7 / ceil(2.5))
  CHECK(half_index(9, HalvingRule::Real) == 4.5);
  CHECK(half_index(9, HalvingRule::Ceil) == 5);
}

TEST_CASE("stitching budgets bracket one") {
  for (double a : {1.5, 2.0, 3.0}) {
    StitchingFunctions st(a, 2, 2);
    auto one = one_sample_budget(st, 100000);
    CHECK(one.lower() <= 1 + 1e-12);
    CHECK(one.upper() >= 1 - 1e-12);
    auto two = two_sample_budget(st, 100000);
    CHECK(two.lower() <= 1 + 1e-12);
    CHECK(two.upper() >= 1 - 1e-12);
  }
}

TEST_CASE("corrupted zeta cache breaks the budget") {
  StitchingFunctions warm(2.0, 2, 2);
  testing::corrupt_zeta_cache(1.01);
  StitchingFunctions st(2.0, 2, 2);
  auto b = one_sample_budget(st, 1000);
  testing::clear_zeta_cache();
  CHECK(b.upper() < 1 - 1e-4);
  auto ok = one_sample_budget(StitchingFunctions(2.0, 2, 2), 1000);
  CHECK(ok.upper() >= 1);
}

TEST_CASE("sub-Gaussian dual") {
  auto env = CgfEnvelope::sub_gaussian(0.5, 2.0);
  CHECK(env.dual(0.3) == 0);
  CHECK(env.dual(2.5) == Approx(1.0));
  CHECK(env.dual_inverse(1.0) == Approx(2.5));
  CHECK(env.dual_inverse(0.0) == Approx(0.5));
  CHECK(throws_code([] { CgfEnvelope::sub_gaussian(0, -1); }, ErrorCode::InvalidArgument));
}

TEST_CASE("sub-exponential dual and inverse") {
  auto env = CgfEnvelope::sub_exponential(0.0, 1.0, 0.5);
  // quadratic branch below sigma^2 / a = 2
  CHECK(env.dual(1.0) == Approx(0.5));
  // linear branch: z/a - sigma^2/(2 a^2)
  CHECK(env.dual(3.0) == Approx(6.0 - 2.0));
  for (double y : {0.01, 0.5, 1.9, 2.0, 2.1, 10.0})
    CHECK(env.dual(env.dual_inverse(y)) == Approx(y).epsilon(1e-12));
  CHECK(env.lambda_max() == Approx(2.0));
}

TEST_CASE("tabulated envelope") {
  auto t = CgfEnvelope::tabulate([](double l) { return l * l / 2; }, 4.0);
  for (double y : {0.01, 0.3, 1.0, 4.0})
    CHECK(t.dual_inverse(y) == Approx(std::sqrt(2 * y)).epsilon(1e-5));
  CHECK(throws_code([] { CgfEnvelope::tabulated({0, 1, 2}, {0, 1, 1.5}); },
                    ErrorCode::NonConvexTable));
  CHECK(throws_code([] { CgfEnvelope::tabulated({0, 1}, {0.1, 1}); }, ErrorCode::NonConvexTable));
  auto lin = CgfEnvelope::tabulated({0, 1, 2}, {0, 0.5, 2});
  CHECK(lin.dual(1.0) == Approx(0.5));
  CHECK(lin.dual(lin.dual_inverse(0.7)) == Approx(0.7));
}

TEST_CASE("one-sample radius") {
  auto family = [](double t) { return CgfEnvelope::sub_gaussian(0, 1 / t); };
  StitchingFunctions ceil(2, 2, 2, HalvingRule::Ceil);
  CHECK(one_sample_radius(family, 1, 0.05, ceil) == Approx(2.6432678925998917).epsilon(1e-13));
  CHECK(one_sample_radius(family, 1, 0.05) == Approx(3.7381453027001165).epsilon(1e-13));
  CHECK(throws_code([&] { one_sample_radius(family, 0, 0.05); }, ErrorCode::InvalidArgument));
  CHECK(throws_code([&] { one_sample_radius(family, 5, 1.5); }, ErrorCode::InvalidArgument));
  CHECK(monotonicity_check([&](std::int64_t t) { return one_sample_radius(family, t, 0.05); },
                           5000)
            .ok);
  // the integer half index bumps the radius between t = 3 and t = 4
  auto mc = monotonicity_check([&](std::int64_t t) { return one_sample_radius(family, t, 0.05, ceil); },
                               100);
  CHECK_FALSE(mc.ok);
  CHECK(mc.first_violation == 3);
}

TEST_CASE("two-sample radius") {
  auto family = [](double t, double s) { return CgfEnvelope::sub_gaussian(0, 1 / t + 1 / s); };
  CHECK(two_sample_radius(family, 2, 2, 0.025) == Approx(4.88010580440091).epsilon(1e-13));
  CHECK(throws_code([&] { two_sample_radius(family, 2, std::nullopt, 0.025); },
                    ErrorCode::MissingSecondIndex));
  CHECK(two_sample_radius(family, 64, 8, 0.025) < two_sample_radius(family, 8, 8, 0.025));
}

TEST_CASE("sub-Gaussian radius and tails") {
  const double mu = std::sqrt(std::numbers::pi / 512);
  const double L = StitchingFunctions().log_ell(10) + std::log(20.0);
  CHECK(subgaussian_radius(mu, 2.0 / 512, L) == Approx(0.32986808345464797).epsilon(1e-14));
  CHECK(subgaussian_radius(0.1, 1, -3) == Approx(0.1));
  auto env = CgfEnvelope::sub_gaussian(0, 1);
  CHECK(maximal_tail_bound(env, 3, false) == Approx(0.011108996538242306).epsilon(1e-14));
  CHECK(maximal_tail_bound(env, 3, true) == Approx(std::exp(1.0) * 0.011108996538242306));
  CHECK(maximal_tail_bound(env, 0.1, true) == 1.0);
}

TEST_CASE("forward boundary") {
  auto family = [](double t) { return CgfEnvelope::sub_gaussian(0, t); };
  CHECK(forward_boundary(family, 4, 0.05) == Approx(13.35409943674774).epsilon(1e-13));
  auto shrinking = [](double t) { return CgfEnvelope::sub_gaussian(0, 1 / t); };
  CHECK(throws_code([&] { forward_boundary(shrinking, 10, 0.05); },
                    ErrorCode::MonotonicityViolated));
}

TEST_CASE("paired radius equals the one-sample construction") {
  auto family = [](double t) { return CgfEnvelope::sub_gaussian(0, 2 / t); };
  CHECK(paired_radius(family, 50, 0.05) == Approx(one_sample_radius(family, 50, 0.05)));
}
