#include <doctest.h>

#include <cmath>
#include <numbers>

#include "divcs/confseq.hpp"
#include "divcs/error.hpp"
#include "divcs/radius.hpp"

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
const StitchingFunctions st;
}  // namespace

TEST_CASE("DKW boundary") {
  CHECK(dkw_boundary(1, 0.05) == Approx(7.0589896361052995).epsilon(1e-14));
  CHECK(dkw_boundary(1024, 0.05) == Approx(0.30692513271322658).epsilon(1e-14));
  CHECK(dkw_boundary(10000, 0.05) == Approx(0.10099331791609947).epsilon(1e-14));
  CHECK(monotonicity_check([](std::int64_t t) { return dkw_boundary(t, 0.05); }, 100000).ok);
  CHECK(throws_code([] { dkw_boundary(5, 0.0); }, ErrorCode::InvalidArgument));
  CHECK(throws_code([] { dkw_boundary(0, 0.05); }, ErrorCode::InvalidArgument));
}

TEST_CASE("upper offset") {
  CHECK(kappa_upper(1, 0.05) == Approx(2.209010397699528).epsilon(1e-14));
  CHECK(kappa_upper(1, 0.05, st, 3.0) == Approx(3 * 2.209010397699528).epsilon(1e-14));
}

TEST_CASE("two-sample KS boundary") {
  auto dc = ks_two_sample_boundary(2, 2, 0.05, st, Mode::DerivationConsistent);
  auto as = ks_two_sample_boundary(2, 2, 0.05, st, Mode::AsStated);
  CHECK(dc.gamma == Approx(9.40814008903043).epsilon(1e-13));
  CHECK(as.gamma == Approx(9.40814008903043).epsilon(1e-13));
  // unbalanced indices separate the two readings
  auto dc2 = ks_two_sample_boundary(1000, 10, 0.05, st, Mode::DerivationConsistent);
  auto as2 = ks_two_sample_boundary(1000, 10, 0.05, st, Mode::AsStated);
  CHECK(dc2.gamma != Approx(as2.gamma));
  CHECK(dc.kappa > 0);
  // symmetric in (t, s) with equal epoch bases
  CHECK(ks_two_sample_boundary(30, 7, 0.05).gamma == Approx(ks_two_sample_boundary(7, 30, 0.05).gamma));
}

TEST_CASE("MMD boundaries") {
  CHECK(mmd_boundary(100, 100, 0.05, st, 1.0, Mode::AsStated).gamma ==
        Approx(2.4952396370681355).epsilon(1e-13));
  CHECK(mmd_boundary(100, 100, 0.05, st, 1.0, Mode::DerivationConsistent).gamma ==
        Approx(3.2944871610619146).epsilon(1e-13));
  CHECK(mmd_u_boundary(2, 0.05, st, 1.0) == Approx(29.905162421600932).epsilon(1e-13));
  CHECK(throws_code([] { mmd_u_boundary(1, 0.05, st, 1.0); }, ErrorCode::InsufficientData));
  // scales with sqrt(B) in the as-stated form
  CHECK(mmd_boundary(50, 80, 0.05, st, 4.0, Mode::AsStated).gamma ==
        Approx(2 * mmd_boundary(50, 80, 0.05, st, 1.0, Mode::AsStated).gamma));
}

TEST_CASE("OT boundary") {
  auto bias = root_min_bias(2.0);
  CHECK(bias(4, 9) == Approx(1.0));
  auto r = ot_boundary(100, 100, 0.05, st, 2.0, bias, Mode::DerivationConsistent);
  auto zero = ot_boundary(100, 100, 0.05, st, 2.0, root_min_bias(0.0), Mode::DerivationConsistent);
  // the bias bound widens the lower side only, at the halved indices
  CHECK(r.gamma == Approx(zero.gamma + bias(50, 50)));
  CHECK(r.kappa == Approx(zero.kappa));
  CHECK(ot_boundary(100, 100, 0.05, st, 4.0, root_min_bias(0.0)).gamma == Approx(2 * zero.gamma));
}

TEST_CASE("finite-alphabet KL") {
  LambdaSchedule half = [](std::int64_t) { return 0.5; };
  CHECK(kl_finite_radius(2, 0.05, st, 2, half) == Approx(7.7977953682658013).epsilon(1e-13));
  auto def = default_lambda_schedule(3);
  CHECK(def(1) == 1.0);
  CHECK(def(300) == Approx(0.1));
  KlFiniteBoundary kl(0.05, st, 3);
  CHECK_NOTHROW(kl.verify(100000));
  CHECK(kl(1000) == Approx(kl_finite_radius(1000, 0.05, st, 3, def)));
  // too large a delta breaks the decreasing hypothesis early
  CHECK(throws_code([] { kl_finite_boundary(10, 0.99, st, 3); }, ErrorCode::MonotonicityViolated));
  KlFiniteBoundary bad(0.99, st, 3);
  CHECK(throws_code([&] { bad.verify(10); }, ErrorCode::MonotonicityViolated));
}

TEST_CASE("finite-alphabet TV") {
  CHECK(tv_finite_boundary(8, 0.05, st, 2) == Approx(1.3695316107508717).epsilon(1e-14));
  double dc = tv_finite_boundary(8, 0.05, st, 2, Mode::DerivationConsistent);
  double L = st.log_ell(3) + std::log(20.0);
  CHECK(dc == Approx(std::sqrt(2.0 / 4) / 4 + std::sqrt(L / 4)).epsilon(1e-14));
}

TEST_CASE("smoothed boundaries") {
  auto c = smoothed_constants(1, 1.0, 1.0);
  CHECK(c.c_d == Approx(2.228822877872057).epsilon(1e-14));
  CHECK(c.C_d == Approx(7.6096772977582094).epsilon(1e-14));
  CHECK(smoothed_boundary(10000, 0.05, st, 1, 1.0, 1.0, SmoothedKind::W1) ==
        Approx(0.13497669155742987).epsilon(1e-13));
  CHECK(smoothed_boundary(10000, 0.05, st, 1, 1.0, 1.0, SmoothedKind::TV) ==
        Approx(0.18882578759280919).epsilon(1e-13));
  CHECK(entropy_bound(10000, 0.05, st, 1, 1.0, c.C_d) == Approx(0.17121809420442).epsilon(1e-12));
  CHECK(smoothed_constants(3, 1.0, 1.0).c_d > c.c_d);
}

TEST_CASE("Rademacher bound") {
  auto pop = [](double n) { return 1 / std::sqrt(n); };
  CHECK(rademacher_bound(100, 0.05, st, pop) == Approx(0.9046155736579536).epsilon(1e-13));
  double lo = rademacher_lower(100, 0.05, st, 0.9);
  CHECK(lo < 0.9);
  CHECK(lo >= 0);
}

TEST_CASE("multivariate mean boundary") {
  CHECK(covering_number(1, 0.0) == 2);
  CHECK(covering_number(3, 0.5) == Approx(125));
  auto se = CgfEnvelope::sub_exponential(0.0, 1.0, 1.0);
  CHECK(mean_boundary(10000, 0.05, st, se, 3, 0.5) == Approx(0.14694448348802242).epsilon(1e-13));
  auto sg = CgfEnvelope::sub_gaussian(0.0, 1.0);
  for (std::int64_t t : {1, 7, 100, 99999}) {
    double L = st.log_ell(std::log2(double(t))) + std::log(2 / 0.05);
    CHECK(mean_boundary(t, 0.05, st, sg, 1, 0.0) == Approx(2 * std::sqrt(L / double(t))).epsilon(1e-12));
  }
}

TEST_CASE("triangle composition") {
  auto f = triangle_compose([](std::int64_t t) { return 1.0 / double(t); },
                            [](std::int64_t s) { return 2.0 / double(s); });
  CHECK(f(2, 4) == Approx(1.0));
}
