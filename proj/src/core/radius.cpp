#include "divcs/radius.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "divcs/error.hpp"

namespace divcs {

namespace {

void check_delta(double delta) {
  require(delta > 0 && delta < 1, ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
}

void check_index(std::int64_t t, const char* name) {
  require(t >= 1, ErrorCode::InvalidArgument, std::string(name) + " must be >= 1");
}

double log_base(double x, double base) { return std::log(x) / std::log(base); }

}  // namespace

double one_sample_radius(const EnvelopeFamily& family, std::int64_t t, double delta_side,
                         const StitchingFunctions& st) {
  check_index(t, "t");
  check_delta(delta_side);
  double crossing = st.log_ell(log_base(double(t), st.eta())) - std::log(delta_side);
  return family(st.bar_t(t)).dual_inverse(std::max(0.0, crossing));
}

double two_sample_radius(const EnvelopeFamily2& family, std::int64_t t, std::int64_t s,
                         double delta_side, const StitchingFunctions& st) {
  check_index(t, "t");
  check_index(s, "s");
  check_delta(delta_side);
  double k = log_base(double(t), st.eta()) + log_base(double(s), st.xi());
  double crossing = st.log_g(k) - std::log(delta_side);
  return family(st.bar_t(t), st.bar_s(s)).dual_inverse(std::max(0.0, crossing));
}

double two_sample_radius(const EnvelopeFamily2& family, std::int64_t t,
                         std::optional<std::int64_t> s, double delta_side,
                         const StitchingFunctions& st) {
  require(s.has_value(), ErrorCode::MissingSecondIndex, "two-sample radius needs s");
  return two_sample_radius(family, t, *s, delta_side, st);
}

double subgaussian_radius(double mean_bound, double variance_proxy, double crossing_log) {
  return CgfEnvelope::sub_gaussian(mean_bound, variance_proxy)
      .dual_inverse(std::max(0.0, crossing_log));
}

double maximal_tail_bound(const CgfEnvelope& env, double u, bool two_sample) {
  double p = std::exp(-env.dual(u));
  if (two_sample) p *= std::exp(1.0);
  return std::clamp(p, 0.0, 1.0);
}

MonotonicityResult monotonicity_check(const std::function<double(std::int64_t)>& radius,
                                      std::int64_t t_max) {
  MonotonicityResult r;
  if (t_max < 2) return r;
  double prev = radius(1);
  for (std::int64_t t = 1; t < t_max; ++t) {
    double next = radius(t + 1);
    if (next > prev + 1e-12 * std::abs(prev)) {
      r.ok = false;
      r.first_violation = t;
      return r;
    }
    prev = next;
  }
  return r;
}

double paired_radius(const EnvelopeFamily& family, std::int64_t t, double delta,
                     const StitchingFunctions& st) {
  // with s = t the two-sample union runs over one index only
  return one_sample_radius(family, t, delta, st);
}

double forward_boundary(const EnvelopeFamily& family, std::int64_t t, double delta,
                        const StitchingFunctions& st) {
  check_index(t, "t");
  check_delta(delta);
  auto gamma = [&](std::int64_t u) {
    double crossing = st.log_ell(std::log2(double(u))) + std::log(2.0 / delta);
    return family(double(u)).dual_inverse(std::max(0.0, crossing));
  };
  double prev = gamma(1);
  for (std::int64_t u = 2; u <= t; ++u) {
    double cur = gamma(u);
    if (cur < prev - 1e-12 * std::abs(prev))
      fail(ErrorCode::MonotonicityViolated,
           "forward radius decreases at t = " + std::to_string(u));
    prev = cur;
  }
  return 2.0 * prev;
}

}  // namespace divcs
