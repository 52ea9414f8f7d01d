#include <cmath>
#include <numbers>
#include <string>

#include "divcs/confseq.hpp"
#include "divcs/error.hpp"
#include "divcs/radius.hpp"

namespace divcs {

namespace {

constexpr double kPi = std::numbers::pi;

void check_delta(double delta) {
  require(delta > 0 && delta < 1, ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
}

void check_index(std::int64_t t, const char* name) {
  require(t >= 1, ErrorCode::InvalidArgument, std::string(name) + " must be >= 1");
}

// log ell(log2 t) + log(c/delta)
double one_sample_log(std::int64_t t, double delta, const StitchingFunctions& st, double c) {
  return st.log_ell(std::log2(double(t))) + std::log(c / delta);
}

// log g(log2 t + log2 s) + log(2/delta)
double two_sample_log(std::int64_t t, std::int64_t s, double delta,
                      const StitchingFunctions& st) {
  return st.log_g(std::log2(double(t)) + std::log2(double(s))) + std::log(2.0 / delta);
}

void check_two(std::int64_t t, std::int64_t s, double delta) {
  check_index(t, "t");
  check_index(s, "s");
  check_delta(delta);
}

}  // namespace

double kappa_upper(std::int64_t t, double delta, const StitchingFunctions& st,
                   double range_bound) {
  check_index(t, "t");
  check_delta(delta);
  require(range_bound >= 0, ErrorCode::InvalidArgument, "range bound must be >= 0");
  return range_bound * std::sqrt(one_sample_log(t, delta, st, 4.0) / double(t));
}

double dkw_boundary(std::int64_t t, double delta, const StitchingFunctions& st) {
  check_index(t, "t");
  check_delta(delta);
  const double n = double(t);
  return std::sqrt(kPi / n) + 2 * std::sqrt(2.0 / n * one_sample_log(t, delta, st, 1.0));
}

TwoSidedRadius ks_two_sample_boundary(std::int64_t t, std::int64_t s, double delta,
                                      const StitchingFunctions& st, Mode mode) {
  check_two(t, s, delta);
  const double L = two_sample_log(t, s, delta, st);
  const double mean = std::sqrt(kPi / double(t)) + std::sqrt(kPi / double(s));
  TwoSidedRadius r;
  if (mode == Mode::AsStated) {
    double inner = 2.0 * double(t) * double(s) / double(t + s);
    r.gamma = mean + 2 * std::sqrt(inner * L);
  } else {
    double tb = half_index(t, st.halving()), sb = half_index(s, st.halving());
    r.gamma = subgaussian_radius(mean, 2 * (tb + sb) / (tb * sb), L);
  }
  r.kappa = kappa_upper(t, delta, st, 1.0) + kappa_upper(s, delta, st, 1.0);
  return r;
}

TwoSidedRadius mmd_boundary(std::int64_t t, std::int64_t s, double delta,
                            const StitchingFunctions& st, double B, Mode mode) {
  check_two(t, s, delta);
  require(B > 0 && std::isfinite(B), ErrorCode::InvalidArgument, "kernel bound B must be > 0");
  const double L = two_sample_log(t, s, delta, st);
  TwoSidedRadius r;
  if (mode == Mode::AsStated) {
    double mean = 2 * std::sqrt(2 * B) * (1 / std::sqrt(double(t)) + 1 / std::sqrt(double(s)));
    r.gamma = mean + 4 * std::sqrt(B * double(t + s) / (double(t) * double(s)) * L);
  } else {
    double tb = half_index(t, st.halving()), sb = half_index(s, st.halving());
    double mean = 2 * (std::sqrt(B / tb) + std::sqrt(B / sb));
    r.gamma = subgaussian_radius(mean, 8 * B * (tb + sb) / (tb * sb), L);
  }
  r.kappa = 2 * std::sqrt(B) * (kappa_upper(t, delta, st, 1.0) + kappa_upper(s, delta, st, 1.0));
  return r;
}

double mmd_u_boundary(std::int64_t t, double delta, const StitchingFunctions& st, double B) {
  require(t >= 2, ErrorCode::InsufficientData, "U-statistic boundary needs t >= 2");
  check_delta(delta);
  return 16 * B * std::sqrt(one_sample_log(t, delta, st, 1.0) / double(t - 1));
}

BiasBound root_min_bias(double C) {
  require(C >= 0, ErrorCode::InvalidArgument, "bias constant must be >= 0");
  return [C](double t, double s) { return C / std::sqrt(std::min(t, s)); };
}

TwoSidedRadius ot_boundary(std::int64_t t, std::int64_t s, double delta,
                           const StitchingFunctions& st, double Delta, const BiasBound& bias,
                           Mode mode) {
  check_two(t, s, delta);
  require(Delta > 0 && std::isfinite(Delta), ErrorCode::InvalidArgument, "Delta must be > 0");
  require(bool(bias), ErrorCode::InvalidArgument, "OT boundary needs a bias bound");
  const double L = two_sample_log(t, s, delta, st);
  const double tb = half_index(t, st.halving()), sb = half_index(s, st.halving());
  const double alpha = bias(tb, sb);
  TwoSidedRadius r;
  if (mode == Mode::AsStated) {
    double inner = double(t) * double(s) / double(t + s);
    r.gamma = alpha + 2 * Delta * std::sqrt(inner * L);
  } else {
    r.gamma = subgaussian_radius(alpha, 2 * Delta * Delta * (tb + sb) / (tb * sb), L);
  }
  r.kappa = Delta * (kappa_upper(t, delta, st, 1.0) + kappa_upper(s, delta, st, 1.0));
  return r;
}

LambdaSchedule default_lambda_schedule(std::int64_t k) {
  return [k](std::int64_t t) { return std::min(1.0, std::sqrt(double(k) / double(t))); };
}

double kl_finite_radius(std::int64_t t, double delta, const StitchingFunctions& st,
                        std::int64_t k, const LambdaSchedule& schedule, double factor) {
  check_index(t, "t");
  check_delta(delta);
  require(k >= 2, ErrorCode::InvalidArgument, "alphabet size must be >= 2");
  require(factor > 0, ErrorCode::InvalidArgument, "factor must be > 0");
  const double lambda = schedule ? schedule(t) : default_lambda_schedule(k)(t);
  require(lambda > 0 && lambda <= 1, ErrorCode::InvalidArgument,
          "lambda_t must lie in (0, 1] at t = " + std::to_string(t));
  double logG = log_G_k_t_series(lambda, k, t / 2);
  return factor / (lambda * double(t)) *
         (logG + st.log_ell(std::log2(double(t))) - std::log(delta));
}

KlFiniteBoundary::KlFiniteBoundary(double delta, StitchingFunctions st, std::int64_t k,
                                   LambdaSchedule schedule, double factor)
    : delta_(delta), st_(st), k_(k), schedule_(std::move(schedule)), factor_(factor) {
  check_delta(delta);
  if (!schedule_) schedule_ = default_lambda_schedule(k);
}

void KlFiniteBoundary::verify(std::int64_t t_max) {
  table_.reserve(std::size_t(std::max<std::int64_t>(t_max, 0)));
  while (std::int64_t(table_.size()) < t_max) {
    std::int64_t t = std::int64_t(table_.size()) + 1;
    double g = kl_finite_radius(t, delta_, st_, k_, schedule_, factor_);
    if (!table_.empty() && g > table_.back() * (1 + 1e-12))
      fail(ErrorCode::MonotonicityViolated,
           "KL radius increases from t = " + std::to_string(t - 1) + " to t = " +
               std::to_string(t));
    table_.push_back(g);
  }
}

double KlFiniteBoundary::operator()(std::int64_t t) {
  check_index(t, "t");
  verify(t);
  return table_[std::size_t(t - 1)];
}

double kl_finite_boundary(std::int64_t t, double delta, const StitchingFunctions& st,
                          std::int64_t k, LambdaSchedule schedule, double factor) {
  KlFiniteBoundary b(delta, st, k, std::move(schedule), factor);
  return b(t);
}

double tv_finite_boundary(std::int64_t t, double delta, const StitchingFunctions& st,
                          std::int64_t k, Mode mode) {
  check_index(t, "t");
  check_delta(delta);
  require(k >= 2, ErrorCode::InvalidArgument, "alphabet size must be >= 2");
  const double L = one_sample_log(t, delta, st, 1.0);
  if (mode == Mode::AsStated)
    return 0.5 * std::sqrt(double(k) / (2.0 * double(t))) + std::sqrt(2.0 / double(t) * L);
  double tb = half_index(t, st.halving());
  return std::sqrt(double(k) / tb) / 4 + std::sqrt(L / tb);
}

SmoothedConstants smoothed_constants(int d, double sigma, double tau2) {
  require(d >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
  require(sigma > 0 && tau2 > 0, ErrorCode::InvalidArgument, "sigma and tau2 must be > 0");
  const double base = 1 / std::numbers::sqrt2 + std::sqrt(tau2) / sigma;
  SmoothedConstants c;
  c.c_d = std::numbers::sqrt2 * std::pow(base, d / 2.0) * std::exp(3.0 * d / 16.0);
  c.C_d = 2 * std::sqrt(d * sigma * sigma) * base * c.c_d;
  return c;
}

double smoothed_boundary(std::int64_t t, double delta, const StitchingFunctions& st, int d,
                         double sigma, double tau2, SmoothedKind which) {
  check_index(t, "t");
  check_delta(delta);
  require(which != SmoothedKind::Entropy, ErrorCode::InvalidArgument,
          "use entropy_bound for the entropy");
  const auto c = smoothed_constants(d, sigma, tau2);
  const double L = one_sample_log(t, delta, st, 1.0);
  const double n = double(t);
  if (which == SmoothedKind::TV) return c.c_d / std::sqrt(n) + 4 * std::sqrt(2.0 / n * L);
  return c.C_d / std::sqrt(n) + 2 * std::sqrt(tau2 / n * L);
}

double entropy_bound(std::int64_t t, double delta, const StitchingFunctions& st, int d,
                     double sigma, double C_d) {
  check_index(t, "t");
  check_delta(delta);
  require(d >= 1 && sigma > 0, ErrorCode::InvalidArgument, "need d >= 1 and sigma > 0");
  const double n = double(t), rd = std::sqrt(double(d)), s2 = sigma * sigma;
  return 3 * rd / s2 * std::sqrt(one_sample_log(t, delta, st, 4.0) / n) +
         rd * C_d / (std::sqrt(n) * s2);
}

double rademacher_bound(std::int64_t t, double delta, const StitchingFunctions& st,
                        const std::function<double(double)>& pop_complexity) {
  check_index(t, "t");
  check_delta(delta);
  return pop_complexity(half_index(t, st.halving())) +
         2 * std::sqrt(2.0 / double(t) * one_sample_log(t, delta, st, 1.0));
}

double rademacher_lower(std::int64_t t, double delta, const StitchingFunctions& st,
                        double empirical) {
  check_index(t, "t");
  check_delta(delta);
  return empirical - 2 * std::sqrt(2.0 / double(t) * one_sample_log(t, delta, st, 1.0));
}

double covering_number(int d, double gamma_cov) {
  require(d >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
  require(gamma_cov >= 0 && gamma_cov < 1, ErrorCode::InvalidArgument,
          "covering parameter must lie in [0, 1)");
  if (d == 1 && gamma_cov == 0) return 2.0;
  require(gamma_cov > 0, ErrorCode::InvalidArgument, "covering parameter 0 needs d = 1");
  return std::pow(1 + 2 / gamma_cov, d);
}

double mean_boundary(std::int64_t t, double delta, const StitchingFunctions& st,
                     const CgfEnvelope& envelope, int d, double gamma_cov) {
  check_index(t, "t");
  check_delta(delta);
  const double logN = std::log(covering_number(d, gamma_cov));
  const double y = (one_sample_log(t, delta, st, 1.0) + logN) / half_index(t, st.halving());
  return envelope.dual_inverse(y) / (1 - gamma_cov);
}

std::function<double(std::int64_t, std::int64_t)> triangle_compose(
    std::function<double(std::int64_t)> gamma_x, std::function<double(std::int64_t)> gamma_y) {
  return [gx = std::move(gamma_x), gy = std::move(gamma_y)](std::int64_t t, std::int64_t s) {
    return gx(t) + gy(s);
  };
}

}  // namespace divcs
