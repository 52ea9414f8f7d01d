#include "divcs/stitching.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "divcs/error.hpp"

namespace divcs {

namespace {

std::mutex zeta_mutex;
std::map<double, double>& zeta_memo() {
  static std::map<double, double> memo;
  return memo;
}

// Kahan summation of f(k) for k = lo..hi, smallest terms first.
template <class F>
double sum_reverse(std::int64_t lo, std::int64_t hi, F f) {
  double s = 0, c = 0;
  for (std::int64_t k = hi; k >= lo; --k) {
    double y = f(k) - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

// integral_x^inf u^{-p} du
double power_tail(double x, double p) { return std::pow(x, 1.0 - p) / (p - 1.0); }

}  // namespace

double zeta(double alpha) {
  require(alpha > 1.0, ErrorCode::InvalidArgument, "zeta needs alpha > 1");
  std::lock_guard<std::mutex> lock(zeta_mutex);
  auto& memo = zeta_memo();
  auto it = memo.find(alpha);
  if (it != memo.end()) return it->second;
  double z = boost::math::zeta(alpha);
  memo.emplace(alpha, z);
  return z;
}

namespace testing {
void corrupt_zeta_cache(double factor) {
  std::lock_guard<std::mutex> lock(zeta_mutex);
  for (auto& kv : zeta_memo()) kv.second *= factor;
}
void clear_zeta_cache() {
  std::lock_guard<std::mutex> lock(zeta_mutex);
  zeta_memo().clear();
}
}  // namespace testing

StitchingFunctions::StitchingFunctions(double alpha, double eta, double xi, HalvingRule halving)
    : alpha_(alpha), eta_(eta), xi_(xi), halving_(halving) {
  require(alpha > 1.0 && std::isfinite(alpha), ErrorCode::InvalidArgument, "alpha must be > 1");
  require(eta > 1.0 && std::isfinite(eta), ErrorCode::InvalidArgument, "eta must be > 1");
  require(xi > 1.0 && std::isfinite(xi), ErrorCode::InvalidArgument, "xi must be > 1");
  zeta_a_ = zeta(alpha);
  zeta_a1_ = zeta(alpha + 1.0);
}

double StitchingFunctions::ell(double k) const { return std::exp(log_ell(k)); }

double StitchingFunctions::log_ell(double k) const {
  return alpha_ * std::log(std::max(1.0, k)) + std::log(zeta_a_);
}

double StitchingFunctions::g(double k) const { return std::exp(log_g(k)); }

double StitchingFunctions::log_g(double k) const {
  return 1.0 + (alpha_ + 1.0) * std::log(std::max(2.0, k)) + std::log(zeta_a_ - zeta_a1_);
}

namespace {
double halve(std::int64_t t, double base, HalvingRule rule) {
  if (rule == HalvingRule::Real) return static_cast<double>(t) / base;
  auto b = static_cast<std::int64_t>(std::ceil(base));
  return static_cast<double>((t + b - 1) / b);
}
}  // namespace

double StitchingFunctions::bar_t(std::int64_t t) const { return halve(t, eta_, halving_); }
double StitchingFunctions::bar_s(std::int64_t s) const { return halve(s, xi_, halving_); }

double half_index(std::int64_t t, HalvingRule rule) { return halve(t, 2.0, rule); }

BudgetCheck one_sample_budget(const StitchingFunctions& st, std::int64_t K) {
  require(K >= 1, ErrorCode::InvalidArgument, "K must be >= 1");
  const double a = st.alpha();
  BudgetCheck b;
  b.partial = sum_reverse(1, K, [&st](std::int64_t k) { return std::exp(-st.log_ell(double(k))); });
  // k^{-a} is convex: int_{K+1}^inf <= sum_{k>K} <= int_{K+1/2}^inf
  b.tail_lower = power_tail(K + 1.0, a) / st.zeta_alpha();
  b.tail_upper = power_tail(K + 0.5, a) / st.zeta_alpha();
  return b;
}

BudgetCheck two_sample_budget(const StitchingFunctions& st, std::int64_t K) {
  require(K >= 2, ErrorCode::InvalidArgument, "K must be >= 2");
  const double a = st.alpha();
  // pairs (j,k), j,k >= 1, j+k = n: there are n-1 of them, each worth e/g(n)
  auto term = [&](std::int64_t n) { return (n - 1) * std::exp(1.0 - st.log_g(double(n))); };
  BudgetCheck b;
  b.partial = sum_reverse(2, K, term);
  const double norm = st.zeta_alpha() - st.zeta_alpha1();
  // (n-1)/n^{a+1} = n^{-a} - n^{-a-1}; bracket each convex piece separately
  b.tail_upper = (power_tail(K + 0.5, a) - power_tail(K + 1.0, a + 1.0)) / norm;
  b.tail_lower = (power_tail(K + 1.0, a) - power_tail(K + 0.5, a + 1.0)) / norm;
  return b;
}

}  // namespace divcs
