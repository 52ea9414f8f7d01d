#include <algorithm>
#include <cmath>
#include <cstdint>

#include "divcs/error.hpp"
#include "divcs/estimators.hpp"

namespace divcs {

namespace {

void require_nonempty(std::size_t n, const char* what) {
  require(n > 0, ErrorCode::EmptySample, std::string(what) + " is empty");
}

void require_same_length(std::size_t a, std::size_t b) {
  require(a == b, ErrorCode::DimensionMismatch, "weight vectors differ in length");
}

// |i/t - j/s| with the difference formed in integers
double step_gap(std::int64_t i, std::int64_t t, std::int64_t j, std::int64_t s) {
  return double(std::llabs(i * s - j * t)) / (double(t) * double(s));
}

}  // namespace

double ks_one_sample_sorted(std::span<const double> sorted,
                            const std::function<double(double)>& cdf) {
  require_nonempty(sorted.size(), "sample");
  const double t = double(sorted.size());
  double best = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double f = cdf(sorted[i]);
    best = std::max({best, double(i + 1) / t - f, f - double(i) / t});
  }
  return best;
}

double ks_one_sample(const EmpiricalSample& x, const std::function<double(double)>& cdf) {
  require_nonempty(x.size(), "sample");
  auto v = x.sorted_values();
  return ks_one_sample_sorted(v, cdf);
}

double ks_two_sample_sorted(std::span<const double> xs, std::span<const double> ys) {
  require_nonempty(xs.size(), "x sample");
  require_nonempty(ys.size(), "y sample");
  const auto t = std::int64_t(xs.size()), s = std::int64_t(ys.size());
  std::int64_t i = 0, j = 0;
  double best = 0;
  while (i < t || j < s) {
    double v = (j >= s || (i < t && xs[i] <= ys[j])) ? xs[i] : ys[j];
    while (i < t && xs[i] == v) ++i;
    while (j < s && ys[j] == v) ++j;
    best = std::max(best, step_gap(i, t, j, s));
  }
  return best;
}

double ks_two_sample(const EmpiricalSample& x, const EmpiricalSample& y) {
  require_nonempty(x.size(), "x sample");
  require_nonempty(y.size(), "y sample");
  auto xs = x.sorted_values();
  auto ys = y.sorted_values();
  return ks_two_sample_sorted(xs, ys);
}

double ks_discrete(std::span<const double> p, std::span<const double> q) {
  require_same_length(p.size(), q.size());
  double cum = 0, best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    cum += p[i] - q[i];
    best = std::max(best, std::abs(cum));
  }
  return best;
}

double w1_discrete(std::span<const double> support, std::span<const double> p,
                   std::span<const double> q) {
  require_same_length(p.size(), q.size());
  require_same_length(p.size(), support.size());
  double cum = 0, total = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    cum += p[i] - q[i];
    total += std::abs(cum) * (support[i + 1] - support[i]);
  }
  return total;
}

double tv_discrete(std::span<const double> p, std::span<const double> q) {
  require_same_length(p.size(), q.size());
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double kl_discrete(std::span<const double> p, std::span<const double> q) {
  require_same_length(p.size(), q.size());
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;
    require(q[i] > 0, ErrorCode::AbsoluteContinuityViolated,
            "mass on category " + std::to_string(i) + " where the reference has none");
    s += p[i] * std::log(p[i] / q[i]);
  }
  return s;
}

double w1_1d(const EmpiricalSample& x, const EmpiricalSample& y) {
  require_nonempty(x.size(), "x sample");
  require_nonempty(y.size(), "y sample");
  auto xs = x.sorted_values();
  auto ys = y.sorted_values();
  const auto t = std::int64_t(xs.size()), s = std::int64_t(ys.size());
  std::int64_t i = 0, j = 0;
  double total = 0, prev = 0;
  bool started = false;
  while (i < t || j < s) {
    double v = (j >= s || (i < t && xs[i] <= ys[j])) ? xs[i] : ys[j];
    if (started) total += step_gap(i, t, j, s) * (v - prev);
    while (i < t && xs[i] == v) ++i;
    while (j < s && ys[j] == v) ++j;
    prev = v;
    started = true;
  }
  return total;
}

}  // namespace divcs
