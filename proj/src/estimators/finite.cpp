#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "divcs/error.hpp"
#include "divcs/estimators.hpp"

namespace divcs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_probability(std::span<const double> p, std::size_t k) {
  require(p.size() == k, ErrorCode::DimensionMismatch,
          "probability vector has length " + std::to_string(p.size()) + ", alphabet has " +
              std::to_string(k));
  double s = 0;
  for (double v : p) {
    require(v >= 0 && std::isfinite(v), ErrorCode::InvalidArgument,
            "probabilities must be finite and >= 0");
    s += v;
  }
  require(std::abs(s - 1.0) <= 1e-12, ErrorCode::InvalidArgument, "probabilities must sum to 1");
}

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace

double tv_finite(const CategoricalCounts& counts, std::span<const double> p) {
  check_probability(p, counts.k());
  require(counts.total() > 0, ErrorCode::EmptySample, "no observations");
  const double t = double(counts.total());
  double s = 0;
  for (std::size_t j = 0; j < counts.k(); ++j) s += std::abs(double(counts[j]) / t - p[j]);
  return 0.5 * s;
}

double kl_finite(const CategoricalCounts& counts, std::span<const double> p) {
  check_probability(p, counts.k());
  require(counts.total() > 0, ErrorCode::EmptySample, "no observations");
  const double t = double(counts.total());
  double s = 0;
  for (std::size_t j = 0; j < counts.k(); ++j) {
    if (counts[j] == 0) continue;
    require(p[j] > 0, ErrorCode::AbsoluteContinuityViolated,
            "category " + std::to_string(j) + " observed but has probability 0");
    double q = double(counts[j]) / t;
    s += q * std::log(q / p[j]);
  }
  return s;
}

double G_k_t(double lambda, std::span<const double> p, std::int64_t t) {
  require(lambda >= 0 && lambda <= 1, ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
  require(t >= 0, ErrorCode::InvalidArgument, "t must be >= 0");
  check_probability(p, p.size());
  if (t == 0) return 1.0;
  const auto n = std::size_t(t);
  // log V_i(m) = log sum over (x_1..x_i), sum = m, of prod a_j(x_j)^{x_j} / x_j!
  std::vector<double> cur(n + 1, kNegInf), next(n + 1), w(n + 1);
  cur[0] = 0.0;
  for (double pj : p) {
    for (std::size_t x = 0; x <= n; ++x) {
      double a = lambda * double(x) / double(t) + (1 - lambda) * pj;
      double xlog = (x == 0) ? 0.0 : (a > 0 ? double(x) * std::log(a) : kNegInf);
      w[x] = xlog - std::lgamma(double(x) + 1);
    }
    for (std::size_t m = 0; m <= n; ++m) {
      double acc = kNegInf;
      for (std::size_t x = 0; x <= m; ++x)
        if (cur[m - x] != kNegInf && w[x] != kNegInf) acc = log_add(acc, cur[m - x] + w[x]);
      next[m] = acc;
    }
    std::swap(cur, next);
  }
  return std::exp(std::lgamma(double(t) + 1) + cur[n]);
}

double G_k_t_series(double lambda, std::int64_t k, std::int64_t t) {
  require(lambda >= 0 && lambda <= 1, ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
  require(k >= 2, ErrorCode::InvalidArgument, "k must be >= 2");
  require(t >= 0, ErrorCode::InvalidArgument, "t must be >= 0");
  // term_{j+1} / term_j = lambda (t-j)/t (j+k-1)/(j+1), decreasing in j
  double term = 1.0, sum = 1.0;
  for (std::int64_t j = 0; j < t; ++j) {
    double r = lambda * double(t - j) / double(t) * double(j + k - 1) / double(j + 1);
    if (r < 1.0 && term * r / (1.0 - r) <= 1e-17 * sum) return sum + term * r / (1.0 - r);
    term *= r;
    sum += term;
    require(std::isfinite(sum), ErrorCode::OutOfRange, "G_{k,t} overflows");
  }
  return sum;
}

double log_G_k_t_series(double lambda, std::int64_t k, std::int64_t t) {
  return std::log(G_k_t_series(lambda, k, t));
}

}  // namespace divcs
