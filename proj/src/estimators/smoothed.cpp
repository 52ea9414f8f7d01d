#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "divcs/error.hpp"
#include "divcs/estimators.hpp"

namespace divcs {

namespace {

class GaussianMixture {
 public:
  GaussianMixture(const EmpiricalSample& x, double sigma) : pts_(x.raw()), sigma_(sigma) {}

  double pdf(double u) const {
    double s = 0;
    for (double p : pts_) {
      double z = (u - p) / sigma_;
      s += std::exp(-0.5 * z * z);
    }
    return s / (double(pts_.size()) * sigma_ * std::sqrt(2 * std::numbers::pi));
  }

  double cdf(double u) const {
    double s = 0;
    for (double p : pts_) s += 0.5 * std::erfc(-(u - p) / (sigma_ * std::numbers::sqrt2));
    return s / double(pts_.size());
  }

  double lo() const { return *std::min_element(pts_.begin(), pts_.end()); }
  double hi() const { return *std::max_element(pts_.begin(), pts_.end()); }

 private:
  const std::vector<double>& pts_;
  double sigma_;
};

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15 * tol) return left + right + diff / 15;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

// Adaptive Simpson on panels no wider than `panel`, so narrow bumps
// between coarse nodes cannot be missed.
double integrate(const std::function<double(double)>& f, double a, double b, double panel,
                 const QuadratureSpec& q) {
  const int n = std::max(1, int(std::ceil((b - a) / panel)));
  const double h = (b - a) / n;
  double total = 0;
  for (int k = 0; k < n; ++k) {
    double lo = a + k * h, hi = (k + 1 == n) ? b : lo + h;
    double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    double whole = (hi - lo) / 6 * (fa + 4 * fm + fb);
    total += simpson_step(f, lo, hi, fa, fm, fb, whole, q.abs_tol / n, q.max_depth);
  }
  return total;
}

void check_args(const EmpiricalSample& x, double sigma) {
  require(x.dim() == 1, ErrorCode::UnsupportedDimension, "smoothed estimators need d = 1");
  require(!x.empty(), ErrorCode::EmptySample, "sample is empty");
  require(sigma > 0 && std::isfinite(sigma), ErrorCode::InvalidArgument, "sigma must be > 0");
}

double entropy(const GaussianMixture& fx, double a, double b, double sigma,
               const QuadratureSpec& q) {
  auto h = [&](double u) {
    double v = fx.pdf(u);
    return v > 0 ? -v * std::log(v) : 0.0;
  };
  return integrate(h, a, b, sigma / 2, q);
}

}  // namespace

double smoothed_estimators_1d(const EmpiricalSample& x, const EmpiricalSample* y, double sigma,
                              SmoothedKind which, const QuadratureSpec& quad) {
  check_args(x, sigma);
  GaussianMixture fx(x, sigma);
  double a = fx.lo(), b = fx.hi();
  if (which == SmoothedKind::Entropy)
    return entropy(fx, a - quad.pad_sigmas * sigma, b + quad.pad_sigmas * sigma, sigma, quad);
  require(y != nullptr, ErrorCode::InvalidArgument, "TV and W1 need a second sample");
  check_args(*y, sigma);
  GaussianMixture fy(*y, sigma);
  a = std::min(a, fy.lo()) - quad.pad_sigmas * sigma;
  b = std::max(b, fy.hi()) + quad.pad_sigmas * sigma;
  if (which == SmoothedKind::TV)
    return 0.5 * integrate([&](double u) { return std::abs(fx.pdf(u) - fy.pdf(u)); }, a, b,
                           sigma / 2, quad);
  return integrate([&](double u) { return std::abs(fx.cdf(u) - fy.cdf(u)); }, a, b, sigma / 2,
                   quad);
}

double smoothed_estimators_1d(const EmpiricalSample& x, const SmoothedReference& ref,
                              double sigma, SmoothedKind which, const QuadratureSpec& quad) {
  check_args(x, sigma);
  GaussianMixture fx(x, sigma);
  double a = std::min(fx.lo() - quad.pad_sigmas * sigma, ref.lo);
  double b = std::max(fx.hi() + quad.pad_sigmas * sigma, ref.hi);
  switch (which) {
    case SmoothedKind::Entropy: return entropy(fx, a, b, sigma, quad);
    case SmoothedKind::TV:
      require(bool(ref.pdf), ErrorCode::InvalidArgument, "reference density missing");
      return 0.5 * integrate([&](double u) { return std::abs(fx.pdf(u) - ref.pdf(u)); }, a, b,
                             sigma / 2, quad);
    case SmoothedKind::W1:
      require(bool(ref.cdf), ErrorCode::InvalidArgument, "reference cdf missing");
      return integrate([&](double u) { return std::abs(fx.cdf(u) - ref.cdf(u)); }, a, b,
                       sigma / 2, quad);
  }
  return 0;
}

}  // namespace divcs
