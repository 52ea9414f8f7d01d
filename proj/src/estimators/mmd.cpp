#include <cmath>

#include "divcs/error.hpp"
#include "divcs/estimators.hpp"

namespace divcs {

namespace {

double cross_sum(const EmpiricalSample& a, const EmpiricalSample& b, const KernelSpec& k) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += k(a.point(i), b.point(j));
  return s;
}

// sum over ordered pairs using symmetry
double self_sum(const EmpiricalSample& a, const KernelSpec& k) {
  double diag = 0, off = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diag += k(a.point(i), a.point(i));
    for (std::size_t j = 0; j < i; ++j) off += k(a.point(i), a.point(j));
  }
  return diag + 2 * off;
}

MmdVStatistic finish(double sxx, double syy, double sxy, double t, double s) {
  MmdVStatistic r;
  r.squared = sxx / (t * t) + syy / (s * s) - 2 * sxy / (t * s);
  r.clamped = r.squared < 0;
  r.value = r.clamped ? 0.0 : std::sqrt(r.squared);
  return r;
}

void check_pair(const EmpiricalSample& x, const EmpiricalSample& y) {
  require(!x.empty() && !y.empty(), ErrorCode::EmptySample, "MMD needs both samples nonempty");
  require(x.dim() == y.dim(), ErrorCode::DimensionMismatch, "samples differ in dimension");
}

}  // namespace

MmdVStatistic mmd_v_statistic(const EmpiricalSample& x, const EmpiricalSample& y,
                              const KernelSpec& kernel) {
  check_pair(x, y);
  return finish(self_sum(x, kernel), self_sum(y, kernel), cross_sum(x, y, kernel),
                double(x.size()), double(y.size()));
}

double mmd_u_squared(const EmpiricalSample& x, const EmpiricalSample& y,
                     const KernelSpec& kernel) {
  require(x.size() == y.size(), ErrorCode::DimensionMismatch, "paired samples differ in size");
  require(x.dim() == y.dim(), ErrorCode::DimensionMismatch, "samples differ in dimension");
  const std::size_t t = x.size();
  require(t >= 2, ErrorCode::InsufficientData, "U-statistic needs t >= 2");
  double s = 0;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < i; ++j)
      s += kernel(x.point(i), x.point(j)) + kernel(y.point(i), y.point(j)) -
           kernel(x.point(i), y.point(j)) - kernel(x.point(j), y.point(i));
  return 2 * s / (double(t) * double(t - 1));
}

double v_statistic_weighted(const EmpiricalSample& points, std::span<const double> w,
                            const KernelSpec& kernel) {
  require(w.size() == points.size(), ErrorCode::DimensionMismatch, "one weight per point");
  double s = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      s += w[i] * w[j] * kernel(points.point(i), points.point(j));
  return s;
}

double mmd_weighted(const EmpiricalSample& points, std::span<const double> p,
                    std::span<const double> q, const KernelSpec& kernel) {
  require(p.size() == q.size(), ErrorCode::DimensionMismatch, "weight vectors differ in length");
  std::vector<double> d(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) d[i] = p[i] - q[i];
  return std::sqrt(std::max(0.0, v_statistic_weighted(points, d, kernel)));
}

MmdAccumulator::MmdAccumulator(KernelSpec kernel, std::size_t dim)
    : kernel_(std::move(kernel)), x_(dim), y_(dim) {}

void MmdAccumulator::add_x(std::span<const double> p) {
  x_.push(p);
  const std::size_t n = x_.size() - 1;
  double self = 0;
  for (std::size_t i = 0; i < n; ++i) self += kernel_(x_.point(i), p);
  sxx_ += 2 * self + kernel_(p, p);
  for (std::size_t j = 0; j < y_.size(); ++j) sxy_ += kernel_(p, y_.point(j));
}

void MmdAccumulator::add_y(std::span<const double> p) {
  y_.push(p);
  const std::size_t n = y_.size() - 1;
  double self = 0;
  for (std::size_t i = 0; i < n; ++i) self += kernel_(y_.point(i), p);
  syy_ += 2 * self + kernel_(p, p);
  for (std::size_t i = 0; i < x_.size(); ++i) sxy_ += kernel_(x_.point(i), p);
}

MmdVStatistic MmdAccumulator::statistic() {
  require(!x_.empty() && !y_.empty(), ErrorCode::EmptySample, "MMD needs t, s >= 1");
  auto r = finish(sxx_, syy_, sxy_, double(x_.size()), double(y_.size()));
  if (r.clamped) ++clamps_;
  return r;
}

}  // namespace divcs
