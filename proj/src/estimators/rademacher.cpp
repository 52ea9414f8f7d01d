#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "divcs/error.hpp"
#include "divcs/estimators.hpp"

namespace divcs {

namespace {

void check_values(const Eigen::MatrixXi& v) {
  require(v.rows() >= 1 && v.cols() >= 1, ErrorCode::EmptySample, "empty evaluation matrix");
  require((v.array().abs() == 1).all(), ErrorCode::InvalidArgument,
          "evaluations must be +1 or -1");
}

double sup_abs(const std::vector<long>& sums) {
  long best = 0;
  for (long s : sums) best = std::max(best, std::labs(s));
  return double(best);
}

}  // namespace

RademacherEstimate rademacher_exact(const Eigen::MatrixXi& values) {
  check_values(values);
  const auto t = values.rows(), m = values.cols();
  require(t <= 20, ErrorCode::ExactTooLarge, "exact enumeration needs t <= 20");
  // Gray-code walk: one sign flips per step, so sums update in O(|F|).
  std::vector<long> sums(std::size_t(m), 0);
  std::vector<int> eps(std::size_t(t), 1);
  for (Eigen::Index f = 0; f < m; ++f)
    for (Eigen::Index i = 0; i < t; ++i) sums[std::size_t(f)] += values(i, f);
  double total = sup_abs(sums);
  const std::uint64_t n = std::uint64_t(1) << t;
  for (std::uint64_t k = 1; k < n; ++k) {
    int i = __builtin_ctzll(k);
    eps[std::size_t(i)] = -eps[std::size_t(i)];
    for (Eigen::Index f = 0; f < m; ++f) sums[std::size_t(f)] += 2L * eps[std::size_t(i)] * values(i, f);
    total += sup_abs(sums);
  }
  return {total / (double(n) * double(t)), 0.0, true};
}

RademacherEstimate rademacher_monte_carlo(const Eigen::MatrixXi& values, std::int64_t draws,
                                          std::uint64_t seed) {
  check_values(values);
  require(draws >= 2, ErrorCode::InvalidArgument, "need at least two draws");
  const auto t = values.rows(), m = values.cols();
  std::mt19937_64 rng(seed);
  std::vector<long> sums(static_cast<std::size_t>(m));
  double mean = 0, m2 = 0;
  for (std::int64_t d = 0; d < draws; ++d) {
    std::fill(sums.begin(), sums.end(), 0);
    for (Eigen::Index i = 0; i < t; ++i) {
      int e = (rng() & 1) ? 1 : -1;
      for (Eigen::Index f = 0; f < m; ++f) sums[std::size_t(f)] += e * values(i, f);
    }
    double v = sup_abs(sums) / double(t);
    double delta = v - mean;
    mean += delta / double(d + 1);
    m2 += delta * (v - mean);
  }
  double var = m2 / double(draws - 1);
  return {mean, std::sqrt(var / double(draws)), false};
}

}  // namespace divcs
