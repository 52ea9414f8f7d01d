#include <algorithm>
#include <cmath>

#include "divcs/error.hpp"
#include "divcs/estimators.hpp"
#include "divcs/validation.hpp"

namespace divcs {

const char* to_string(BiasEstimator e) {
  switch (e) {
    case BiasEstimator::KS: return "ks";
    case BiasEstimator::TV: return "tv";
    case BiasEstimator::MMD: return "mmd";
    case BiasEstimator::KL: return "kl";
    case BiasEstimator::MMDUStat: return "mmd-ustat";
  }
  return "?";
}

namespace {

constexpr double kBandwidth = 1.0;

std::int64_t draw(std::mt19937_64& rng, const std::vector<double>& p) {
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double c = 0;
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    c += p[j];
    if (u < c) return std::int64_t(j);
  }
  return std::int64_t(p.size() - 1);
}

double kl(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0;
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p[j] > 0) s += p[j] * std::log(p[j] / q[j]);
  return s;
}

// MMD^2 between N(0,1) and N(a,1) under the Gaussian kernel of width h.
double gaussian_mmd2(double a, double h) {
  return 2 / std::sqrt(1 + 2 / (h * h)) * (1 - std::exp(-a * a / (2 * (h * h + 2))));
}

// Per-replicate trajectory of one estimator: estimate(t) for t = 1..t_max.
// KS: X ~ U(0,1) against F(x) = x/(1+a).
// TV: k = 4 uniform data against (1/4 + a, 1/4 - a, 1/4, 1/4).
// KL: p = (.2, .3, .5) data against (.2 + a, .3, .5 - a).
// MMD, MMDUStat: N(0,1) against N(a,1), t = s.
struct Trajectory {
  BiasEstimator kind;
  double shift;
  std::vector<double> p, q;

  Trajectory(BiasEstimator k, double a) : kind(k), shift(a) {
    if (k == BiasEstimator::TV) {
      p = {0.25, 0.25, 0.25, 0.25};
      q = {0.25 + a, 0.25 - a, 0.25, 0.25};
    } else if (k == BiasEstimator::KL) {
      p = {0.2, 0.3, 0.5};
      q = {0.2 + a, 0.3, 0.5 - a};
    }
    for (double v : q)
      require(v > 0, ErrorCode::InvalidArgument, "shift leaves the probability simplex");
  }

  double truth() const {
    switch (kind) {
      case BiasEstimator::KS: return shift / (1 + shift);
      case BiasEstimator::TV: return shift;
      case BiasEstimator::KL: return kl(p, q);
      case BiasEstimator::MMD: return std::sqrt(gaussian_mmd2(shift, kBandwidth));
      case BiasEstimator::MMDUStat: return gaussian_mmd2(shift, kBandwidth);
    }
    return 0;
  }

  // Estimates at every t in [1, t_max] for which want[t] is set.
  std::vector<double> run(std::mt19937_64& rng, std::int64_t t_max,
                          const std::vector<char>& want) const {
    std::vector<double> out(std::size_t(t_max + 1), 0.0);
    std::normal_distribution<double> N(0.0, 1.0);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    switch (kind) {
      case BiasEstimator::KS: {
        const double a = shift;
        auto F = [a](double x) { return std::clamp(x / (1 + a), 0.0, 1.0); };
        std::vector<double> xs;
        for (std::int64_t t = 1; t <= t_max; ++t) {
          double v = U(rng);
          xs.insert(std::upper_bound(xs.begin(), xs.end(), v), v);
          if (want[std::size_t(t)]) out[std::size_t(t)] = ks_one_sample_sorted(xs, F);
        }
        break;
      }
      case BiasEstimator::TV:
      case BiasEstimator::KL: {
        CategoricalCounts c(p.size());
        for (std::int64_t t = 1; t <= t_max; ++t) {
          c.add(std::size_t(draw(rng, p)));
          if (!want[std::size_t(t)]) continue;
          out[std::size_t(t)] = kind == BiasEstimator::TV ? tv_finite(c, q) : kl_finite(c, q);
        }
        break;
      }
      case BiasEstimator::MMD: {
        MmdAccumulator acc(KernelSpec::gaussian(kBandwidth), 1);
        for (std::int64_t t = 1; t <= t_max; ++t) {
          double x = N(rng);
          double y = shift + N(rng);
          acc.add_x(std::span<const double>(&x, 1));
          acc.add_y(std::span<const double>(&y, 1));
          if (want[std::size_t(t)]) out[std::size_t(t)] = acc.value();
        }
        break;
      }
      case BiasEstimator::MMDUStat: {
        EmpiricalSample xs(1), ys(1);
        const auto k = KernelSpec::gaussian(kBandwidth);
        for (std::int64_t t = 1; t <= t_max; ++t) {
          xs.push(N(rng));
          ys.push(shift + N(rng));
          if (t >= 2 && want[std::size_t(t)]) out[std::size_t(t)] = mmd_u_squared(xs, ys, k);
        }
        break;
      }
    }
    return out;
  }
};

struct Moments {
  double mean = 0, se = 0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  const double n = double(v.size());
  for (double x : v) m.mean += x;
  m.mean /= n;
  double ss = 0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  m.se = n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
  return m;
}

}  // namespace

BiasReport bias_direction_check(BiasEstimator estimator, double shift,
                                const std::vector<std::int64_t>& t_grid, std::int64_t R,
                                std::uint64_t seed) {
  require(!t_grid.empty() && R >= 2, ErrorCode::InvalidArgument,
          "need a nonempty t grid and R >= 2");
  require(std::is_sorted(t_grid.begin(), t_grid.end()) && t_grid.front() >= 1,
          ErrorCode::InvalidArgument, "t grid must be increasing and start at >= 1");
  require(shift >= 0, ErrorCode::InvalidArgument, "shift must be >= 0");
  const bool ustat = estimator == BiasEstimator::MMDUStat;
  if (ustat)
    require(t_grid.front() >= 2, ErrorCode::InsufficientData, "u-statistic needs t >= 2");

  Trajectory traj(estimator, shift);
  BiasReport rep;
  rep.estimator = estimator;
  rep.truth = traj.truth();
  rep.t_grid = t_grid;
  const std::int64_t t_max = t_grid.back();
  const std::int64_t t_min = t_grid.front();
  // Stop at the first t in [t_min, t_max] whose estimate falls below this.
  const double threshold = rep.truth + 0.5 / std::sqrt(double(t_min));

  std::vector<char> want(std::size_t(t_max + 1), 0);
  for (auto t : t_grid) want[std::size_t(t)] = 1;
  if (!ustat)
    for (auto t = t_min; t <= t_max; ++t) want[std::size_t(t)] = 1;

  const std::size_t G = t_grid.size();
  std::vector<std::vector<double>> at(G, std::vector<double>(std::size_t(R)));
  std::vector<double> stopped(static_cast<std::size_t>(R));
  parallel_for(R, [&](std::int64_t r) {
    std::mt19937_64 rng(replicate_seed(seed, std::uint64_t(r)));
    auto est = traj.run(rng, t_max, want);
    for (std::size_t g = 0; g < G; ++g) at[g][std::size_t(r)] = est[std::size_t(t_grid[g])];
    if (ustat) return;
    std::int64_t tau = t_max;
    for (auto t = t_min; t <= t_max; ++t)
      if (est[std::size_t(t)] < threshold) {
        tau = t;
        break;
      }
    stopped[std::size_t(r)] = est[std::size_t(tau)];
  });

  for (std::size_t g = 0; g < G; ++g) {
    auto m = moments(at[g]);
    rep.means.push_back(m.mean);
    rep.ses.push_back(m.se);
    if (ustat) {
      rep.unbiased = rep.unbiased && std::abs(m.mean - rep.truth) <= 3 * m.se;
    } else {
      rep.above_truth = rep.above_truth && m.mean >= rep.truth - 3 * m.se;
      if (rep.truth == 0) rep.above_truth = rep.above_truth && m.mean > 0;
    }
  }
  if (!ustat) {
    for (std::size_t g = 0; g + 1 < G; ++g) {
      std::vector<double> d(static_cast<std::size_t>(R));
      for (std::size_t r = 0; r < d.size(); ++r) d[r] = at[g + 1][r] - at[g][r];
      auto m = moments(d);
      rep.nonincreasing = rep.nonincreasing && m.mean <= 3 * m.se;
    }
    auto s = moments(stopped);
    rep.stopped_mean = s.mean;
    rep.stopped_se = s.se;
    rep.stopping_ok = s.mean >= rep.truth - 3 * s.se;
  }
  rep.passed = rep.above_truth && rep.nonincreasing && rep.unbiased && rep.stopping_ok;
  return rep;
}

}  // namespace divcs
