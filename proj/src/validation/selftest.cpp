#include "divcs/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "divcs/cgf.hpp"
#include "divcs/confseq.hpp"
#include "divcs/estimators.hpp"
#include "divcs/stitching.hpp"
#include "divcs/validation.hpp"

namespace divcs {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

InvariantResult stitching_sums() {
  for (double a : {1.5, 2.0, 3.0}) {
    StitchingFunctions st(a, 2.0, 2.0);
    auto one = one_sample_budget(st, 100000);
    auto two = two_sample_budget(st, 100000);
    for (const auto& [which, b] : {std::pair{"one-sample", one}, std::pair{"two-sample", two}})
      if (!(b.lower() <= 1 + 1e-10 && b.upper() >= 1 - 1e-10))
        return {"stitching-sum", false,
                std::string(which) + " alpha=" + fmt(a) + " bracket [" + fmt(b.lower()) + ", " +
                    fmt(b.upper()) + "] misses 1"};
  }
  return {"stitching-sum", true, ""};
}

InvariantResult dual_roundtrip() {
  std::vector<std::pair<std::string, CgfEnvelope>> envs{
      {"sub-gaussian", CgfEnvelope::sub_gaussian(0.3, 2.0)},
      {"sub-exponential", CgfEnvelope::sub_exponential(0.0, 1.0, 0.5)},
      {"tabulated", CgfEnvelope::tabulate([](double l) { return l * l / 2; }, 4.0)},
  };
  for (const auto& [name, env] : envs)
    for (double y : {1e-4, 0.01, 0.3, 1.0, 5.0}) {
      double x = env.dual_inverse(y);
      double back = env.dual(x);
      if (std::abs(back - y) > 1e-9 * std::max(1.0, y))
        return {"dual-roundtrip", false,
                name + ": psi*(inv(" + fmt(y) + ")) = " + fmt(back)};
    }
  return {"dual-roundtrip", true, ""};
}

InvariantResult estimator_oracles() {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N(0, 1);
  const auto k = KernelSpec::gaussian(1.0);
  for (int trial = 0; trial < 10; ++trial) {
    EmpiricalSample x(1), y(1);
    for (int i = 0; i < 7; ++i) x.push(N(rng));
    for (int i = 0; i < 5; ++i) y.push(N(rng) + 0.5);
    double xx = 0, yy = 0, xy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) xx += k(x.point(i), x.point(j));
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) yy += k(y.point(i), y.point(j));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) xy += k(x.point(i), y.point(j));
    double m2 = xx / 49 + yy / 25 - 2 * xy / 35;
    double naive = std::sqrt(std::max(0.0, m2));
    if (std::abs(mmd_v(x, y, k) - naive) > 1e-12)
      return {"estimator-oracles", false, "mmd_v differs from the double loop"};

    // uniform 4x4 transport: optimum is a permutation
    Eigen::MatrixXd c(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) c(i, j) = std::abs(N(rng));
    std::vector<double> w(4, 0.25);
    std::vector<int> perm{0, 1, 2, 3};
    double best = 1e300;
    do {
      double s = 0;
      for (int i = 0; i < 4; ++i) s += c(i, perm[std::size_t(i)]) / 4;
      best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (std::abs(ot_cost_discrete(w, w, c) - best) > 1e-9)
      return {"estimator-oracles", false, "ot_cost_discrete differs from permutation search"};

    auto xs = x.sorted_values();
    std::vector<double> ys;
    for (int i = 0; i < 7; ++i) ys.push_back(N(rng));
    auto ysample = EmpiricalSample::from_values(ys);
    std::sort(ys.begin(), ys.end());
    double pair = 0;
    for (std::size_t i = 0; i < 7; ++i) pair += std::abs(xs[i] - ys[i]) / 7;
    if (std::abs(w1_1d(x, ysample) - pair) > 1e-12)
      return {"estimator-oracles", false, "w1_1d differs from sorted pairing"};
  }
  return {"estimator-oracles", true, ""};
}

// sum over compositions x of t into k parts of t!/prod x_j! prod (lam x_j/t + (1-lam) p_j)^x_j
double g_enumerate(double lam, const std::vector<double>& p, int t) {
  const int k = int(p.size());
  std::vector<int> x(std::size_t(k), 0);
  double total = 0;
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == k - 1) {
      x[std::size_t(j)] = left;
      double term = std::tgamma(t + 1.0);
      for (int i = 0; i < k; ++i) {
        int xi = x[std::size_t(i)];
        double a = lam * xi / t + (1 - lam) * p[std::size_t(i)];
        term *= std::pow(a, xi) / std::tgamma(xi + 1.0);
      }
      total += term;
      return;
    }
    for (int v = 0; v <= left; ++v) {
      x[std::size_t(j)] = v;
      rec(j + 1, left - v);
    }
  };
  rec(0, t);
  return total;
}

InvariantResult g_enumeration() {
  const std::vector<std::vector<double>> ps{{0.5, 0.5}, {0.3, 0.7}, {0.2, 0.3, 0.5}};
  for (const auto& p : ps)
    for (int t = 1; t <= 5; ++t)
      for (double lam : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        double e = g_enumerate(lam, p, t);
        double dp = G_k_t(lam, p, t);
        double series = G_k_t_series(lam, std::int64_t(p.size()), t);
        if (std::abs(dp - e) > 1e-12 * e || std::abs(series - e) > 1e-12 * e)
          return {"G-enumeration", false,
                  "k=" + std::to_string(p.size()) + " t=" + std::to_string(t) +
                      " lambda=" + fmt(lam)};
      }
  return {"G-enumeration", true, ""};
}

InvariantResult boundary_values() {
  const StitchingFunctions st;
  double v = dkw_boundary(1, 0.05, st);
  if (std::abs(v - 7.0589896361052995) > 1e-12)
    return {"boundary-values", false, "dkw_boundary(1, 0.05) = " + fmt(v)};
  for (std::int64_t t = 1; t < 2000; ++t)
    if (dkw_boundary(t + 1, 0.05, st) > dkw_boundary(t, 0.05, st) * (1 + 1e-12))
      return {"boundary-values", false, "dkw boundary increases at t=" + std::to_string(t)};
  return {"boundary-values", true, ""};
}

InvariantResult loo_small() {
  for (AuditKind k : {AuditKind::TV, AuditKind::KS, AuditKind::KL})
    if (!leave_one_out_audit(k, 2, 3).passed)
      return {"leave-one-out", false, std::string(to_string(k)) + " audit failed"};
  return {"leave-one-out", true, ""};
}

}  // namespace

std::vector<InvariantResult> run_selftest() {
  std::vector<InvariantResult> out;
  for (auto fn : {stitching_sums, dual_roundtrip, estimator_oracles, g_enumeration,
                  boundary_values, loo_small}) {
    out.push_back(fn());
    if (!out.back().passed) break;
  }
  return out;
}

}  // namespace divcs
