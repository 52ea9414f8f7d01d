#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "divcs/error.hpp"
#include "divcs/estimators.hpp"

using namespace divcs;
using doctest::Approx;

namespace {

bool throws_code(auto&& fn, ErrorCode code) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

const auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };

EmpiricalSample values(std::vector<double> v) { return EmpiricalSample::from_values(std::move(v)); }

// All multisets of size n over {0, .., m-1}, as sorted value lists.
void multisets(int n, int m, const std::function<void(const std::vector<double>&)>& fn) {
  std::vector<double> cur;
  std::function<void(int)> rec = [&](int lo) {
    if (int(cur.size()) == n) {
      fn(cur);
      return;
    }
    for (int v = lo; v < m; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(0);
}

double naive_mmd(const EmpiricalSample& x, const EmpiricalSample& y, const KernelSpec& k) {
  double xx = 0, yy = 0, xy = 0;
  const double t = double(x.size()), s = double(y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) xx += k(x.point(i), x.point(j));
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) yy += k(y.point(i), y.point(j));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) xy += k(x.point(i), y.point(j));
  return std::sqrt(std::max(0.0, xx / (t * t) + yy / (s * s) - 2 * xy / (t * s)));
}

}  // namespace

TEST_CASE("one-sample KS") {
  CHECK(ks_one_sample(values({0.5}), uniform_cdf) == Approx(0.5));
  const int t = 8;
  std::vector<double> q;
  for (int i = 1; i <= t; ++i) q.push_back((i - 0.5) / t);
  CHECK(ks_one_sample(values(q), uniform_cdf) == Approx(1.0 / (2 * t)));
  CHECK(throws_code([] { ks_one_sample(EmpiricalSample(1), uniform_cdf); }, ErrorCode::EmptySample));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<double> big;
  for (int i = 0; i < 20000; ++i) big.push_back(U(rng));
  CHECK(ks_one_sample(values(big), uniform_cdf) < 0.02);
}

TEST_CASE("two-sample KS") {
  CHECK(ks_two_sample(values({0.1, 0.2}), values({0.3})) == Approx(1.0));
  CHECK(ks_two_sample(values({0.3, 0.1}), values({0.1, 0.3})) == 0);
  CHECK(ks_two_sample(values({1, 2, 3}), values({5, 6})) == 1);
  CHECK(throws_code([] { ks_two_sample(values({1}), EmpiricalSample(1)); }, ErrorCode::EmptySample));
  // brute force over the merged grid, with ties
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> D(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(std::size_t(1 + trial % 7)), b(std::size_t(1 + trial % 4));
    for (auto& v : a) v = D(rng);
    for (auto& v : b) v = D(rng);
    double best = 0;
    for (int g = 0; g <= 5; ++g) {
      double fa = double(std::count_if(a.begin(), a.end(), [g](double v) { return v <= g; })) / double(a.size());
      double fb = double(std::count_if(b.begin(), b.end(), [g](double v) { return v <= g; })) / double(b.size());
      best = std::max(best, std::abs(fa - fb));
    }
    CHECK(ks_two_sample(values(a), values(b)) == Approx(best).epsilon(1e-15));
    CHECK(ks_two_sample(values(a), values(b)) == ks_two_sample(values(b), values(a)));
  }
}

TEST_CASE("MMD V-statistic") {
  auto lin = KernelSpec::linear(1.0);
  CHECK(mmd_v(values({1}), values({-1}), lin) == Approx(2.0));
  auto g = KernelSpec::gaussian(0.7);
  CHECK(mmd_v(values({0.3, 1.2, -1}), values({1.2, -1, 0.3}), g) == Approx(0.0).epsilon(1e-7));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> N(0, 1);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + std::size_t(trial) % 50, m = 50 - std::size_t(trial) % 37;
    EmpiricalSample x(2), y(2);
    for (std::size_t i = 0; i < n; ++i) x.push(std::vector<double>{N(rng), N(rng)});
    for (std::size_t i = 0; i < m; ++i) y.push(std::vector<double>{N(rng) + 0.3, N(rng)});
    worst = std::max(worst, std::abs(mmd_v(x, y, g) - naive_mmd(x, y, g)));
    CHECK(mmd_v(x, y, g) == Approx(mmd_v(y, x, g)).epsilon(1e-12));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("MMD accumulator matches the batch statistic") {
  auto g = KernelSpec::gaussian(1.0);
  MmdAccumulator acc(g, 1);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> N(0, 1);
  std::vector<double> xs, ys;
  for (int i = 0; i < 60; ++i) {
    double a = N(rng), b = N(rng);
    xs.push_back(a);
    acc.add_x(std::span<const double>(&a, 1));
    if (i % 3 == 0) {
      ys.push_back(b);
      acc.add_y(std::span<const double>(&b, 1));
    }
    if (!ys.empty()) CHECK(acc.value() == Approx(mmd_v(values(xs), values(ys), g)).epsilon(1e-10));
  }
}

TEST_CASE("MMD U-statistic") {
  auto lin = KernelSpec::linear(1.0);
  CHECK(mmd_u_squared(values({1, 1}), values({-1, -1}), lin) == Approx(4.0));
  auto g = KernelSpec::gaussian(1.0);
  CHECK(mmd_u_squared(values({0.1, 2, -1}), values({0.1, 2, -1}), g) == Approx(0.0));
  CHECK(throws_code([&] { mmd_u_squared(values({1}), values({2}), g); }, ErrorCode::InsufficientData));
  CHECK(throws_code([&] { mmd_u_squared(values({1, 2}), values({2}), g); },
                    ErrorCode::DimensionMismatch));
}

TEST_CASE("MMD triangle inequality and convexity") {
  auto g = KernelSpec::gaussian(1.0);
  std::vector<std::vector<double>> samples;
  for (int n = 1; n <= 3; ++n) multisets(n, 3, [&](const std::vector<double>& v) { samples.push_back(v); });
  for (const auto& a : samples)
    for (const auto& b : samples)
      for (const auto& c : samples) {
        double ab = mmd_v(values(a), values(b), g), bc = mmd_v(values(b), values(c), g),
               ac = mmd_v(values(a), values(c), g);
        CHECK(ac <= ab + bc + 1e-12);
        CHECK(ks_two_sample(values(a), values(c)) <=
              ks_two_sample(values(a), values(b)) + ks_two_sample(values(b), values(c)) + 1e-12);
        CHECK(w1_1d(values(a), values(c)) <=
              w1_1d(values(a), values(b)) + w1_1d(values(b), values(c)) + 1e-12);
      }

  // sqrt of the weighted V-statistic is convex along mixtures
  std::mt19937_64 rng(5);
  std::normal_distribution<double> N(0, 1);
  std::uniform_real_distribution<double> U(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    EmpiricalSample pts(1);
    for (int i = 0; i < 6; ++i) pts.push(N(rng));
    std::vector<double> pa(6), pb(6), q(6, 1.0 / 6);
    double sa = 0, sb = 0;
    for (int i = 0; i < 6; ++i) {
      pa[std::size_t(i)] = U(rng);
      pb[std::size_t(i)] = U(rng);
      sa += pa[std::size_t(i)];
      sb += pb[std::size_t(i)];
    }
    for (int i = 0; i < 6; ++i) {
      pa[std::size_t(i)] /= sa;
      pb[std::size_t(i)] /= sb;
    }
    double lam = U(rng);
    std::vector<double> mix(6);
    for (int i = 0; i < 6; ++i)
      mix[std::size_t(i)] = lam * pa[std::size_t(i)] + (1 - lam) * pb[std::size_t(i)];
    CHECK(mmd_weighted(pts, mix, q, g) <=
          lam * mmd_weighted(pts, pa, q, g) + (1 - lam) * mmd_weighted(pts, pb, q, g) + 1e-12);
    CHECK(psd_min_eigenvalue(g, pts) >= -1e-8);
  }
}

TEST_CASE("finite-alphabet TV and KL") {
  CHECK(tv_finite(CategoricalCounts(std::vector<std::int64_t>{2, 0}), std::vector{0.5, 0.5}) ==
        Approx(0.5));
  CHECK(tv_finite(CategoricalCounts(std::vector<std::int64_t>{2, 3, 5}), std::vector{0.2, 0.3, 0.5}) ==
        Approx(0.0).epsilon(1e-15));
  CHECK(kl_finite(CategoricalCounts(std::vector<std::int64_t>{1, 1}), std::vector{0.5, 0.5}) ==
        Approx(0.0));
  CHECK(kl_finite(CategoricalCounts(std::vector<std::int64_t>{2, 0}), std::vector{0.5, 0.5}) ==
        Approx(std::log(2.0)));
  CHECK(throws_code([] { kl_finite(CategoricalCounts(std::vector<std::int64_t>{1, 1}), std::vector{1.0, 0.0}); },
                    ErrorCode::AbsoluteContinuityViolated));
  CHECK(throws_code([] { tv_finite(CategoricalCounts(std::vector<std::int64_t>{1, 1}), std::vector{0.2, 0.3, 0.5}); },
                    ErrorCode::DimensionMismatch));
  // KL of counts with a zero category at p_j = 0 is fine
  CHECK(kl_finite(CategoricalCounts(std::vector<std::int64_t>{3, 0}), std::vector{1.0, 0.0}) == Approx(0.0));

  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> C(0, 6);
  std::uniform_real_distribution<double> U(0.05, 1);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<std::int64_t> c(4);
    std::vector<double> p(4);
    double sp = 0;
    for (int j = 0; j < 4; ++j) {
      c[std::size_t(j)] = C(rng);
      p[std::size_t(j)] = U(rng);
      sp += p[std::size_t(j)];
    }
    if (c[0] + c[1] + c[2] + c[3] == 0) c[0] = 1;
    for (auto& v : p) v /= sp;
    double tot = double(c[0] + c[1] + c[2] + c[3]), tv = 0;
    for (int j = 0; j < 4; ++j) tv += 0.5 * std::abs(double(c[std::size_t(j)]) / tot - p[std::size_t(j)]);
    CategoricalCounts cc(c);
    CHECK(tv_finite(cc, p) == Approx(tv).epsilon(1e-14));
    CHECK(kl_finite(cc, p) >= 0);
  }
}

TEST_CASE("G_{k,t}") {
  std::vector<double> p3{0.2, 0.3, 0.5};
  for (int t = 1; t <= 6; ++t) CHECK(G_k_t(0.0, p3, t) == Approx(1.0).epsilon(1e-13));
  for (double lam : {0.1, 0.5, 1.0}) CHECK(G_k_t(lam, p3, 1) == Approx(1 + 2 * lam).epsilon(1e-14));

  // exhaustive composition enumeration
  auto enumerate = [](double lam, const std::vector<double>& p, int t) {
    const int k = int(p.size());
    std::vector<int> x(static_cast<std::size_t>(k));
    double total = 0;
    std::function<void(int, int)> rec = [&](int j, int left) {
      if (j == k - 1) {
        x[std::size_t(j)] = left;
        double term = std::tgamma(t + 1.0);
        for (int i = 0; i < k; ++i) {
          double a = lam * x[std::size_t(i)] / t + (1 - lam) * p[std::size_t(i)];
          term *= std::pow(a, x[std::size_t(i)]) / std::tgamma(x[std::size_t(i)] + 1.0);
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
  };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.05, 1);
  double worst = 0;
  for (int k = 2; k <= 3; ++k)
    for (int t = 1; t <= 6; ++t) {
      std::vector<double> p(static_cast<std::size_t>(k));
      double s = 0;
      for (auto& v : p) s += (v = U(rng));
      for (auto& v : p) v /= s;
      std::vector<double> vals;
      for (int i = 0; i <= 10; ++i) {
        double lam = i / 10.0;
        double e = enumerate(lam, p, t);
        worst = std::max(worst, std::abs(G_k_t(lam, p, t) - e) / e);
        worst = std::max(worst, std::abs(G_k_t_series(lam, k, t) - e) / e);
        vals.push_back(e);
      }
      for (std::size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] >= vals[i - 1]);
      for (std::size_t i = 1; i + 1 < vals.size(); ++i)
        CHECK(vals[i + 1] - 2 * vals[i] + vals[i - 1] >= -1e-12);
    }
  CHECK(worst <= 1e-12);
  CHECK(G_k_t_series(0.4, 3, 5) == Approx(G_k_t(0.4, std::vector{0.1, 0.6, 0.3}, 5)).epsilon(1e-13));
  // large t stays finite through the tail cut
  CHECK(std::isfinite(log_G_k_t_series(std::sqrt(3.0 / 1e5), 3, 50000)));
}

TEST_CASE("optimal transport") {
  Eigen::MatrixXd c(2, 2);
  c << 0, 1, 1, 0;
  CHECK(ot_cost_discrete(std::vector{1.0, 0.0}, std::vector{0.0, 1.0}, c) == Approx(1.0));
  auto same = ot_solve(std::vector{0.3, 0.7}, std::vector{0.3, 0.7}, c);
  CHECK(same.value == Approx(0.0));
  CHECK(same.plan(0, 1) == Approx(0.0));
  CHECK(throws_code([&] { ot_solve(std::vector{0.3, 0.6}, std::vector{0.3, 0.7}, c); },
                    ErrorCode::UnbalancedMarginals));

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(0, 1);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd m(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) m(i, j) = U(rng);
    std::vector<double> w(5, 0.2);
    std::vector<int> perm{0, 1, 2, 3, 4};
    double best = 1e300;
    do {
      double s = 0;
      for (int i = 0; i < 5; ++i) s += m(i, perm[std::size_t(i)]) * 0.2;
      best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    worst = std::max(worst, std::abs(ot_cost_discrete(w, w, m) - best));
  }
  CHECK(worst <= 1e-9);

  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4, k = 3;
    Eigen::MatrixXd m(n, k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) m(i, j) = U(rng);
    std::vector<double> a(n), b(k);
    double sa = 0, sb = 0;
    for (auto& v : a) sa += (v = U(rng));
    for (auto& v : b) sb += (v = U(rng));
    for (auto& v : a) v /= sa;
    for (auto& v : b) v /= sb;
    auto r = ot_solve(a, b, m);
    CHECK(r.duality_gap <= 1e-9 * m.maxCoeff());
    CHECK(r.dual_violation <= 1e-9);
    // relabeling the support points leaves the value unchanged
    Eigen::MatrixXd mr = m.colwise().reverse();
    std::vector<double> ar(a.rbegin(), a.rend());
    CHECK(ot_solve(ar, b, mr).value == Approx(r.value).epsilon(1e-10));
  }
}

TEST_CASE("OT on empirical samples") {
  auto cost = CostSpec::metric_power(1.0, 10.0);
  auto x = values({0, 1, 1, 3}), y = values({2, 2, 5});
  CHECK(ot_cost_empirical(x, y, cost) == Approx(w1_1d(x, y)).epsilon(1e-10));
}

TEST_CASE("W1 on the line") {
  CHECK(w1_1d(values({0, 1}), values({0.5})) == Approx(0.5));
  CHECK(w1_1d(values({2, -1, 4}), values({4, 2, -1})) == Approx(0.0));
  std::mt19937_64 rng(9);
  std::normal_distribution<double> N(0, 1);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(std::size_t(1 + trial % 30)), b(a.size());
    for (auto& v : a) v = N(rng);
    for (auto& v : b) v = 2 * N(rng);
    double oracle = 0;
    auto sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    for (std::size_t i = 0; i < a.size(); ++i) oracle += std::abs(sa[i] - sb[i]);
    oracle /= double(a.size());
    worst = std::max(worst, std::abs(w1_1d(values(a), values(b)) - oracle));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("smoothed estimators") {
  auto x = values({0.0});
  CHECK(smoothed_estimators_1d(x, nullptr, 1.0, SmoothedKind::Entropy) ==
        Approx(1.4189385332046727).epsilon(1e-8));
  auto y = values({1.5});
  CHECK(smoothed_estimators_1d(x, &y, 1.0, SmoothedKind::W1) == Approx(1.5).epsilon(1e-7));
  auto z = values({0.3, -0.2});
  CHECK(smoothed_estimators_1d(z, &z, 0.5, SmoothedKind::TV) == Approx(0.0).epsilon(1e-12));
  CHECK(smoothed_estimators_1d(z, &z, 0.5, SmoothedKind::W1) == Approx(0.0).epsilon(1e-12));
  // TV between N(0,1) and N(1,1): 2 Phi(1/2) - 1
  double tv = std::erf(0.5 / std::numbers::sqrt2);
  CHECK(smoothed_estimators_1d(x, &y, 1.0, SmoothedKind::TV) ==
        Approx(std::erf(0.75 / std::numbers::sqrt2)).epsilon(1e-7));
  SmoothedReference ref;
  ref.pdf = [](double u) { return std::exp(-0.5 * (u - 1) * (u - 1)) / std::sqrt(2 * std::numbers::pi); };
  ref.cdf = [](double u) { return 0.5 * std::erfc(-(u - 1) / std::numbers::sqrt2); };
  CHECK(smoothed_estimators_1d(x, ref, 1.0, SmoothedKind::TV) == Approx(tv).epsilon(1e-7));
  CHECK(smoothed_estimators_1d(x, ref, 1.0, SmoothedKind::W1) == Approx(1.0).epsilon(1e-7));
  auto two_d = EmpiricalSample::from_points({{0.0, 1.0}});
  CHECK(throws_code([&] { smoothed_estimators_1d(two_d, nullptr, 1.0, SmoothedKind::Entropy); },
                    ErrorCode::UnsupportedDimension));
}

TEST_CASE("Rademacher complexity") {
  Eigen::MatrixXi one(1, 1);
  one << 1;
  CHECK(rademacher_exact(one).value == Approx(1.0));
  Eigen::MatrixXi two(2, 1);
  two << 1, 1;
  CHECK(rademacher_exact(two).value == Approx(0.5));
  // all 2^t dichotomies
  const int t = 4;
  Eigen::MatrixXi all(t, 1 << t);
  for (int f = 0; f < (1 << t); ++f)
    for (int i = 0; i < t; ++i) all(i, f) = (f >> i) & 1 ? 1 : -1;
  CHECK(rademacher_exact(all).value == Approx(1.0));
  Eigen::MatrixXi big = Eigen::MatrixXi::Ones(21, 2);
  CHECK(throws_code([&] { rademacher_exact(big); }, ErrorCode::ExactTooLarge));
  auto mc = rademacher_monte_carlo(all, 20000, 3);
  CHECK(mc.value == Approx(1.0));
  Eigen::MatrixXi mixed(10, 3);
  std::mt19937_64 rng(10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 3; ++j) mixed(i, j) = (rng() & 1) ? 1 : -1;
  auto ex = rademacher_exact(mixed);
  auto est = rademacher_monte_carlo(mixed, 40000, 4);
  CHECK(std::abs(est.value - ex.value) <= 4 * est.standard_error);
  CHECK(est.standard_error > 0);
}
