#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "divcs/error.hpp"
#include "divcs/estimators.hpp"
#include "divcs/validation.hpp"

namespace divcs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool outside(const IntervalRecord& r, double truth) {
  return truth < r.lower || truth > r.upper;
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::int64_t draw_category(std::mt19937_64& rng, const std::vector<double>& p) {
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double c = 0;
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    c += p[j];
    if (u < c) return std::int64_t(j);
  }
  return std::int64_t(p.size() - 1);
}

struct Defaults {
  const char* name;
  std::int64_t R, T;
  bool two_sample;
};

constexpr Defaults kScenarios[] = {
    {"dkw-uniform", 2000, 5000, false}, {"ks-null", 1000, 2000, true},
    {"mmd-null", 200, 300, true},       {"tv-finite", 500, 5000, false},
    {"kl-finite", 500, 2000, false},    {"ot-finite", 500, 2000, true},
    {"mean-gauss", 500, 5000, false},   {"smoothed-w1", 50, 200, false},
    {"loo-audit", 0, 5, false},         {"reverse-ville", 5000, 2000, false},
    {"upward-bias", 5000, 80, false},
};

const Defaults& defaults(const std::string& name) {
  for (const auto& d : kScenarios)
    if (name == d.name) return d;
  fail(ErrorCode::InvalidArgument, "unknown scenario '" + name + "'");
}

// Exact estimate after n observations, with a bound on how far it can move.
class LazyEstimate {
 public:
  virtual ~LazyEstimate() = default;
  virtual double at(std::int64_t n) = 0;
  // Upper bound on |estimate(m) - estimate(n)| for m > n.
  virtual double drift(std::int64_t n, std::int64_t m) = 0;
};

struct Path {
  std::vector<std::int64_t> t, s;  // counts after n observations, index n
  std::vector<double> gamma, kappa;
};

// Lipschitz drift in the total variation between empirical measures.
double tv_drift(const Path& p, std::int64_t n, std::int64_t m, double L) {
  double d = 0;
  if (p.t[std::size_t(m)] > 0)
    d += double(p.t[std::size_t(m)] - p.t[std::size_t(n)]) / double(p.t[std::size_t(m)]);
  if (p.s[std::size_t(m)] > 0)
    d += double(p.s[std::size_t(m)] - p.s[std::size_t(n)]) / double(p.s[std::size_t(m)]);
  return L * d;
}

class SortedPrefix {
 public:
  void reset() { buf_.clear(); }
  void extend(const std::vector<double>& src, std::size_t n) {
    std::size_t old = buf_.size();
    if (n <= old) return;
    buf_.insert(buf_.end(), src.begin() + std::ptrdiff_t(old), src.begin() + std::ptrdiff_t(n));
    std::sort(buf_.begin() + std::ptrdiff_t(old), buf_.end());
    std::inplace_merge(buf_.begin(), buf_.begin() + std::ptrdiff_t(old), buf_.end());
  }
  const std::vector<double>& values() const { return buf_; }

 private:
  std::vector<double> buf_;
};

// Splits a replicate's observation list into per-stream arrays.
struct Streams {
  std::vector<double> xs, ys;
  std::vector<std::int64_t> xc, yc;
  std::vector<std::vector<double>> xv, yv;
};

Streams split(const std::vector<std::pair<Stream, Observation>>& obs) {
  Streams s;
  for (const auto& [w, o] : obs) {
    bool x = w == Stream::X;
    if (auto d = std::get_if<double>(&o)) (x ? s.xs : s.ys).push_back(*d);
    if (auto c = std::get_if<std::int64_t>(&o)) (x ? s.xc : s.yc).push_back(*c);
    if (auto v = std::get_if<std::vector<double>>(&o)) (x ? s.xv : s.yv).push_back(*v);
  }
  return s;
}

class KsOneLazy : public LazyEstimate {
 public:
  KsOneLazy(Streams d, const Path& p, std::function<double(double)> cdf)
      : d_(std::move(d)), p_(p), cdf_(std::move(cdf)) {}
  double at(std::int64_t n) override {
    buf_.extend(d_.xs, std::size_t(p_.t[std::size_t(n)]));
    return ks_one_sample_sorted(buf_.values(), cdf_);
  }
  double drift(std::int64_t n, std::int64_t m) override { return tv_drift(p_, n, m, 1.0); }

 private:
  Streams d_;
  const Path& p_;
  std::function<double(double)> cdf_;
  SortedPrefix buf_;
};

class KsTwoLazy : public LazyEstimate {
 public:
  KsTwoLazy(Streams d, const Path& p) : d_(std::move(d)), p_(p) {}
  double at(std::int64_t n) override {
    bx_.extend(d_.xs, std::size_t(p_.t[std::size_t(n)]));
    by_.extend(d_.ys, std::size_t(p_.s[std::size_t(n)]));
    return ks_two_sample_sorted(bx_.values(), by_.values());
  }
  double drift(std::int64_t n, std::int64_t m) override { return tv_drift(p_, n, m, 1.0); }

 private:
  Streams d_;
  const Path& p_;
  SortedPrefix bx_, by_;
};

class MmdLazy : public LazyEstimate {
 public:
  MmdLazy(Streams d, const Path& p, const KernelSpec& k)
      : d_(std::move(d)), p_(p), acc_(k, 1), L_(2 * std::sqrt(k.bound())) {}
  double at(std::int64_t n) override {
    while (std::int64_t(acc_.t()) < p_.t[std::size_t(n)]) acc_.add_x(d_.xv[acc_.t()]);
    while (std::int64_t(acc_.s()) < p_.s[std::size_t(n)]) acc_.add_y(d_.yv[acc_.s()]);
    return acc_.value();
  }
  double drift(std::int64_t n, std::int64_t m) override { return tv_drift(p_, n, m, L_); }

 private:
  Streams d_;
  const Path& p_;
  MmdAccumulator acc_;
  double L_;
};

// Categorical kinds: TV, KL (one-sample) and OT (two-sample).
class CountsLazy : public LazyEstimate {
 public:
  CountsLazy(Streams d, const Path& p, const ConfSeqConfig& cfg)
      : d_(std::move(d)), p_(p), cfg_(cfg) {
    std::size_t k = cfg.kind == DivergenceKind::OtFinite ? std::size_t(cfg.cost.rows())
                                                         : cfg.p.size();
    cx_.assign(k, 0);
    cy_.assign(k, 0);
  }
  double at(std::int64_t n) override {
    while (tx_ < p_.t[std::size_t(n)]) ++cx_[std::size_t(d_.xc[std::size_t(tx_++)])];
    while (ty_ < p_.s[std::size_t(n)]) ++cy_[std::size_t(d_.yc[std::size_t(ty_++)])];
    if (cfg_.kind == DivergenceKind::TvFinite) return tv_finite(CategoricalCounts(cx_), cfg_.p);
    if (cfg_.kind == DivergenceKind::KlFinite) return kl_finite(CategoricalCounts(cx_), cfg_.p);
    std::vector<double> a(cx_.size()), b(cy_.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      a[j] = double(cx_[j]) / double(tx_);
      b[j] = double(cy_[j]) / double(ty_);
    }
    return ot_cost_discrete(a, b, cfg_.cost);
  }
  double drift(std::int64_t n, std::int64_t m) override {
    switch (cfg_.kind) {
      case DivergenceKind::TvFinite: return tv_drift(p_, n, m, 1.0);
      case DivergenceKind::OtFinite: return tv_drift(p_, n, m, cfg_.Delta);
      default: return kInf;
    }
  }

 private:
  Streams d_;
  const Path& p_;
  const ConfSeqConfig& cfg_;
  std::vector<std::int64_t> cx_, cy_;
  std::int64_t tx_ = 0, ty_ = 0;
};

class MeanLazy : public LazyEstimate {
 public:
  MeanLazy(Streams d, const Path& p, const ConfSeqConfig& cfg)
      : d_(std::move(d)), p_(p), cfg_(cfg), sum_(cfg.dim, 0.0) {}
  double at(std::int64_t n) override {
    while (t_ < p_.t[std::size_t(n)]) {
      const auto& v = d_.xv[std::size_t(t_++)];
      for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += v[i];
    }
    double n2 = 0;
    for (std::size_t i = 0; i < sum_.size(); ++i) {
      double d = sum_[i] / double(t_) - cfg_.mu0[i];
      n2 += d * d;
    }
    return std::sqrt(n2);
  }
  double drift(std::int64_t, std::int64_t) override { return kInf; }

 private:
  Streams d_;
  const Path& p_;
  const ConfSeqConfig& cfg_;
  std::vector<double> sum_;
  std::int64_t t_ = 0;
};

// First n (1-based) with truth outside the interval, or 0. Exact estimates
// are computed only where the drift bound cannot rule a violation out.
std::int64_t first_violation(LazyEstimate& est, const Path& p, double truth, double cap,
                             bool two) {
  const auto N = std::int64_t(p.t.size()) - 1;
  auto ready = [&](std::int64_t n) {
    return p.t[std::size_t(n)] > 0 && (!two || p.s[std::size_t(n)] > 0);
  };
  // before both samples exist the interval is the vacuous [0, cap]
  std::int64_t n = 1;
  for (; n <= N && !ready(n); ++n)
    if (truth < 0 || truth > cap) return n;
  if (n > N) return 0;
  auto exact = [&](std::int64_t k) {
    double e = est.at(k);
    auto r = make_record(p.t[std::size_t(k)], p.s[std::size_t(k)], e, p.gamma[std::size_t(k)],
                         p.kappa[std::size_t(k)], cap);
    return std::make_pair(e, outside(r, truth));
  };
  auto [e, bad] = exact(n);
  if (bad) return n;
  for (std::int64_t m = n + 1; m <= N; ++m) {
    double d = est.drift(n, m);
    if (std::isfinite(d)) {
      double lower_max = std::max(0.0, e + d - p.gamma[std::size_t(m)]);
      double upper_min = std::max(e - d, std::min(cap, e - d + p.kappa[std::size_t(m)]));
      if (lower_max <= truth && upper_min >= truth) continue;
    }
    n = m;
    std::tie(e, bad) = exact(n);
    if (bad) return n;
  }
  return 0;
}

Path build_path(const ScenarioSetup& setup) {
  const auto& cfg = setup.config;
  Path p;
  const auto N = std::size_t(setup.steps);
  p.t.assign(N + 1, 0);
  p.s.assign(N + 1, 0);
  p.gamma.assign(N + 1, kInf);
  p.kappa.assign(N + 1, kInf);
  const bool two = is_two_sample(cfg.kind);
  std::optional<KlFiniteBoundary> kl;
  if (cfg.kind == DivergenceKind::KlFinite)
    kl.emplace(cfg.delta, cfg.stitching, std::int64_t(cfg.p.size()), cfg.lambda_schedule,
               cfg.kl_factor);
  for (std::size_t n = 1; n <= N; ++n) {
    bool x = !two || (n % 2 == 1);  // alternating X, Y, X, ... for two-sample kinds
    p.t[n] = p.t[n - 1] + (x ? 1 : 0);
    p.s[n] = p.s[n - 1] + (x ? 0 : 1);
    const auto t = p.t[n], s = p.s[n];
    switch (cfg.kind) {
      case DivergenceKind::Dkw:
        p.gamma[n] = dkw_boundary(t, cfg.delta, cfg.stitching);
        p.kappa[n] = kappa_upper(t, cfg.delta, cfg.stitching, 1.0);
        break;
      case DivergenceKind::KsTwoSample:
        if (s > 0) {
          auto r = ks_two_sample_boundary(t, s, cfg.delta, cfg.stitching, cfg.mode);
          p.gamma[n] = r.gamma;
          p.kappa[n] = r.kappa;
        }
        break;
      case DivergenceKind::Mmd:
        if (s > 0) {
          auto r = mmd_boundary(t, s, cfg.delta, cfg.stitching, cfg.kernel.bound(), cfg.mode);
          p.gamma[n] = r.gamma;
          p.kappa[n] = r.kappa;
        }
        break;
      case DivergenceKind::OtFinite:
        if (s > 0) {
          auto r = ot_boundary(t, s, cfg.delta, cfg.stitching, cfg.Delta, cfg.bias, cfg.mode);
          p.gamma[n] = r.gamma;
          p.kappa[n] = r.kappa;
        }
        break;
      case DivergenceKind::TvFinite:
        p.gamma[n] = tv_finite_boundary(t, cfg.delta, cfg.stitching,
                                        std::int64_t(cfg.p.size()), cfg.mode);
        p.kappa[n] = kappa_upper(t, cfg.delta, cfg.stitching, 1.0);
        break;
      case DivergenceKind::KlFinite: p.gamma[n] = (*kl)(t); break;
      case DivergenceKind::Mean:
        p.gamma[n] = p.kappa[n] = mean_boundary(t, cfg.delta, cfg.stitching, *cfg.envelope,
                                               int(cfg.dim), cfg.gamma_cov);
        break;
    }
  }
  return p;
}

std::unique_ptr<LazyEstimate> make_lazy(const ConfSeqConfig& cfg, Streams d, const Path& p) {
  switch (cfg.kind) {
    case DivergenceKind::Dkw: return std::make_unique<KsOneLazy>(std::move(d), p, cfg.cdf);
    case DivergenceKind::KsTwoSample: return std::make_unique<KsTwoLazy>(std::move(d), p);
    case DivergenceKind::Mmd: return std::make_unique<MmdLazy>(std::move(d), p, cfg.kernel);
    case DivergenceKind::OtFinite:
    case DivergenceKind::TvFinite:
    case DivergenceKind::KlFinite: return std::make_unique<CountsLazy>(std::move(d), p, cfg);
    case DivergenceKind::Mean: return std::make_unique<MeanLazy>(std::move(d), p, cfg);
  }
  return nullptr;
}

SimReport run_monitor_scenario(const std::string& name, const ScenarioParams& params) {
  auto start = std::chrono::steady_clock::now();
  ScenarioSetup setup = scenario_setup(name, params);
  const auto& dd = defaults(name);
  const std::int64_t R = params.R > 0 ? params.R : dd.R;
  Path path = build_path(setup);
  SimReport rep;
  rep.scenario = name;
  rep.horizon = params.T > 0 ? params.T : dd.T;
  rep.seed = params.seed;
  rep.target = setup.target;
  rep.first_violation.assign(std::size_t(R), 0);
  const double cap = setup.config.cap();
  const bool two = is_two_sample(setup.config.kind);
  parallel_for(R, [&](std::int64_t r) {
    std::mt19937_64 rng(replicate_seed(params.seed, std::uint64_t(r)));
    std::vector<std::pair<Stream, Observation>> obs;
    obs.reserve(std::size_t(setup.steps));
    for (std::int64_t n = 0; n < setup.steps; ++n) obs.push_back(setup.generator(rng, n));
    auto est = make_lazy(setup.config, split(obs), path);
    rep.first_violation[std::size_t(r)] = first_violation(*est, path, setup.truth, cap, two);
  });
  rep.finalize();
  rep.wall_time_s = elapsed(start);
  return rep;
}

// Smoothed W1 against N(0, 1): P * K_sigma = N(0, 1 + sigma^2).
SimReport run_smoothed_w1(const ScenarioParams& params) {
  auto start = std::chrono::steady_clock::now();
  const auto& dd = defaults("smoothed-w1");
  const std::int64_t R = params.R > 0 ? params.R : dd.R;
  const std::int64_t T = params.T > 0 ? params.T : dd.T;
  const double sigma = 1.0, tau2 = 1.0;
  const StitchingFunctions st;
  std::vector<double> gamma(std::size_t(T + 1));
  for (std::int64_t t = 1; t <= T; ++t)
    gamma[std::size_t(t)] =
        smoothed_boundary(t, params.delta, st, 1, sigma, tau2, SmoothedKind::W1);
  const double sd = std::sqrt(1 + sigma * sigma);
  SmoothedReference ref;
  ref.cdf = [sd](double u) { return 0.5 * std::erfc(-u / (sd * std::numbers::sqrt2)); };
  ref.pdf = [sd](double u) {
    return std::exp(-0.5 * u * u / (sd * sd)) / (sd * std::sqrt(2 * std::numbers::pi));
  };
  ref.lo = -12 * sd;
  ref.hi = 12 * sd;
  QuadratureSpec quad;
  quad.abs_tol = 1e-7;

  SimReport rep;
  rep.scenario = "smoothed-w1";
  rep.horizon = T;
  rep.seed = params.seed;
  rep.target = params.delta;
  rep.first_violation.assign(std::size_t(R), 0);
  parallel_for(R, [&](std::int64_t r) {
    std::mt19937_64 rng(replicate_seed(params.seed, std::uint64_t(r)));
    std::normal_distribution<double> N(0.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(T)), absmax(std::size_t(T + 1), 0.0);
    for (std::int64_t i = 0; i < T; ++i) {
      x[std::size_t(i)] = N(rng);
      absmax[std::size_t(i + 1)] = std::max(absmax[std::size_t(i)], std::abs(x[std::size_t(i)]));
    }
    auto exact = [&](std::int64_t t) {
      auto s = EmpiricalSample::from_values(
          std::vector<double>(x.begin(), x.begin() + std::ptrdiff_t(t)));
      return smoothed_estimators_1d(s, ref, sigma, SmoothedKind::W1, quad);
    };
    // W1(P_m, P_n) <= ((m-n)/m) * 2 max|x| bounds the drift of the smoothed W1
    std::int64_t n = 1;
    double e = exact(n);
    if (e > gamma[1]) {
      rep.first_violation[std::size_t(r)] = 1;
      return;
    }
    for (std::int64_t m = 2; m <= T; ++m) {
      double d = 2 * absmax[std::size_t(m)] * double(m - n) / double(m);
      if (e + d <= gamma[std::size_t(m)]) continue;
      n = m;
      e = exact(n);
      if (e > gamma[std::size_t(n)]) {
        rep.first_violation[std::size_t(r)] = n;
        return;
      }
    }
  });
  rep.finalize();
  rep.wall_time_s = elapsed(start);
  return rep;
}

SimReport run_loo(const ScenarioParams& params) {
  auto start = std::chrono::steady_clock::now();
  SimReport rep;
  rep.scenario = "loo-audit";
  rep.horizon = params.T > 0 ? std::min<std::int64_t>(params.T, 5) : 5;
  rep.seed = params.seed;
  for (AuditKind k : {AuditKind::TV, AuditKind::KL, AuditKind::KS, AuditKind::W1,
                      AuditKind::MMD, AuditKind::OT, AuditKind::UStat})
    for (int a : {2, 3}) {
      auto res = leave_one_out_audit(k, a, int(rep.horizon));
      rep.first_violation.push_back(res.passed ? 0 : 1);
    }
  rep.finalize();
  rep.asserted = true;
  rep.passed = rep.violation_count == 0;
  rep.wall_time_s = elapsed(start);
  return rep;
}

SimReport run_ville(const ScenarioParams& params) {
  const auto& dd = defaults("reverse-ville");
  auto v = reverse_ville_check(VilleProcess::AbsMean, 10, 1.0, params.R > 0 ? params.R : dd.R,
                               params.seed, params.T > 0 ? params.T : dd.T);
  v.sim.scenario = "reverse-ville";
  return v.sim;
}

SimReport run_bias(const ScenarioParams& params) {
  auto start = std::chrono::steady_clock::now();
  const auto& dd = defaults("upward-bias");
  const std::int64_t R = params.R > 0 ? params.R : dd.R;
  SimReport rep;
  rep.scenario = "upward-bias";
  rep.horizon = 80;
  rep.seed = params.seed;
  for (auto e : {BiasEstimator::KS, BiasEstimator::TV, BiasEstimator::MMD, BiasEstimator::KL,
                 BiasEstimator::MMDUStat}) {
    auto b = bias_direction_check(e, 0.0, {10, 20, 40, 80}, R, params.seed);
    rep.first_violation.push_back(b.passed ? 0 : 1);
  }
  rep.finalize();
  rep.asserted = true;
  rep.passed = rep.violation_count == 0;
  rep.replications = R;
  rep.wall_time_s = elapsed(start);
  return rep;
}

}  // namespace

SimReport coverage_sim(const ConfSeqConfig& config, double truth, const StreamGenerator& gen,
                       std::int64_t steps, std::int64_t R, std::uint64_t seed, double target) {
  require(steps >= 1 && R >= 1, ErrorCode::InvalidArgument, "need steps >= 1 and R >= 1");
  auto start = std::chrono::steady_clock::now();
  config.validate();
  SimReport rep;
  rep.scenario = to_string(config.kind);
  rep.horizon = steps;
  rep.seed = seed;
  rep.target = target;
  rep.first_violation.assign(std::size_t(R), 0);
  parallel_for(R, [&](std::int64_t r) {
    std::mt19937_64 rng(replicate_seed(seed, std::uint64_t(r)));
    ConfSeqState state(config);
    for (std::int64_t n = 0; n < steps; ++n) {
      auto [w, obs] = gen(rng, n);
      auto rec = state.update(obs, w);
      if (outside(rec, truth)) {
        rep.first_violation[std::size_t(r)] = n + 1;
        // keep drawing so every replicate consumes the same stream
        for (std::int64_t m = n + 1; m < steps; ++m) gen(rng, m);
        return;
      }
    }
  });
  rep.finalize();
  rep.wall_time_s = elapsed(start);
  return rep;
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> v;
  for (const auto& d : kScenarios) v.emplace_back(d.name);
  return v;
}

bool is_scenario(const std::string& name) {
  for (const auto& d : kScenarios)
    if (name == d.name) return true;
  return false;
}

ScenarioSetup scenario_setup(const std::string& name, const ScenarioParams& params) {
  const auto& dd = defaults(name);
  require(params.delta > 0 && params.delta < 1, ErrorCode::InvalidArgument,
          "delta must lie in (0, 1)");
  const std::int64_t T = params.T > 0 ? params.T : dd.T;
  ScenarioSetup s;
  s.config.delta = params.delta;
  s.steps = dd.two_sample ? 2 * T : T;
  s.target = params.delta;
  auto alternate = [](std::int64_t n) { return n % 2 == 0 ? Stream::X : Stream::Y; };
  if (name == "dkw-uniform") {
    s.config.kind = DivergenceKind::Dkw;
    s.config.cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
    s.generator = [](std::mt19937_64& rng, std::int64_t) {
      return std::make_pair(Stream::X,
                            Observation(std::uniform_real_distribution<double>(0, 1)(rng)));
    };
  } else if (name == "ks-null") {
    s.config.kind = DivergenceKind::KsTwoSample;
    s.target = params.delta / 2;
    s.generator = [alternate](std::mt19937_64& rng, std::int64_t n) {
      return std::make_pair(alternate(n),
                            Observation(std::uniform_real_distribution<double>(0, 1)(rng)));
    };
  } else if (name == "mmd-null") {
    s.config.kind = DivergenceKind::Mmd;
    s.config.kernel = KernelSpec::gaussian(1.0);
    s.target = params.delta / 2;
    s.generator = [alternate](std::mt19937_64& rng, std::int64_t n) {
      double v = std::normal_distribution<double>(0, 1)(rng);
      return std::make_pair(alternate(n), Observation(std::vector<double>{v}));
    };
  } else if (name == "tv-finite") {
    s.config.kind = DivergenceKind::TvFinite;
    s.config.mode = Mode::AsStated;
    s.config.p = {0.25, 0.25, 0.25, 0.25};
    auto p = s.config.p;
    s.generator = [p](std::mt19937_64& rng, std::int64_t) {
      return std::make_pair(Stream::X, Observation(draw_category(rng, p)));
    };
  } else if (name == "kl-finite") {
    s.config.kind = DivergenceKind::KlFinite;
    s.config.p = {0.2, 0.3, 0.5};
    auto p = s.config.p;
    s.generator = [p](std::mt19937_64& rng, std::int64_t) {
      return std::make_pair(Stream::X, Observation(draw_category(rng, p)));
    };
  } else if (name == "ot-finite") {
    s.config.kind = DivergenceKind::OtFinite;
    s.config.cost.resize(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s.config.cost(i, j) = std::abs(i - j);
    s.config.Delta = 2.0;
    // E W1(P_t, P) <= sum_x sqrt(F(x)(1-F(x))/t) <= 1/sqrt(t) on this alphabet
    s.config.bias = root_min_bias(2.0);
    const std::vector<double> P{0.5, 0.3, 0.2}, Q{0.2, 0.3, 0.5};
    s.truth = ot_cost_discrete(P, Q, s.config.cost);
    s.generator = [P, Q, alternate](std::mt19937_64& rng, std::int64_t n) {
      Stream w = alternate(n);
      return std::make_pair(w, Observation(draw_category(rng, w == Stream::X ? P : Q)));
    };
  } else if (name == "mean-gauss") {
    s.config.kind = DivergenceKind::Mean;
    s.config.dim = 2;
    s.config.envelope = CgfEnvelope::sub_gaussian(0.0, 1.0);
    s.config.gamma_cov = 0.5;
    s.config.mu0 = {0.0, 0.0};
    s.generator = [](std::mt19937_64& rng, std::int64_t) {
      std::normal_distribution<double> N(0, 1);
      double a = N(rng);
      double b = N(rng);
      return std::make_pair(Stream::X, Observation(std::vector<double>{a, b}));
    };
  } else {
    fail(ErrorCode::InvalidArgument, "scenario '" + name + "' has no monitor setup");
  }
  s.truth += params.truth_shift;
  return s;
}

SimReport run_scenario(const std::string& name, const ScenarioParams& params) {
  defaults(name);
  if (name == "smoothed-w1") return run_smoothed_w1(params);
  if (name == "loo-audit") return run_loo(params);
  if (name == "reverse-ville") return run_ville(params);
  if (name == "upward-bias") return run_bias(params);
  return run_monitor_scenario(name, params);
}

}  // namespace divcs
