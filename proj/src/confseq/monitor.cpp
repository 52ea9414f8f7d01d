#include "divcs/monitor.hpp"

#include <algorithm>
#include <cmath>

#include "divcs/error.hpp"
#include "divcs/estimators.hpp"

namespace divcs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KindName {
  DivergenceKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {DivergenceKind::Dkw, "dkw"},          {DivergenceKind::KsTwoSample, "ks2"},
    {DivergenceKind::Mmd, "mmd"},          {DivergenceKind::OtFinite, "ot"},
    {DivergenceKind::TvFinite, "tv"},      {DivergenceKind::KlFinite, "kl"},
    {DivergenceKind::Mean, "mean"},
};

void check_probability(const std::vector<double>& p) {
  require(p.size() >= 2, ErrorCode::InvalidArgument, "p needs at least two categories");
  double s = 0;
  for (double v : p) {
    require(v >= 0 && std::isfinite(v), ErrorCode::InvalidArgument, "p must be >= 0");
    s += v;
  }
  require(std::abs(s - 1) <= 1e-12, ErrorCode::InvalidArgument, "p must sum to 1");
}

}  // namespace

const char* to_string(DivergenceKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  return "unknown";
}

std::optional<DivergenceKind> parse_kind(const std::string& name) {
  for (const auto& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  return std::nullopt;
}

bool is_two_sample(DivergenceKind kind) {
  return kind == DivergenceKind::KsTwoSample || kind == DivergenceKind::Mmd ||
         kind == DivergenceKind::OtFinite;
}

void ConfSeqConfig::validate() const {
  require(delta > 0 && delta < 1, ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  switch (kind) {
    case DivergenceKind::Dkw:
      require(bool(cdf), ErrorCode::InvalidArgument, "dkw needs a reference cdf");
      break;
    case DivergenceKind::KsTwoSample: break;
    case DivergenceKind::Mmd:
      require(kernel.bound() > 0 && std::isfinite(kernel.bound()), ErrorCode::InvalidArgument,
              "mmd needs a finite kernel bound B > 0");
      require(dim >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
      break;
    case DivergenceKind::OtFinite:
      require(cost.rows() >= 2 && cost.rows() == cost.cols(), ErrorCode::InvalidArgument,
              "ot needs a square cost matrix over the alphabet");
      require(cost.minCoeff() >= 0, ErrorCode::InvalidArgument, "costs must be >= 0");
      require(Delta > 0 && Delta >= cost.maxCoeff(), ErrorCode::InvalidArgument,
              "Delta must bound the cost");
      require(bool(bias), ErrorCode::InvalidArgument, "ot needs a bias bound");
      break;
    case DivergenceKind::TvFinite:
    case DivergenceKind::KlFinite:
      check_probability(p);
      require(kl_factor > 0, ErrorCode::InvalidArgument, "KL factor must be > 0");
      break;
    case DivergenceKind::Mean:
      require(envelope.has_value(), ErrorCode::InvalidArgument, "mean needs an envelope");
      require(dim >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
      require(mu0.empty() || mu0.size() == dim, ErrorCode::DimensionMismatch,
              "mu0 has the wrong dimension");
      covering_number(int(dim), gamma_cov);
      break;
  }
}

double ConfSeqConfig::cap() const {
  switch (kind) {
    case DivergenceKind::Dkw:
    case DivergenceKind::KsTwoSample:
    case DivergenceKind::TvFinite: return 1.0;
    case DivergenceKind::Mmd: return 2 * std::sqrt(kernel.bound());
    case DivergenceKind::OtFinite: return Delta;
    case DivergenceKind::KlFinite:
    case DivergenceKind::Mean: return kInf;
  }
  return kInf;
}

IntervalRecord make_record(std::int64_t t, std::int64_t s, double estimate, double gamma,
                           double kappa, double cap) {
  IntervalRecord r;
  r.t = t;
  r.s = s;
  r.estimate = estimate;
  r.lower = std::max(0.0, estimate - gamma);
  r.upper = std::max(estimate, std::min(cap, estimate + kappa));
  r.reject_null = r.lower > 0;
  return r;
}

struct ConfSeqState::Impl {
  std::int64_t t = 0, s = 0;
  std::vector<double> xs, ys;  // sorted
  std::optional<MmdAccumulator> mmd;
  std::optional<CategoricalCounts> cx, cy;
  std::optional<KlFiniteBoundary> kl;
  std::vector<double> sum;
};

ConfSeqState::ConfSeqState(ConfSeqConfig config)
    : config_(std::move(config)), impl_(std::make_unique<Impl>()) {
  config_.validate();
  auto& im = *impl_;
  switch (config_.kind) {
    case DivergenceKind::Mmd: im.mmd.emplace(config_.kernel, config_.dim); break;
    case DivergenceKind::OtFinite:
      im.cx.emplace(std::size_t(config_.cost.rows()));
      im.cy.emplace(std::size_t(config_.cost.rows()));
      break;
    case DivergenceKind::TvFinite: im.cx.emplace(config_.p.size()); break;
    case DivergenceKind::KlFinite:
      im.cx.emplace(config_.p.size());
      im.kl.emplace(config_.delta, config_.stitching, std::int64_t(config_.p.size()),
                    config_.lambda_schedule, config_.kl_factor);
      break;
    case DivergenceKind::Mean:
      im.sum.assign(config_.dim, 0.0);
      if (config_.mu0.empty()) config_.mu0.assign(config_.dim, 0.0);
      break;
    default: break;
  }
}

ConfSeqState::~ConfSeqState() = default;
ConfSeqState::ConfSeqState(ConfSeqState&&) noexcept = default;
ConfSeqState& ConfSeqState::operator=(ConfSeqState&&) noexcept = default;

std::int64_t ConfSeqState::t() const { return impl_->t; }
std::int64_t ConfSeqState::s() const { return impl_->s; }
std::int64_t ConfSeqState::mmd_clamps() const {
  return impl_->mmd ? impl_->mmd->clamp_count() : 0;
}

namespace {

double as_scalar(const Observation& obs) {
  if (auto d = std::get_if<double>(&obs)) return *d;
  if (auto i = std::get_if<std::int64_t>(&obs)) return double(*i);
  const auto& v = std::get<std::vector<double>>(obs);
  require(v.size() == 1, ErrorCode::KindMismatch, "expected a scalar observation");
  return v[0];
}

std::vector<double> as_point(const Observation& obs, std::size_t dim) {
  if (auto v = std::get_if<std::vector<double>>(&obs)) {
    require(v->size() == dim, ErrorCode::KindMismatch,
            "expected a point of dimension " + std::to_string(dim));
    return *v;
  }
  require(dim == 1, ErrorCode::KindMismatch,
          "expected a point of dimension " + std::to_string(dim));
  return {as_scalar(obs)};
}

std::size_t as_category(const Observation& obs, std::size_t k) {
  auto i = std::get_if<std::int64_t>(&obs);
  require(i != nullptr, ErrorCode::KindMismatch, "expected an integer category");
  require(*i >= 0 && std::size_t(*i) < k, ErrorCode::KindMismatch,
          "category " + std::to_string(*i) + " outside alphabet of size " + std::to_string(k));
  return std::size_t(*i);
}

void insert_sorted(std::vector<double>& v, double x) {
  v.insert(std::upper_bound(v.begin(), v.end(), x), x);
}

std::vector<double> frequencies(const CategoricalCounts& c) {
  std::vector<double> w(c.k());
  for (std::size_t j = 0; j < c.k(); ++j) w[j] = double(c[j]) / double(c.total());
  return w;
}

}  // namespace

IntervalRecord ConfSeqState::update(const Observation& obs, Stream which) {
  const auto& cfg = config_;
  auto& im = *impl_;
  const bool two = is_two_sample(cfg.kind);
  require(two || which == Stream::X, ErrorCode::KindMismatch,
          std::string(to_string(cfg.kind)) + " is a one-sample kind; Y observations not allowed");
  const bool isx = which == Stream::X;
  const double cap = cfg.cap();

  switch (cfg.kind) {
    case DivergenceKind::Dkw: {
      double x = as_scalar(obs);
      require(std::isfinite(x), ErrorCode::KindMismatch, "observation must be finite");
      insert_sorted(im.xs, x);
      ++im.t;
      double est = ks_one_sample_sorted(im.xs, cfg.cdf);
      return make_record(im.t, 0, est, dkw_boundary(im.t, cfg.delta, cfg.stitching),
                         kappa_upper(im.t, cfg.delta, cfg.stitching, 1.0), cap);
    }
    case DivergenceKind::KsTwoSample: {
      double x = as_scalar(obs);
      require(std::isfinite(x), ErrorCode::KindMismatch, "observation must be finite");
      if (isx) {
        insert_sorted(im.xs, x);
        ++im.t;
      } else {
        insert_sorted(im.ys, x);
        ++im.s;
      }
      if (im.t == 0 || im.s == 0) return make_record(im.t, im.s, 0.0, kInf, kInf, cap);
      auto r = ks_two_sample_boundary(im.t, im.s, cfg.delta, cfg.stitching, cfg.mode);
      return make_record(im.t, im.s, ks_two_sample_sorted(im.xs, im.ys), r.gamma, r.kappa, cap);
    }
    case DivergenceKind::Mmd: {
      auto p = as_point(obs, cfg.dim);
      if (isx) {
        im.mmd->add_x(p);
        ++im.t;
      } else {
        im.mmd->add_y(p);
        ++im.s;
      }
      if (im.t == 0 || im.s == 0) return make_record(im.t, im.s, 0.0, kInf, kInf, cap);
      auto r = mmd_boundary(im.t, im.s, cfg.delta, cfg.stitching, cfg.kernel.bound(), cfg.mode);
      return make_record(im.t, im.s, im.mmd->value(), r.gamma, r.kappa, cap);
    }
    case DivergenceKind::OtFinite: {
      auto c = as_category(obs, std::size_t(cfg.cost.rows()));
      if (isx) {
        im.cx->add(c);
        ++im.t;
      } else {
        im.cy->add(c);
        ++im.s;
      }
      if (im.t == 0 || im.s == 0) return make_record(im.t, im.s, 0.0, kInf, kInf, cap);
      double est = ot_cost_discrete(frequencies(*im.cx), frequencies(*im.cy), cfg.cost);
      auto r = ot_boundary(im.t, im.s, cfg.delta, cfg.stitching, cfg.Delta, cfg.bias, cfg.mode);
      return make_record(im.t, im.s, est, r.gamma, r.kappa, cap);
    }
    case DivergenceKind::TvFinite: {
      im.cx->add(as_category(obs, cfg.p.size()));
      ++im.t;
      double g = tv_finite_boundary(im.t, cfg.delta, cfg.stitching, std::int64_t(cfg.p.size()),
                                    cfg.mode);
      return make_record(im.t, 0, tv_finite(*im.cx, cfg.p), g,
                         kappa_upper(im.t, cfg.delta, cfg.stitching, 1.0), cap);
    }
    case DivergenceKind::KlFinite: {
      auto c = as_category(obs, cfg.p.size());
      require(cfg.p[c] > 0, ErrorCode::AbsoluteContinuityViolated,
              "category " + std::to_string(c) + " has reference probability 0");
      double g = (*im.kl)(im.t + 1);
      im.cx->add(c);
      ++im.t;
      return make_record(im.t, 0, kl_finite(*im.cx, cfg.p), g, kInf, cap);
    }
    case DivergenceKind::Mean: {
      auto p = as_point(obs, cfg.dim);
      for (double v : p) require(std::isfinite(v), ErrorCode::KindMismatch, "non-finite point");
      for (std::size_t i = 0; i < cfg.dim; ++i) im.sum[i] += p[i];
      ++im.t;
      double n2 = 0;
      for (std::size_t i = 0; i < cfg.dim; ++i) {
        double d = im.sum[i] / double(im.t) - cfg.mu0[i];
        n2 += d * d;
      }
      double g = mean_boundary(im.t, cfg.delta, cfg.stitching, *cfg.envelope, int(cfg.dim),
                               cfg.gamma_cov);
      return make_record(im.t, 0, std::sqrt(n2), g, g, cap);
    }
  }
  return {};
}

}  // namespace divcs
