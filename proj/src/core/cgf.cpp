#include "divcs/cgf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "divcs/error.hpp"

namespace divcs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CgfEnvelope CgfEnvelope::sub_gaussian(double mean_bound, double variance_proxy) {
  require(std::isfinite(mean_bound), ErrorCode::InvalidArgument, "mean bound must be finite");
  require(variance_proxy >= 0 && std::isfinite(variance_proxy), ErrorCode::InvalidArgument,
          "variance proxy must be finite and >= 0");
  CgfEnvelope e;
  e.form_ = Form::SubGaussian;
  e.mu_ = mean_bound;
  e.var_ = variance_proxy;
  return e;
}

CgfEnvelope CgfEnvelope::sub_exponential(double mean_bound, double variance_proxy,
                                         double scale) {
  require(std::isfinite(mean_bound), ErrorCode::InvalidArgument, "mean bound must be finite");
  require(variance_proxy > 0 && std::isfinite(variance_proxy), ErrorCode::InvalidArgument,
          "variance proxy must be finite and > 0");
  require(scale > 0 && std::isfinite(scale), ErrorCode::InvalidArgument, "scale must be > 0");
  CgfEnvelope e;
  e.form_ = Form::SubExponential;
  e.mu_ = mean_bound;
  e.var_ = variance_proxy;
  e.scale_ = scale;
  return e;
}

CgfEnvelope CgfEnvelope::tabulated(std::vector<double> lambdas, std::vector<double> psi) {
  require(lambdas.size() == psi.size(), ErrorCode::DimensionMismatch,
          "lambda and psi tables differ in length");
  require(lambdas.size() >= 2, ErrorCode::InvalidArgument, "table needs at least two points");
  require(lambdas[0] == 0.0, ErrorCode::InvalidArgument, "table must start at lambda = 0");
  require(psi[0] == 0.0, ErrorCode::NonConvexTable, "psi(0) must be 0");
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    require(lambdas[i] > lambdas[i - 1] && std::isfinite(lambdas[i]), ErrorCode::InvalidArgument,
            "lambda grid must be strictly increasing");
    require(std::isfinite(psi[i]), ErrorCode::InvalidArgument, "psi values must be finite");
  }
  double prev = (psi[1] - psi[0]) / (lambdas[1] - lambdas[0]);
  for (std::size_t i = 2; i < lambdas.size(); ++i) {
    double slope = (psi[i] - psi[i - 1]) / (lambdas[i] - lambdas[i - 1]);
    if (slope < prev - 1e-9 * (1.0 + std::abs(prev)))
      fail(ErrorCode::NonConvexTable,
           "slope decreases at lambda = " + std::to_string(lambdas[i - 1]));
    prev = std::max(prev, slope);
  }
  CgfEnvelope e;
  e.form_ = Form::Tabulated;
  e.mu_ = (psi[1] - psi[0]) / (lambdas[1] - lambdas[0]);
  e.lam_ = std::move(lambdas);
  e.psi_tab_ = std::move(psi);
  return e;
}

CgfEnvelope CgfEnvelope::tabulate(const std::function<double(double)>& psi, double lambda_max,
                                  std::size_t n) {
  require(lambda_max > 0 && std::isfinite(lambda_max), ErrorCode::InvalidArgument,
          "lambda_max must be finite and > 0");
  require(n >= 2, ErrorCode::InvalidArgument, "need at least two grid points");
  std::vector<double> lam(n), val(n);
  lam[0] = 0.0;
  val[0] = 0.0;
  const double lo = std::log(lambda_max) - 8.0 * std::log(10.0);
  const double hi = std::log(lambda_max);
  for (std::size_t i = 1; i < n; ++i) {
    double f = (n == 2) ? 1.0 : double(i - 1) / double(n - 2);
    lam[i] = (i + 1 == n) ? lambda_max : std::exp(lo + f * (hi - lo));
    val[i] = psi(lam[i]);
  }
  return tabulated(std::move(lam), std::move(val));
}

double CgfEnvelope::lambda_max() const {
  switch (form_) {
    case Form::SubGaussian: return kInf;
    case Form::SubExponential: return 1.0 / scale_;
    case Form::Tabulated: return lam_.back();
  }
  return 0;
}

double CgfEnvelope::psi(double lambda) const {
  require(lambda >= 0, ErrorCode::OutOfRange, "psi is defined for lambda >= 0");
  switch (form_) {
    case Form::SubGaussian: return lambda * mu_ + 0.5 * lambda * lambda * var_;
    case Form::SubExponential:
      if (lambda >= 1.0 / scale_) return kInf;
      return lambda * mu_ + 0.5 * lambda * lambda * var_;
    case Form::Tabulated: {
      if (lambda > lam_.back()) return kInf;
      auto it = std::upper_bound(lam_.begin(), lam_.end(), lambda);
      if (it == lam_.end()) return psi_tab_.back();
      std::size_t i = std::size_t(it - lam_.begin());
      double w = (lambda - lam_[i - 1]) / (lam_[i] - lam_[i - 1]);
      return (1 - w) * psi_tab_[i - 1] + w * psi_tab_[i];
    }
  }
  return kInf;
}

double CgfEnvelope::dual(double x) const {
  switch (form_) {
    case Form::SubGaussian: {
      double z = x - mu_;
      if (z <= 0) return 0.0;
      if (var_ == 0) return kInf;
      return z * z / (2 * var_);
    }
    case Form::SubExponential: {
      double z = x - mu_;
      if (z <= 0) return 0.0;
      const double lm = 1.0 / scale_;
      if (z < var_ * lm) return z * z / (2 * var_);
      return z * lm - var_ * lm * lm / 2;
    }
    case Form::Tabulated: {
      // sup over a segment of a linear function sits at a vertex
      double best = 0.0;
      for (std::size_t i = 1; i < lam_.size(); ++i) best = std::max(best, lam_[i] * x - psi_tab_[i]);
      return best;
    }
  }
  return 0;
}

double CgfEnvelope::dual_inverse(double y) const {
  require(y >= 0 && !std::isnan(y), ErrorCode::OutOfRange, "dual_inverse needs y >= 0");
  switch (form_) {
    case Form::SubGaussian: return mu_ + std::sqrt(2 * y * var_);
    case Form::SubExponential: {
      const double lm = 1.0 / scale_;
      if (y < var_ * lm * lm / 2) return mu_ + std::sqrt(2 * var_ * y);
      return mu_ + y / lm + var_ * lm / 2;
    }
    case Form::Tabulated: {
      // psi*(x) >= y  iff  lambda_i x - psi_i >= y for some vertex i
      double best = kInf;
      for (std::size_t i = 1; i < lam_.size(); ++i)
        best = std::min(best, (y + psi_tab_[i]) / lam_[i]);
      require(std::isfinite(best), ErrorCode::OutOfRange, "table supports no positive lambda");
      return best;
    }
  }
  return 0;
}

}  // namespace divcs
