#include "divcs/kernel.hpp"

#include <cmath>

#include "divcs/error.hpp"

namespace divcs {

KernelSpec KernelSpec::gaussian(double bandwidth) {
  require(bandwidth > 0 && std::isfinite(bandwidth), ErrorCode::InvalidArgument,
          "bandwidth must be > 0");
  KernelSpec k;
  k.kind_ = Kind::Gaussian;
  k.bandwidth_ = bandwidth;
  k.bound_ = 1.0;
  return k;
}

KernelSpec KernelSpec::linear(double bound) {
  require(bound >= 0, ErrorCode::InvalidArgument, "kernel bound must be >= 0");
  KernelSpec k;
  k.kind_ = Kind::Linear;
  k.bound_ = bound;
  return k;
}

KernelSpec KernelSpec::custom(Eigen::MatrixXd m) {
  require(m.rows() == m.cols() && m.rows() > 0, ErrorCode::DimensionMismatch,
          "custom kernel matrix must be square");
  require((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12, ErrorCode::InvalidArgument,
          "custom kernel matrix must be symmetric");
  KernelSpec k;
  k.kind_ = Kind::Custom;
  k.bound_ = m.maxCoeff();
  k.matrix_ = std::move(m);
  return k;
}

double KernelSpec::operator()(std::span<const double> x, std::span<const double> y) const {
  switch (kind_) {
    case Kind::Gaussian: {
      double d2 = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - y[i];
        d2 += d * d;
      }
      return std::exp(-d2 / (2 * bandwidth_ * bandwidth_));
    }
    case Kind::Linear: {
      double s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
      return s;
    }
    case Kind::Custom: {
      auto i = static_cast<Eigen::Index>(x[0]);
      auto j = static_cast<Eigen::Index>(y[0]);
      require(i >= 0 && j >= 0 && i < matrix_.rows() && j < matrix_.rows(),
              ErrorCode::OutOfRange, "category outside custom kernel matrix");
      return matrix_(i, j);
    }
  }
  return 0;
}

Eigen::MatrixXd KernelSpec::gram(const EmpiricalSample& pts) const {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) g(i, j) = g(j, i) = (*this)(pts.point(i), pts.point(j));
  return g;
}

double psd_min_eigenvalue(const KernelSpec& kernel, const EmpiricalSample& pts) {
  require(!pts.empty(), ErrorCode::EmptySample, "no points");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel.gram(pts), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

CostSpec CostSpec::matrix(Eigen::MatrixXd c, double delta) {
  require(c.size() > 0, ErrorCode::InvalidArgument, "empty cost matrix");
  require(c.minCoeff() >= 0, ErrorCode::InvalidArgument, "costs must be nonnegative");
  CostSpec s;
  s.kind_ = Kind::Matrix;
  s.delta_ = delta < 0 ? c.maxCoeff() : delta;
  require(s.delta_ >= c.maxCoeff(), ErrorCode::InvalidArgument, "Delta below the largest cost");
  s.c_ = std::move(c);
  return s;
}

CostSpec CostSpec::metric_power(double p, double delta) {
  require(p >= 1 && std::isfinite(p), ErrorCode::InvalidArgument, "power must be >= 1");
  require(delta > 0 && std::isfinite(delta), ErrorCode::InvalidArgument, "Delta must be > 0");
  CostSpec s;
  s.kind_ = Kind::MetricPower;
  s.p_ = p;
  s.delta_ = delta;
  return s;
}

double CostSpec::operator()(std::span<const double> x, std::span<const double> y) const {
  if (kind_ == Kind::Matrix) {
    auto i = static_cast<Eigen::Index>(x[0]);
    auto j = static_cast<Eigen::Index>(y[0]);
    require(i >= 0 && j >= 0 && i < c_.rows() && j < c_.cols(), ErrorCode::OutOfRange,
            "category outside cost matrix");
    return c_(i, j);
  }
  double d2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
  return std::pow(std::sqrt(d2), p_);
}

}  // namespace divcs
