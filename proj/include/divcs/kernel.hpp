#pragma once

#include <Eigen/Dense>

#include <span>

#include "divcs/sample.hpp"

namespace divcs {

class KernelSpec {
 public:
  enum class Kind { Gaussian, Linear, Custom };

  // exp(-|x-y|^2 / (2 h^2)), sup = 1
  static KernelSpec gaussian(double bandwidth);
  // <x, y>; bound is sup K over the data domain and must be supplied
  static KernelSpec linear(double bound = 0.0);
  // K(i, j) = m(i, j) where points are category indices
  static KernelSpec custom(Eigen::MatrixXd m);

  Kind kind() const { return kind_; }
  double bandwidth() const { return bandwidth_; }
  double bound() const { return bound_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  double operator()(std::span<const double> x, std::span<const double> y) const;

  // Gram matrix of the points.
  Eigen::MatrixXd gram(const EmpiricalSample& pts) const;

 private:
  Kind kind_ = Kind::Gaussian;
  double bandwidth_ = 1.0;
  double bound_ = 1.0;
  Eigen::MatrixXd matrix_;
};

// Smallest eigenvalue of the Gram matrix; a Mercer kernel gives >= -1e-8.
double psd_min_eigenvalue(const KernelSpec& kernel, const EmpiricalSample& pts);

class CostSpec {
 public:
  enum class Kind { Matrix, MetricPower };

  // Delta defaults to the largest entry.
  static CostSpec matrix(Eigen::MatrixXd c, double delta = -1.0);
  // |x - y|^p with the Euclidean ground metric; Delta bounds the cost on
  // the support (diameter^p) and has to be given.
  static CostSpec metric_power(double p, double delta);

  Kind kind() const { return kind_; }
  double delta() const { return delta_; }
  double power() const { return p_; }
  const Eigen::MatrixXd& table() const { return c_; }

  double operator()(std::span<const double> x, std::span<const double> y) const;

 private:
  Kind kind_ = Kind::Matrix;
  double delta_ = 0;
  double p_ = 1;
  Eigen::MatrixXd c_;
};

}  // namespace divcs
