#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace divcs {

// Upper bound psi(lambda) on the cumulant generating function of a centred
// process, for lambda in [0, lambda_max). Three representations:
//
//   SubGaussian:     psi = lambda*mu + lambda^2 kappa^2 / 2
//   SubExponential:  psi = lambda*mu + lambda^2 sigma^2 / 2,  lambda < 1/a
//   Tabulated:       piecewise-linear interpolation of (lambda_i, psi_i)
//
// mu is the bound on the mean of the process, so psi*(x) = 0 for x <= mu.
class CgfEnvelope {
 public:
  enum class Form { SubGaussian, SubExponential, Tabulated };

  static CgfEnvelope sub_gaussian(double mean_bound, double variance_proxy);
  static CgfEnvelope sub_exponential(double mean_bound, double variance_proxy, double scale);
  // Throws NonConvexTable when the table is not convex or psi(0) != 0.
  static CgfEnvelope tabulated(std::vector<double> lambdas, std::vector<double> psi);
  // Samples psi on a log-spaced grid of n points in (0, lambda_max], plus 0.
  static CgfEnvelope tabulate(const std::function<double(double)>& psi, double lambda_max,
                              std::size_t n = 2048);

  Form form() const { return form_; }
  double mean_bound() const { return mu_; }
  double variance_proxy() const { return var_; }
  double scale() const { return scale_; }
  // Supremum of the admissible lambda range (may be +inf).
  double lambda_max() const;

  double psi(double lambda) const;
  // psi*(x) = sup_{lambda} lambda x - psi(lambda)
  double dual(double x) const;
  // Smallest x with psi*(x) >= y, for y >= 0.
  double dual_inverse(double y) const;

 private:
  CgfEnvelope() = default;

  Form form_ = Form::SubGaussian;
  double mu_ = 0;
  double var_ = 0;
  double scale_ = 0;
  std::vector<double> lam_;
  std::vector<double> psi_tab_;
};

inline double legendre_dual(const CgfEnvelope& env, double x) { return env.dual(x); }
inline double dual_inverse(const CgfEnvelope& env, double y) { return env.dual_inverse(y); }

}  // namespace divcs
