#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "divcs/kernel.hpp"
#include "divcs/sample.hpp"

namespace divcs {

// ---- Kolmogorov-Smirnov -------------------------------------------------

// sup_x |F_t(x) - F(x)| for a continuous reference cdf.
double ks_one_sample(const EmpiricalSample& x, const std::function<double(double)>& cdf);
double ks_one_sample_sorted(std::span<const double> sorted, const std::function<double(double)>& cdf);
double ks_two_sample(const EmpiricalSample& x, const EmpiricalSample& y);
double ks_two_sample_sorted(std::span<const double> xs, std::span<const double> ys);

// ---- measures on an ordered finite support ------------------------------
// Weights p and q live on the same support points (ascending for the 1-D
// distances). These are the forms used by the exhaustive audits.
double ks_discrete(std::span<const double> p, std::span<const double> q);
double w1_discrete(std::span<const double> support, std::span<const double> p,
                   std::span<const double> q);
double tv_discrete(std::span<const double> p, std::span<const double> q);
double kl_discrete(std::span<const double> p, std::span<const double> q);

// ---- MMD -----------------------------------------------------------------

struct MmdVStatistic {
  double squared = 0;  // before clamping
  double value = 0;    // sqrt(max(squared, 0))
  bool clamped = false;
};

MmdVStatistic mmd_v_statistic(const EmpiricalSample& x, const EmpiricalSample& y,
                              const KernelSpec& kernel);
inline double mmd_v(const EmpiricalSample& x, const EmpiricalSample& y,
                    const KernelSpec& kernel) {
  return mmd_v_statistic(x, y, kernel).value;
}

// Unbiased paired U-statistic; x and y are the two coordinates of Z_i.
double mmd_u_squared(const EmpiricalSample& x, const EmpiricalSample& y, const KernelSpec& kernel);

// MMD between two weightings of the same points, sqrt((p-q)' K (p-q)).
double mmd_weighted(const EmpiricalSample& points, std::span<const double> p,
                    std::span<const double> q, const KernelSpec& kernel);
// sum_ij w_i w_j K(x_i, x_j)
double v_statistic_weighted(const EmpiricalSample& points, std::span<const double> w,
                            const KernelSpec& kernel);

// Keeps the three kernel sums of the V-statistic; one new point costs
// O(t + s) kernel evaluations.
class MmdAccumulator {
 public:
  MmdAccumulator(KernelSpec kernel, std::size_t dim);

  void add_x(std::span<const double> p);
  void add_y(std::span<const double> p);

  std::size_t t() const { return x_.size(); }
  std::size_t s() const { return y_.size(); }
  const EmpiricalSample& x() const { return x_; }
  const EmpiricalSample& y() const { return y_; }
  // Requires t, s >= 1.
  MmdVStatistic statistic();
  double value() { return statistic().value; }
  std::int64_t clamp_count() const { return clamps_; }

 private:
  KernelSpec kernel_;
  EmpiricalSample x_, y_;
  double sxx_ = 0, syy_ = 0, sxy_ = 0;
  std::int64_t clamps_ = 0;
};

// ---- finite alphabets ----------------------------------------------------

double tv_finite(const CategoricalCounts& counts, std::span<const double> p);
double kl_finite(const CategoricalCounts& counts, std::span<const double> p);

// Worst-case MGF bound of t KL(P_t || P) for k categories.
// Reference evaluation: log-domain dynamic program over categories, O(k t^2).
double G_k_t(double lambda, std::span<const double> p, std::int64_t t);
// The sum does not depend on p; closed form
//   G_{k,t}(lambda) = sum_j C(j+k-2, k-2) (t)_j / t^j lambda^j
// evaluated with a rigorous geometric tail cut.
double G_k_t_series(double lambda, std::int64_t k, std::int64_t t);
double log_G_k_t_series(double lambda, std::int64_t k, std::int64_t t);

// ---- optimal transport ---------------------------------------------------

struct TransportResult {
  double value = 0;
  Eigen::MatrixXd plan;       // n x m coupling
  Eigen::VectorXd f, g;       // Kantorovich potentials, f_i + g_j <= c_ij
  double dual_value = 0;
  double duality_gap = 0;     // value - dual_value
  double dual_violation = 0;  // max_ij (f_i + g_j - c_ij)^+
};

TransportResult ot_solve(std::span<const double> mu, std::span<const double> nu,
                         const Eigen::MatrixXd& cost);
inline double ot_cost_discrete(std::span<const double> mu, std::span<const double> nu,
                               const Eigen::MatrixXd& cost) {
  return ot_solve(mu, nu, cost).value;
}
// Empirical measures; CostSpec::Matrix treats points as category indices.
double ot_cost_empirical(const EmpiricalSample& x, const EmpiricalSample& y, const CostSpec& cost);

// ---- Wasserstein-1 on the line -------------------------------------------

double w1_1d(const EmpiricalSample& x, const EmpiricalSample& y);

// ---- Gaussian-smoothed estimators, d = 1 ----------------------------------

enum class SmoothedKind { TV, W1, Entropy };

// Reference measure already convolved with the Gaussian kernel.
struct SmoothedReference {
  std::function<double(double)> pdf;
  std::function<double(double)> cdf;
  double lo = -10, hi = 10;  // region holding all but negligible mass
};

struct QuadratureSpec {
  double abs_tol = 1e-8;
  double pad_sigmas = 8.0;
  int max_depth = 40;
};

// TV/W1 between x * K_sigma and y * K_sigma, or the entropy of x * K_sigma.
double smoothed_estimators_1d(const EmpiricalSample& x, const EmpiricalSample* y, double sigma,
                              SmoothedKind which, const QuadratureSpec& quad = {});
double smoothed_estimators_1d(const EmpiricalSample& x, const SmoothedReference& ref,
                              double sigma, SmoothedKind which, const QuadratureSpec& quad = {});

// ---- Rademacher complexity -----------------------------------------------

struct RademacherEstimate {
  double value = 0;
  double standard_error = 0;  // 0 for exact enumeration
  bool exact = true;
};

// values(i, f) = f(X_i) in {-1, +1}; Exact needs t <= 20.
RademacherEstimate rademacher_exact(const Eigen::MatrixXi& values);
RademacherEstimate rademacher_monte_carlo(const Eigen::MatrixXi& values, std::int64_t draws,
                                          std::uint64_t seed);

}  // namespace divcs
