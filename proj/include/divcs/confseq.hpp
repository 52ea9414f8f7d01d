#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "divcs/cgf.hpp"
#include "divcs/estimators.hpp"
#include "divcs/stitching.hpp"

namespace divcs {

// AsStated reproduces the printed corollary formulas. DerivationConsistent
// feeds the sub-Gaussian parameters from the proofs into the generic radius.
enum class Mode { AsStated, DerivationConsistent };

struct TwoSidedRadius {
  double gamma = 0;  // lower offset
  double kappa = 0;  // upper offset
};

// B sqrt((log ell(log2 t) + log(4/delta)) / t); two-sample offsets add.
double kappa_upper(std::int64_t t, double delta, const StitchingFunctions& st = {},
                   double range_bound = 1.0);

// sqrt(pi/t) + 2 sqrt((2/t)(log ell(log2 t) + log(1/delta)))
double dkw_boundary(std::int64_t t, double delta, const StitchingFunctions& st = {});

TwoSidedRadius ks_two_sample_boundary(std::int64_t t, std::int64_t s, double delta,
                                      const StitchingFunctions& st = {},
                                      Mode mode = Mode::DerivationConsistent);

TwoSidedRadius mmd_boundary(std::int64_t t, std::int64_t s, double delta,
                            const StitchingFunctions& st, double B,
                            Mode mode = Mode::DerivationConsistent);
// Paired U-statistic radius, 16 B sqrt((log ell(log2 t) + log(1/delta)) / (t-1)).
double mmd_u_boundary(std::int64_t t, double delta, const StitchingFunctions& st, double B);

// alpha_{c,ts}: bound on E T_c(P_t, Q_s) - T_c(P, Q), evaluated at the halved indices.
using BiasBound = std::function<double(double t, double s)>;
// C / sqrt(t ^ s)
BiasBound root_min_bias(double C);

TwoSidedRadius ot_boundary(std::int64_t t, std::int64_t s, double delta,
                           const StitchingFunctions& st, double Delta, const BiasBound& bias,
                           Mode mode = Mode::DerivationConsistent);

using LambdaSchedule = std::function<double(std::int64_t)>;
// lambda_t = min(1, sqrt(k / t))
LambdaSchedule default_lambda_schedule(std::int64_t k);

// (factor / (lambda_t t)) log(G_{k,floor(t/2)}(lambda_t) ell(log2 t) / delta)
double kl_finite_radius(std::int64_t t, double delta, const StitchingFunctions& st,
                        std::int64_t k, const LambdaSchedule& schedule, double factor = 2.0);

// Same radius with the decreasing-in-t hypothesis verified on [1, t].
double kl_finite_boundary(std::int64_t t, double delta, const StitchingFunctions& st,
                          std::int64_t k, LambdaSchedule schedule = {}, double factor = 2.0);

// Radius table that grows on demand and rejects any increase.
class KlFiniteBoundary {
 public:
  KlFiniteBoundary(double delta, StitchingFunctions st, std::int64_t k,
                   LambdaSchedule schedule = {}, double factor = 2.0);
  double operator()(std::int64_t t);
  // Extends the table to t_max; throws MonotonicityViolated on failure.
  void verify(std::int64_t t_max);

 private:
  double delta_;
  StitchingFunctions st_;
  std::int64_t k_;
  LambdaSchedule schedule_;
  double factor_;
  std::vector<double> table_;  // table_[t-1] = gamma_t
};

// AsStated: (1/2) sqrt(k/(2t)) + sqrt((2/t) L). DerivationConsistent puts
// the halved index inside both terms: sqrt(k/t_bar)/4 + sqrt(L/t_bar).
double tv_finite_boundary(std::int64_t t, double delta, const StitchingFunctions& st,
                          std::int64_t k, Mode mode = Mode::AsStated);

struct SmoothedConstants {
  double c_d = 0;  // TV constant
  double C_d = 0;  // W1 constant
};
SmoothedConstants smoothed_constants(int d, double sigma, double tau2);

// which must be TV or W1.
double smoothed_boundary(std::int64_t t, double delta, const StitchingFunctions& st, int d,
                         double sigma, double tau2, SmoothedKind which);

// Two-sided radius for the smoothed entropy; data supported in [-1, 1]^d.
double entropy_bound(std::int64_t t, double delta, const StitchingFunctions& st, int d,
                     double sigma, double C_d);

// R_{t_bar} + 2 sqrt((2/t) L): uniform deviation of the empirical risk.
double rademacher_bound(std::int64_t t, double delta, const StitchingFunctions& st,
                        const std::function<double(double)>& pop_complexity);
// Lower confidence bound on R_{t_bar} from the empirical complexity.
double rademacher_lower(std::int64_t t, double delta, const StitchingFunctions& st,
                        double empirical);

// Size of a gamma-net of the Euclidean unit sphere, (1 + 2/gamma)^d; 2 for d = 1, gamma = 0.
double covering_number(int d, double gamma_cov);

// (1/(1-gamma)) (psi*)^{-1}((log ell(log2 t) + log(1/delta) + log N) / t_bar)
double mean_boundary(std::int64_t t, double delta, const StitchingFunctions& st,
                     const CgfEnvelope& envelope, int d, double gamma_cov);

std::function<double(std::int64_t, std::int64_t)> triangle_compose(
    std::function<double(std::int64_t)> gamma_x, std::function<double(std::int64_t)> gamma_y);

}  // namespace divcs
