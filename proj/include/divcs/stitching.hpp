#pragma once

#include <cstdint>

namespace divcs {

// Riemann zeta for real alpha > 1. Values are memoised per alpha.
double zeta(double alpha);

namespace testing {
// Multiplies every cached zeta value by factor. Only the selftest uses this.
void corrupt_zeta_cache(double factor);
void clear_zeta_cache();
}  // namespace testing

// How the "half index" t_bar of an epoch is formed.
//   Real: t_bar = t / eta          (default, keeps gamma_t monotone)
//   Ceil: t_bar = ceil(t / ceil(eta))
enum class HalvingRule { Real, Ceil };

class StitchingFunctions {
 public:
  StitchingFunctions() : StitchingFunctions(2.0, 2.0, 2.0) {}
  StitchingFunctions(double alpha, double eta, double xi,
                     HalvingRule halving = HalvingRule::Real);

  double alpha() const { return alpha_; }
  double eta() const { return eta_; }
  double xi() const { return xi_; }
  HalvingRule halving() const { return halving_; }
  double zeta_alpha() const { return zeta_a_; }
  double zeta_alpha1() const { return zeta_a1_; }

  // ell(k) = (1 v k)^alpha zeta(alpha)
  double ell(double k) const;
  double log_ell(double k) const;
  // g(k) = e (2 v k)^(alpha+1) (zeta(alpha) - zeta(alpha+1))
  double g(double k) const;
  double log_g(double k) const;

  double bar_t(std::int64_t t) const;
  double bar_s(std::int64_t s) const;

 private:
  double alpha_, eta_, xi_;
  HalvingRule halving_;
  double zeta_a_, zeta_a1_;
};

// Halved index with base 2 as used by the printed corollaries.
double half_index(std::int64_t t, HalvingRule rule);

struct BudgetCheck {
  double partial = 0;      // terms up to K
  double tail_lower = 0;   // rigorous bracket on the remainder
  double tail_upper = 0;
  double lower() const { return partial + tail_lower; }
  double upper() const { return partial + tail_upper; }
};

// sum_{k>=1} 1/ell(k); equals 1.
BudgetCheck one_sample_budget(const StitchingFunctions& st, std::int64_t K);
// sum over j,k >= 1 of e/g(j+k), grouped by n = j+k; equals 1.
BudgetCheck two_sample_budget(const StitchingFunctions& st, std::int64_t K);

}  // namespace divcs
