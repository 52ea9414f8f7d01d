#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "divcs/cgf.hpp"
#include "divcs/stitching.hpp"

namespace divcs {

// t -> envelope of the process indexed by (possibly fractional) sample size
using EnvelopeFamily = std::function<CgfEnvelope(double t)>;
// (t, s) -> envelope of the two-index process
using EnvelopeFamily2 = std::function<CgfEnvelope(double t, double s)>;

// gamma_t = (psi*_{t_bar})^{-1}( log ell(log_eta t) + log(1/delta_side) )
double one_sample_radius(const EnvelopeFamily& family, std::int64_t t, double delta_side,
                         const StitchingFunctions& st = {});

// gamma_ts = (psi*_{t_bar s_bar})^{-1}( log g(log_eta t + log_xi s) + log(1/delta_side) )
double two_sample_radius(const EnvelopeFamily2& family, std::int64_t t, std::int64_t s,
                         double delta_side, const StitchingFunctions& st = {});
// Same, but s is optional so a missing index is reported instead of guessed.
double two_sample_radius(const EnvelopeFamily2& family, std::int64_t t,
                         std::optional<std::int64_t> s, double delta_side,
                         const StitchingFunctions& st = {});

// mean + sqrt(2 var L), L clamped at 0
double subgaussian_radius(double mean_bound, double variance_proxy, double crossing_log);

// P(sup_t Z_t >= u) <= exp(-psi*(u)), times e for two-index processes
double maximal_tail_bound(const CgfEnvelope& env, double u, bool two_sample);

struct MonotonicityResult {
  bool ok = true;
  std::int64_t first_violation = 0;  // t with gamma_{t+1} > gamma_t, 0 when ok
};

// Checks gamma_{t+1} <= gamma_t (1 + 1e-12) for t = 1..t_max-1.
MonotonicityResult monotonicity_check(const std::function<double(std::int64_t)>& radius,
                                      std::int64_t t_max);

// Paired (t = s) radius: the two-sample construction with ell in place of g,
// family is the envelope of the paired process at the halved index.
double paired_radius(const EnvelopeFamily& family, std::int64_t t, double delta,
                     const StitchingFunctions& st = {});

// Forward-process boundary 2 gamma_t, gamma_t = (psi*_t)^{-1}(log ell(log2 t) + log(2/delta)).
// gamma must be nondecreasing on [1, t]; otherwise MonotonicityViolated.
double forward_boundary(const EnvelopeFamily& family, std::int64_t t, double delta,
                        const StitchingFunctions& st = {});

}  // namespace divcs
