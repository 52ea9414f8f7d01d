#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "divcs/monitor.hpp"

namespace divcs {

// ---- replicate plumbing ---------------------------------------------------

// Counter-based seed for replicate r; independent of thread scheduling.
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t r);

// Runs fn(r) for r in [0, n) on a small thread pool. Each r must write
// only its own output slot.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

struct SimReport {
  std::string scenario;
  std::int64_t replications = 0;
  std::int64_t horizon = 0;
  std::int64_t violation_count = 0;
  double violation_rate = 0;
  double standard_error = 0;  // sqrt(rate (1 - rate) / R)
  double target = 0;          // nominal violation probability
  double threshold = 0;       // target + 3 sqrt(target (1 - target) / R)
  bool asserted = false;      // false when R is too small to judge
  bool passed = true;
  double wall_time_s = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> first_violation;  // 0 when the replicate never violated

  // Sets rate, SE, threshold and the predicate rate <= threshold.
  void finalize(std::int64_t min_replications_for_assert = 30);
  std::string to_json(bool with_timing = false) const;
  std::string per_replicate_csv() const;
};

// ---- leave-one-out audit --------------------------------------------------

enum class AuditKind { TV, KL, KS, W1, MMD, OT, UStat };
const char* to_string(AuditKind kind);

struct AuditResult {
  AuditKind kind = AuditKind::TV;
  bool passed = true;
  double worst_residual = -1e300;  // max over datasets of D(P_{t+1}) - mean LOO
  std::int64_t cases = 0;
  std::int64_t violations = 0;
};

// Every dataset over {0, .., alphabet_size-1} of length t+1, t = 1..t_max,
// checked against D(P_{t+1}) <= (1/(t+1)) sum_i D(P_t^{-i}) (equality for UStat).
AuditResult leave_one_out_audit(AuditKind kind, int alphabet_size, int t_max,
                                double tolerance = 1e-12);

// ---- Ville-type maximal inequalities -------------------------------------

enum class VilleProcess {
  AbsMean,         // R_t = |mean of t standard normals|
  MeanDifference,  // Z_ts = mean_t(X) - mean_s(Y), standard normals
};

struct VilleReport {
  SimReport sim;
  double expectation = 0;  // E[R_{t0}] (closed form)
  double bound = 0;        // E[R_{t0}]/u, or e exp(-psi*(u)) for the two-index process
  double moment_bound = 0; // (a/(a-1))^a E|Z_{t0 s0}|^a / u^a with a = 2 (two-index only)
};

VilleReport reverse_ville_check(VilleProcess process, std::int64_t t0, double u,
                                std::int64_t R, std::uint64_t seed, std::int64_t horizon = 2000);

// ---- coverage -------------------------------------------------------------

using StreamGenerator =
    std::function<std::pair<Stream, Observation>(std::mt19937_64& rng, std::int64_t step)>;

// Reference implementation: feeds `steps` observations per replicate to a
// monitor and flags any step with truth outside [lower, upper].
SimReport coverage_sim(const ConfSeqConfig& config, double truth, const StreamGenerator& gen,
                       std::int64_t steps, std::int64_t R, std::uint64_t seed,
                       double target);

struct ScenarioParams {
  std::int64_t R = 0;  // 0 picks the scenario default
  std::int64_t T = 0;
  double delta = 0.05;
  std::uint64_t seed = 1;
  // Added to the true value the intervals are checked against. Nonzero
  // values provoke violations; used to cross-check the fast path.
  double truth_shift = 0;
};

std::vector<std::string> scenario_names();
bool is_scenario(const std::string& name);
// Fast trajectory checks (exact estimates only where the interval could
// move past the truth). Throws InvalidArgument for unknown names.
SimReport run_scenario(const std::string& name, const ScenarioParams& params);

// Monitor configuration and data stream behind a coverage scenario, so the
// fast path can be replayed through coverage_sim.
struct ScenarioSetup {
  ConfSeqConfig config;
  double truth = 0;
  double target = 0;
  StreamGenerator generator;
  std::int64_t steps = 0;  // observations per replicate for horizon T
};
ScenarioSetup scenario_setup(const std::string& name, const ScenarioParams& params);

// ---- upward bias -----------------------------------------------------------

enum class BiasEstimator { KS, TV, MMD, KL, MMDUStat };
const char* to_string(BiasEstimator e);

struct BiasReport {
  BiasEstimator estimator = BiasEstimator::KS;
  double truth = 0;
  std::vector<std::int64_t> t_grid;
  std::vector<double> means, ses;
  double stopped_mean = 0, stopped_se = 0;
  bool above_truth = true;    // plug-ins: every mean >= truth - 3 SE (and > 0 at truth 0)
  bool nonincreasing = true;  // plug-ins: consecutive paired differences <= 3 SE
  bool unbiased = true;       // U-statistic: |mean - truth| <= 3 SE
  bool stopping_ok = true;    // mean at the stopping time >= truth - 3 SE
  bool passed = true;
};

// shift = 0 gives truth 0; shift > 0 moves the reference away (see the
// implementation for the per-estimator meaning).
BiasReport bias_direction_check(BiasEstimator estimator, double shift,
                                const std::vector<std::int64_t>& t_grid, std::int64_t R,
                                std::uint64_t seed);

}  // namespace divcs
