#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "divcs/cgf.hpp"
#include "divcs/confseq.hpp"
#include "divcs/kernel.hpp"
#include "divcs/stitching.hpp"

namespace divcs {

enum class DivergenceKind { Dkw, KsTwoSample, Mmd, OtFinite, TvFinite, KlFinite, Mean };

const char* to_string(DivergenceKind kind);
std::optional<DivergenceKind> parse_kind(const std::string& name);
bool is_two_sample(DivergenceKind kind);

struct ConfSeqConfig {
  double delta = 0.05;
  StitchingFunctions stitching;
  DivergenceKind kind = DivergenceKind::Dkw;
  Mode mode = Mode::DerivationConsistent;

  // Dkw: continuous reference cdf
  std::function<double(double)> cdf;
  // Mmd
  KernelSpec kernel = KernelSpec::gaussian(1.0);
  // Mmd, Mean: point dimension
  std::size_t dim = 1;
  // OtFinite: cost over the alphabet, Delta, bias bound
  Eigen::MatrixXd cost;
  double Delta = 0;
  BiasBound bias;
  // TvFinite, KlFinite: reference probabilities
  std::vector<double> p;
  LambdaSchedule lambda_schedule;
  double kl_factor = 2.0;
  // Mean: dimension-free envelope, covering parameter, hypothesised mean
  std::optional<CgfEnvelope> envelope;
  double gamma_cov = 0.0;
  std::vector<double> mu0;

  // Throws InvalidArgument naming the missing or bad parameter.
  void validate() const;
  // Largest value the divergence can take (+inf when unbounded).
  double cap() const;
};

enum class Stream { X, Y };

using Observation = std::variant<double, std::int64_t, std::vector<double>>;

struct IntervalRecord {
  std::int64_t t = 0;
  std::int64_t s = 0;
  double estimate = 0;
  double lower = 0;
  double upper = std::numeric_limits<double>::infinity();
  bool reject_null = false;
};

// Streaming state for one monitor; single writer.
class ConfSeqState {
 public:
  explicit ConfSeqState(ConfSeqConfig config);
  ~ConfSeqState();
  ConfSeqState(ConfSeqState&&) noexcept;
  ConfSeqState& operator=(ConfSeqState&&) noexcept;

  // Validates the observation against the kind before touching the state.
  IntervalRecord update(const Observation& obs, Stream which = Stream::X);

  const ConfSeqConfig& config() const { return config_; }
  std::int64_t t() const;
  std::int64_t s() const;
  // Clamped MMD radicands seen so far.
  std::int64_t mmd_clamps() const;

 private:
  struct Impl;
  ConfSeqConfig config_;
  std::unique_ptr<Impl> impl_;
};

inline IntervalRecord monitor_update(ConfSeqState& state, const Observation& obs,
                                     Stream which = Stream::X) {
  return state.update(obs, which);
}

// Interval from an estimate and offsets, floored at 0 and capped.
IntervalRecord make_record(std::int64_t t, std::int64_t s, double estimate, double gamma,
                           double kappa, double cap);

}  // namespace divcs
