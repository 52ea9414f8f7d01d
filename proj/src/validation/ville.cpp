#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "divcs/error.hpp"
#include "divcs/radius.hpp"
#include "divcs/validation.hpp"

namespace divcs {

VilleReport reverse_ville_check(VilleProcess process, std::int64_t t0, double u, std::int64_t R,
                                std::uint64_t seed, std::int64_t horizon) {
  require(t0 >= 1 && horizon >= t0, ErrorCode::InvalidArgument, "need 1 <= t0 <= horizon");
  require(u > 0, ErrorCode::InvalidArgument, "threshold u must be > 0");
  require(R >= 1, ErrorCode::InvalidArgument, "need R >= 1");
  auto start = std::chrono::steady_clock::now();
  VilleReport rep;
  rep.sim.scenario = process == VilleProcess::AbsMean ? "ville-abs-mean" : "ville-mean-difference";
  rep.sim.horizon = horizon;
  rep.sim.seed = seed;
  rep.sim.first_violation.assign(std::size_t(R), 0);

  if (process == VilleProcess::AbsMean) {
    rep.expectation = std::sqrt(2.0 / (std::numbers::pi * double(t0)));
    rep.bound = rep.expectation / u;
  } else {
    const double v = 2.0 / double(t0);  // variance of Z_{t0 t0}
    rep.expectation = std::sqrt(2 * v / std::numbers::pi);
    rep.bound = maximal_tail_bound(CgfEnvelope::sub_gaussian(0.0, v), u, true);
    rep.moment_bound = 4.0 * v / (u * u);
  }

  parallel_for(R, [&](std::int64_t r) {
    std::mt19937_64 rng(replicate_seed(seed, std::uint64_t(r)));
    std::normal_distribution<double> N(0.0, 1.0);
    auto& out = rep.sim.first_violation[std::size_t(r)];
    if (process == VilleProcess::AbsMean) {
      double sum = 0;
      for (std::int64_t t = 1; t <= horizon; ++t) {
        sum += N(rng);
        if (t >= t0 && std::abs(sum / double(t)) >= u) {
          out = t;
          return;
        }
      }
      return;
    }
    // sup_{t,s >= t0} (mean_t X - mean_s Y) = max_t mean_t X - min_s mean_s Y
    double sx = 0, sy = 0, max_x = -1e300, min_y = 1e300;
    for (std::int64_t t = 1; t <= horizon; ++t) {
      sx += N(rng);
      sy += N(rng);
      if (t >= t0) {
        max_x = std::max(max_x, sx / double(t));
        min_y = std::min(min_y, sy / double(t));
      }
    }
    if (max_x - min_y >= u) out = 1;
  });

  rep.sim.target = std::min(1.0, rep.bound);
  rep.sim.finalize();
  rep.sim.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace divcs
