#pragma once

#include <string>
#include <vector>

namespace divcs {

struct InvariantResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

// Fast invariant suite: stitching sums, dual round-trips, estimator
// oracles, G_{k,t} enumeration, boundary values. Stops at the first failure.
std::vector<InvariantResult> run_selftest();

}  // namespace divcs
