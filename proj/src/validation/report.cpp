#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "divcs/validation.hpp"

namespace divcs {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t r) {
  return splitmix64(seed ^ splitmix64(r + 0x5851f42d4c957f2dULL));
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  const std::int64_t workers =
      std::clamp<std::int64_t>(std::int64_t(std::thread::hardware_concurrency()), 1, n);
  if (workers <= 1) {
    for (std::int64_t r = 0; r < n; ++r) fn(r);
    return;
  }
  std::vector<std::jthread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (std::int64_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::int64_t r = w; r < n; r += workers) fn(r);
      } catch (...) {
        errors[std::size_t(w)] = std::current_exception();
      }
    });
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void SimReport::finalize(std::int64_t min_replications_for_assert) {
  violation_count = 0;
  for (auto v : first_violation) violation_count += v > 0 ? 1 : 0;
  replications = std::int64_t(first_violation.size());
  const double R = double(std::max<std::int64_t>(replications, 1));
  violation_rate = double(violation_count) / R;
  standard_error = std::sqrt(violation_rate * (1 - violation_rate) / R);
  threshold = target + 3 * std::sqrt(target * (1 - target) / R);
  asserted = replications >= min_replications_for_assert;
  passed = !asserted || violation_rate <= threshold;
}

std::string SimReport::to_json(bool with_timing) const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["replications"] = replications;
  j["horizon"] = horizon;
  j["violation_count"] = violation_count;
  j["violation_rate"] = violation_rate;
  j["standard_error"] = standard_error;
  j["target"] = target;
  j["threshold"] = threshold;
  j["asserted"] = asserted;
  j["passed"] = passed;
  j["seed"] = seed;
  if (with_timing) j["wall_time_s"] = wall_time_s;
  return j.dump();
}

std::string SimReport::per_replicate_csv() const {
  std::ostringstream os;
  os << "replicate,violated,first_violation\n";
  for (std::size_t r = 0; r < first_violation.size(); ++r)
    os << r << ',' << (first_violation[r] > 0 ? 1 : 0) << ',' << first_violation[r] << '\n';
  return os.str();
}

}  // namespace divcs
