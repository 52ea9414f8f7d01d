#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "divcs/error.hpp"
#include "divcs/estimators.hpp"

namespace divcs {

namespace {

constexpr double kScale = 1e12;  // weight resolution of the flow problem

std::vector<std::int64_t> rationalize(std::span<const double> w, const char* name) {
  double sum = 0;
  for (double v : w) {
    require(v >= 0 && std::isfinite(v), ErrorCode::InvalidArgument,
            std::string(name) + " weights must be finite and >= 0");
    sum += v;
  }
  require(std::abs(sum - 1.0) <= 1e-12, ErrorCode::UnbalancedMarginals,
          std::string(name) + " weights sum to " + std::to_string(sum));
  std::vector<std::int64_t> out(w.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = std::llround(w[i] * kScale);
    total += out[i];
  }
  auto big = std::max_element(out.begin(), out.end());
  *big += std::int64_t(kScale) - total;
  return out;
}

struct Arc {
  int to;
  std::int64_t cap;
  double cost;
};

class FlowNetwork {
 public:
  explicit FlowNetwork(int n) : adj_(std::size_t(n)) {}

  int add(int from, int to, std::int64_t cap, double cost) {
    arcs_.push_back({to, cap, cost});
    arcs_.push_back({from, 0, -cost});
    adj_[std::size_t(from)].push_back(int(arcs_.size()) - 2);
    adj_[std::size_t(to)].push_back(int(arcs_.size()) - 1);
    return int(arcs_.size()) - 2;
  }

  // Successive shortest paths with Dijkstra on reduced costs. All
  // original costs are nonnegative, so zero potentials start feasible.
  void min_cost_flow(int src, int dst, std::int64_t amount) {
    const std::size_t n = adj_.size();
    std::vector<double> pot(n, 0.0), dist(n);
    std::vector<int> prev_arc(n);
    std::vector<char> done(n);
    const double inf = std::numeric_limits<double>::infinity();
    while (amount > 0) {
      std::fill(dist.begin(), dist.end(), inf);
      std::fill(done.begin(), done.end(), 0);
      std::fill(prev_arc.begin(), prev_arc.end(), -1);
      dist[std::size_t(src)] = 0;
      for (;;) {
        int u = -1;
        for (std::size_t v = 0; v < n; ++v)
          if (!done[v] && dist[v] < inf && (u < 0 || dist[v] < dist[std::size_t(u)])) u = int(v);
        if (u < 0) break;
        done[std::size_t(u)] = 1;
        for (int a : adj_[std::size_t(u)]) {
          const Arc& arc = arcs_[std::size_t(a)];
          if (arc.cap <= 0) continue;
          double rc = std::max(0.0, arc.cost + pot[std::size_t(u)] - pot[std::size_t(arc.to)]);
          double nd = dist[std::size_t(u)] + rc;
          if (nd < dist[std::size_t(arc.to)]) {
            dist[std::size_t(arc.to)] = nd;
            prev_arc[std::size_t(arc.to)] = a;
          }
        }
      }
      require(dist[std::size_t(dst)] < inf, ErrorCode::UnbalancedMarginals,
              "transport problem is infeasible");
      for (std::size_t v = 0; v < n; ++v)
        if (dist[v] < inf) pot[v] += dist[v];
      std::int64_t push = amount;
      for (int v = dst; v != src; v = arcs_[std::size_t(prev_arc[std::size_t(v)] ^ 1)].to)
        push = std::min(push, arcs_[std::size_t(prev_arc[std::size_t(v)])].cap);
      for (int v = dst; v != src; v = arcs_[std::size_t(prev_arc[std::size_t(v)] ^ 1)].to) {
        arcs_[std::size_t(prev_arc[std::size_t(v)])].cap -= push;
        arcs_[std::size_t(prev_arc[std::size_t(v)] ^ 1)].cap += push;
      }
      amount -= push;
    }
  }

  std::int64_t flow_on(int arc) const { return arcs_[std::size_t(arc ^ 1)].cap; }

 private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace

TransportResult ot_solve(std::span<const double> mu, std::span<const double> nu,
                         const Eigen::MatrixXd& cost) {
  const auto n = Eigen::Index(mu.size()), m = Eigen::Index(nu.size());
  require(n > 0 && m > 0, ErrorCode::EmptySample, "empty marginal");
  require(cost.rows() == n && cost.cols() == m, ErrorCode::DimensionMismatch,
          "cost matrix shape does not match the marginals");
  require(cost.allFinite() && cost.minCoeff() >= 0, ErrorCode::InvalidArgument,
          "costs must be finite and >= 0");
  auto a = rationalize(mu, "mu");
  auto b = rationalize(nu, "nu");

  const int src = 0, dst = int(n + m + 1);
  FlowNetwork net(int(n + m + 2));
  const auto total = std::int64_t(kScale);
  for (Eigen::Index i = 0; i < n; ++i) net.add(src, int(1 + i), a[std::size_t(i)], 0.0);
  for (Eigen::Index j = 0; j < m; ++j) net.add(int(1 + n + j), dst, b[std::size_t(j)], 0.0);
  std::vector<int> arc(std::size_t(n * m));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      arc[std::size_t(i * m + j)] = net.add(int(1 + i), int(1 + n + j), total, cost(i, j));
  net.min_cost_flow(src, dst, total);

  TransportResult r;
  r.plan.resize(n, m);
  std::vector<std::int64_t> flow(std::size_t(n * m));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      flow[std::size_t(i * m + j)] = net.flow_on(arc[std::size_t(i * m + j)]);
      r.plan(i, j) = double(flow[std::size_t(i * m + j)]) / kScale;
    }
  r.value = (r.plan.array() * cost.array()).sum();

  // Potentials: shortest distances in the residual graph of the optimal
  // flow from a virtual root joined to every node at cost 0.
  std::vector<double> d(std::size_t(n + m), 0.0);
  for (Eigen::Index round = 0; round <= n + m; ++round) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < m; ++j) {
        auto& du = d[std::size_t(i)];
        auto& dv = d[std::size_t(n + j)];
        const double c = cost(i, j);
        if (du + c < dv - 1e-15 * (1 + std::abs(dv))) {
          dv = du + c;
          changed = true;
        }
        if (flow[std::size_t(i * m + j)] > 0 && dv - c < du - 1e-15 * (1 + std::abs(du))) {
          du = dv - c;
          changed = true;
        }
      }
    if (!changed) break;
  }
  r.f.resize(n);
  r.g.resize(m);
  for (Eigen::Index i = 0; i < n; ++i) r.f(i) = -d[std::size_t(i)];
  for (Eigen::Index j = 0; j < m; ++j) r.g(j) = d[std::size_t(n + j)];
  r.dual_value = 0;
  for (Eigen::Index i = 0; i < n; ++i) r.dual_value += mu[std::size_t(i)] * r.f(i);
  for (Eigen::Index j = 0; j < m; ++j) r.dual_value += nu[std::size_t(j)] * r.g(j);
  r.duality_gap = r.value - r.dual_value;
  r.dual_violation = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      r.dual_violation = std::max(r.dual_violation, r.f(i) + r.g(j) - cost(i, j));
  return r;
}

double ot_cost_empirical(const EmpiricalSample& x, const EmpiricalSample& y,
                         const CostSpec& cost) {
  require(!x.empty() && !y.empty(), ErrorCode::EmptySample, "OT needs both samples nonempty");
  require(x.dim() == y.dim(), ErrorCode::DimensionMismatch, "samples differ in dimension");
  // merge repeated points so the flow network stays small
  auto atoms = [](const EmpiricalSample& s) {
    std::map<std::vector<double>, double> w;
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto p = s.point(i);
      w[std::vector<double>(p.begin(), p.end())] += 1.0 / double(s.size());
    }
    return w;
  };
  auto ax = atoms(x), ay = atoms(y);
  std::vector<double> mu, nu;
  Eigen::MatrixXd c(Eigen::Index(ax.size()), Eigen::Index(ay.size()));
  Eigen::Index i = 0;
  for (const auto& [px, wx] : ax) {
    mu.push_back(wx);
    Eigen::Index j = 0;
    for (const auto& [py, wy] : ay) c(i, j++) = cost(px, py);
    ++i;
  }
  for (const auto& kv : ay) nu.push_back(kv.second);
  return ot_solve(mu, nu, c).value;
}

}  // namespace divcs
