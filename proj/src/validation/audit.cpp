#include <algorithm>
#include <cmath>
#include <vector>

#include "divcs/error.hpp"
#include "divcs/estimators.hpp"
#include "divcs/validation.hpp"

namespace divcs {

const char* to_string(AuditKind kind) {
  switch (kind) {
    case AuditKind::TV: return "tv";
    case AuditKind::KL: return "kl";
    case AuditKind::KS: return "ks";
    case AuditKind::W1: return "w1";
    case AuditKind::MMD: return "mmd";
    case AuditKind::OT: return "ot";
    case AuditKind::UStat: return "ustat";
  }
  return "unknown";
}

namespace {

// Fixed reference measures on {0, 1} and {0, 1, 2}; dyadic weights keep
// the arithmetic exact enough for a 1e-12 residual.
std::vector<double> reference(int k) {
  if (k == 2) return {0.25, 0.75};
  return {0.25, 0.5, 0.25};
}

// Divergence of the empirical measure with the given counts from the
// fixed reference.
class AuditDivergence {
 public:
  AuditDivergence(AuditKind kind, int k) : kind_(kind), k_(k), q_(reference(k)) {
    for (int i = 0; i < k; ++i) support_.push_back(double(i));
    points_ = EmpiricalSample::from_values(support_);
    cost_.resize(k, k);
    h_.resize(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        cost_(i, j) = std::abs(i - j);
        // symmetric, deliberately not PSD
        h_(i, j) = (i == j) ? 1.0 : -0.5 * (i + j);
      }
  }

  double operator()(const std::vector<int>& counts) const {
    int n = 0;
    for (int c : counts) n += c;
    if (kind_ == AuditKind::UStat) {
      // (1/(n(n-1))) sum_{i != j} h(z_i, z_j) from counts
      double s = 0;
      for (int a = 0; a < k_; ++a)
        for (int b = 0; b < k_; ++b)
          s += h_(a, b) * double(counts[std::size_t(a)]) *
               double(counts[std::size_t(b)] - (a == b ? 1 : 0));
      return s / (double(n) * double(n - 1));
    }
    std::vector<double> p(static_cast<std::size_t>(k_));
    for (int a = 0; a < k_; ++a) p[std::size_t(a)] = double(counts[std::size_t(a)]) / double(n);
    switch (kind_) {
      case AuditKind::TV: return tv_discrete(p, q_);
      case AuditKind::KL: return kl_discrete(p, q_);
      case AuditKind::KS: return ks_discrete(p, q_);
      case AuditKind::W1: return w1_discrete(support_, p, q_);
      case AuditKind::MMD: return mmd_weighted(points_, p, q_, KernelSpec::linear());
      case AuditKind::OT: return ot_cost_discrete(p, q_, cost_);
      case AuditKind::UStat: break;
    }
    return 0;
  }

 private:
  AuditKind kind_;
  int k_;
  std::vector<double> q_, support_;
  EmpiricalSample points_;
  Eigen::MatrixXd cost_, h_;
};

}  // namespace

AuditResult leave_one_out_audit(AuditKind kind, int alphabet_size, int t_max,
                                double tolerance) {
  require(alphabet_size == 2 || alphabet_size == 3, ErrorCode::InvalidArgument,
          "audit alphabet size must be 2 or 3");
  require(t_max >= 1 && t_max <= 5, ErrorCode::InvalidArgument, "audit needs 1 <= t_max <= 5");
  AuditDivergence D(kind, alphabet_size);
  AuditResult res;
  res.kind = kind;
  const int t_min = (kind == AuditKind::UStat) ? 2 : 1;
  for (int t = t_min; t <= t_max; ++t) {
    const int n = t + 1;
    std::vector<int> seq(std::size_t(n), 0);
    for (;;) {
      std::vector<int> counts(std::size_t(alphabet_size), 0);
      for (int v : seq) ++counts[std::size_t(v)];
      double full = D(counts);
      double loo = 0;
      for (int v : seq) {
        --counts[std::size_t(v)];
        loo += D(counts);
        ++counts[std::size_t(v)];
      }
      loo /= double(n);
      double residual = full - loo;
      bool ok = (kind == AuditKind::UStat) ? std::abs(residual) <= tolerance
                                           : residual <= tolerance;
      res.worst_residual = std::max(res.worst_residual,
                                    kind == AuditKind::UStat ? std::abs(residual) : residual);
      ++res.cases;
      if (!ok) ++res.violations;
      // next sequence in lexicographic order
      int pos = n - 1;
      while (pos >= 0 && seq[std::size_t(pos)] == alphabet_size - 1) seq[std::size_t(pos--)] = 0;
      if (pos < 0) break;
      ++seq[std::size_t(pos)];
    }
  }
  res.passed = res.violations == 0;
  return res;
}

}  // namespace divcs
