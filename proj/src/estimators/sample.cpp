#include "divcs/sample.hpp"

#include <algorithm>

#include "divcs/error.hpp"

namespace divcs {

EmpiricalSample::EmpiricalSample(std::size_t dim) : dim_(dim) {
  require(dim >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
}

EmpiricalSample EmpiricalSample::from_values(std::vector<double> values) {
  EmpiricalSample s(1);
  s.data_ = std::move(values);
  return s;
}

EmpiricalSample EmpiricalSample::from_points(const std::vector<std::vector<double>>& points) {
  require(!points.empty(), ErrorCode::EmptySample, "no points");
  EmpiricalSample s(points.front().size());
  for (const auto& p : points) s.push(std::span<const double>(p));
  return s;
}

void EmpiricalSample::push(double x) {
  require(dim_ == 1, ErrorCode::DimensionMismatch, "scalar push into a multivariate sample");
  data_.push_back(x);
}

void EmpiricalSample::push(std::span<const double> x) {
  require(x.size() == dim_, ErrorCode::DimensionMismatch,
          "point has dimension " + std::to_string(x.size()) + ", sample has " +
              std::to_string(dim_));
  data_.insert(data_.end(), x.begin(), x.end());
}

std::vector<double> EmpiricalSample::sorted_values() const {
  require(dim_ == 1, ErrorCode::UnsupportedDimension, "sorting needs d = 1");
  std::vector<double> v = data_;
  std::sort(v.begin(), v.end());
  return v;
}

CategoricalCounts::CategoricalCounts(std::size_t k) : counts_(k, 0) {
  require(k >= 2, ErrorCode::InvalidArgument, "alphabet size must be >= 2");
}

CategoricalCounts::CategoricalCounts(std::vector<std::int64_t> counts)
    : counts_(std::move(counts)) {
  require(counts_.size() >= 2, ErrorCode::InvalidArgument, "alphabet size must be >= 2");
  for (auto c : counts_) {
    require(c >= 0, ErrorCode::InvalidArgument, "counts must be nonnegative");
    total_ += c;
  }
}

void CategoricalCounts::add(std::size_t category) {
  require(category < counts_.size(), ErrorCode::OutOfRange,
          "category " + std::to_string(category) + " outside alphabet");
  ++counts_[category];
  ++total_;
}

}  // namespace divcs
