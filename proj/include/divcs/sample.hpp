#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace divcs {

// Ordered list of d-dimensional points, stored row-major.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(std::size_t dim = 1);
  static EmpiricalSample from_values(std::vector<double> values);
  static EmpiricalSample from_points(const std::vector<std::vector<double>>& points);

  void push(double x);
  void push(std::span<const double> x);

  std::size_t size() const { return data_.size() / dim_; }
  bool empty() const { return data_.empty(); }
  std::size_t dim() const { return dim_; }
  std::span<const double> point(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  // Coordinate of a one-dimensional sample.
  double value(std::size_t i) const { return data_[i * dim_]; }
  const std::vector<double>& raw() const { return data_; }
  // Values sorted ascending; requires dim() == 1.
  std::vector<double> sorted_values() const;

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

class CategoricalCounts {
 public:
  explicit CategoricalCounts(std::size_t k);
  CategoricalCounts(std::vector<std::int64_t> counts);

  void add(std::size_t category);
  std::size_t k() const { return counts_.size(); }
  std::int64_t total() const { return total_; }
  std::int64_t operator[](std::size_t j) const { return counts_[j]; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

}  // namespace divcs
