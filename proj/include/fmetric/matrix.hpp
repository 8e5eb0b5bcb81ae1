#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fmetric {

/// Dense row-major n x n table.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  T& at(std::size_t i, std::size_t j) {
    check(i, j);
    return data_[i * n_ + j];
  }
  const T& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return data_[i * n_ + j];
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("matrix index out of range");
  }

  std::size_t n_ = 0;
  std::vector<T> data_;
};

using DistanceTable = SquareMatrix<double>;

/// Absolute tolerance used for every real comparison unless overridden.
inline constexpr double kDefaultTol = 1e-9;

}  // namespace fmetric
