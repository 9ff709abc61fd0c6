#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace amoeba {

/// Dense square matrix stored row-major. Rows are cities, columns are visit steps
/// wherever the matrix describes lanes.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t lanes() const noexcept { return data_.size(); }

  T& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * n_ + col]; }
  const T& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * n_ + col];
  }

  [[nodiscard]] std::span<T> flat() noexcept { return data_; }
  [[nodiscard]] std::span<const T> flat() const noexcept { return data_; }

  [[nodiscard]] std::span<T> row(std::size_t r) noexcept { return flat().subspan(r * n_, n_); }
  [[nodiscard]] std::span<const T> row(std::size_t r) const noexcept {
    return flat().subspan(r * n_, n_);
  }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using Matrix = SquareMatrix<double>;
using BinaryMatrix = SquareMatrix<std::uint8_t>;

}  // namespace amoeba
