#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "noisecrypt/error.hpp"

namespace noisecrypt {

/// Dense row-major matrix. Used for images and for every key matrix.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;

  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Grid(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw ParameterError("grid data length " + std::to_string(data_.size()) +
                           " does not match " + std::to_string(rows_) + "x" +
                           std::to_string(cols_));
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<T> flat() noexcept { return data_; }
  std::span<const T> flat() const noexcept { return data_; }

  bool same_shape(const auto& other) const noexcept {
    return rows_ == other.rows() && cols_ == other.cols();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// M x N 8-bit grayscale image; rows() is the height M, cols() the width N.
using GrayImage = Grid<std::uint8_t>;
/// Per-pixel S-box selector, every entry in {0, 1, 2}.
using SelectorGrid = Grid<std::uint8_t>;
using ByteGrid = Grid<std::uint8_t>;

template <typename T>
std::vector<T> flatten_row_major(const Grid<T>& g) {
  return {g.flat().begin(), g.flat().end()};
}

namespace detail {

inline std::string shape_string(const auto& g) {
  return std::to_string(g.rows()) + "x" + std::to_string(g.cols());
}

inline void require_same_shape(const auto& a, const auto& b, const char* what) {
  if (!a.same_shape(b)) {
    throw ParameterError(std::string(what) + ": dimension mismatch " + shape_string(a) + " vs " +
                         shape_string(b));
  }
}

}  // namespace detail

}  // namespace noisecrypt
