#pragma once

#include <cstddef>
#include <vector>

#include "detabp/error.hpp"

namespace detabp {

// Dense row-major rows x cols container for matrix-shaped data.
template <typename T>
class grid {
 public:
  grid() : rows_(0), cols_(0) {}
  grid(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const grid& b) const {
    return rows_ == b.rows_ && cols_ == b.cols_ && data_ == b.data_;
  }
  bool operator!=(const grid& b) const { return !(*this == b); }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

}  // namespace detabp
