#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace agnoboost {

// Dense row-major feature matrix. Also used as the "unlabeled pool" type.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(std::size_t cols) : cols_(cols), cols_set_(true) {}

  std::size_t rows() const { return cols_ == 0 ? 0 : values_.size() / cols_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return values_.empty(); }

  void reserve_rows(std::size_t n) { values_.reserve(n * cols_); }

  void append_row(std::span<const double> row) {
    if (!cols_set_) {
      if (row.empty()) throw std::invalid_argument("DataMatrix: empty row");
      cols_ = row.size();
      cols_set_ = true;
    } else if (row.size() != cols_) {
      throw std::invalid_argument("DataMatrix: row dimension mismatch");
    }
    values_.insert(values_.end(), row.begin(), row.end());
  }

  std::span<const double> row(std::size_t i) const {
    if (i >= rows()) throw std::out_of_range("DataMatrix: row index out of range");
    return {values_.data() + i * cols_, cols_};
  }

 private:
  std::size_t cols_ = 0;
  bool cols_set_ = false;
  std::vector<double> values_;
};

}  // namespace agnoboost
