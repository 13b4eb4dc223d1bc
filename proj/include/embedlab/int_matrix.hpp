#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "embedlab/scalars.hpp"

namespace embedlab {

/// Dense integer matrix. Entries are integer representatives; a ring
/// descriptor says how to read them (as integers, or as residues mod m).
/// Empty shapes (n x 0, 0 x n, 0 x 0) are allowed.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                             std::size_t cols);
  static IntMatrix from_columns(
      const std::vector<std::vector<std::int64_t>>& columns, std::size_t height);
  /// `[[1,2],[3,4]]`; `[]` is 0x0.
  static IntMatrix parse(std::string_view text);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  std::int64_t operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<std::int64_t> column(std::size_t j) const;
  std::vector<std::int64_t> row(std::size_t i) const;
  IntMatrix with_column(const std::vector<std::int64_t>& c) const;
  IntMatrix drop_column(std::size_t j) const;
  IntMatrix drop_row(std::size_t i) const;
  IntMatrix select_columns(const std::vector<std::size_t>& idx) const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix transpose() const;
  /// Entries replaced by their canonical residues in `ring`.
  IntMatrix reduced(const RingDescriptor& ring) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Product reduced in `ring`.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b,
                   const RingDescriptor& ring);

/// Fraction-free (Bareiss) determinant over Z; det of 0x0 is 1.
mpz_class determinant(const IntMatrix& a);

/// Rank over Q of an integer matrix.
std::size_t rational_rank(const IntMatrix& a);

/// Rank over F_p (p prime) of an integer matrix.
std::size_t rank_mod_p(const IntMatrix& a, std::int64_t p);

}  // namespace embedlab
