#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace embedlab {

using QVector = std::vector<mpq_class>;

/// Dense rational matrix. Row count and column count are stored separately so
/// n x 0 and 0 x m matrices are representable.
struct QMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<QVector> data;

  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), data(r, QVector(c, mpq_class(0))) {}
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);
  static QMatrix from_columns(const std::vector<QVector>& columns,
                              std::size_t height);

  mpq_class& at(std::size_t i, std::size_t j) { return data[i][j]; }
  const mpq_class& at(std::size_t i, std::size_t j) const { return data[i][j]; }
  QMatrix transpose() const;
};

struct RrefResult {
  QMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form (pivots equal 1, zeros above and below).
RrefResult rref(QMatrix a);

std::size_t rank(const QMatrix& a);

/// Basis of the left kernel {v in Q^n : vA = 0} of an n x m matrix, returned
/// as the rows of a reduced echelon matrix.
std::vector<QVector> rational_kernel_basis(const QMatrix& a);

/// True iff x lies in the Q-span of the given vectors (all of length n).
bool in_span(const std::vector<QVector>& vectors, const QVector& x,
             std::size_t n);

/// v * A for a row vector v.
QVector row_times(const QVector& v, const QMatrix& a);

}  // namespace embedlab
