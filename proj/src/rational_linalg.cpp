#include "embedlab/rational_linalg.hpp"

#include <stdexcept>

namespace embedlab {

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix");
    m.data[i] = rows[i];
  }
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& columns,
                              std::size_t height) {
  QMatrix m(height, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != height) {
      throw std::invalid_argument("column height mismatch");
    }
    for (std::size_t i = 0; i < height; ++i) m.data[i][j] = columns[j][i];
  }
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t.data[j][i] = data[i][j];
  }
  return t;
}

RrefResult rref(QMatrix a) {
  RrefResult out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
    std::size_t piv = row;
    while (piv < a.rows && a.data[piv][col] == 0) ++piv;
    if (piv == a.rows) continue;
    std::swap(a.data[row], a.data[piv]);
    mpq_class inv = 1 / a.data[row][col];
    for (std::size_t j = col; j < a.cols; ++j) a.data[row][j] *= inv;
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == row || a.data[i][col] == 0) continue;
      mpq_class f = a.data[i][col];
      for (std::size_t j = col; j < a.cols; ++j) {
        a.data[i][j] -= f * a.data[row][j];
      }
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

std::size_t rank(const QMatrix& a) { return rref(a).pivot_columns.size(); }

std::vector<QVector> rational_kernel_basis(const QMatrix& a) {
  // vA = 0  <=>  A^T v^T = 0: read the null space off the RREF of A^T.
  const std::size_t n = a.rows;
  auto r = rref(a.transpose());
  std::vector<bool> is_pivot(n, false);
  for (auto c : r.pivot_columns) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QVector v(n, mpq_class(0));
    v[f] = 1;
    for (std::size_t k = 0; k < r.pivot_columns.size(); ++k) {
      v[r.pivot_columns[k]] = -r.reduced.data[k][f];
    }
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;
  auto canon = rref(QMatrix::from_rows(basis, n));
  canon.reduced.data.resize(canon.pivot_columns.size());
  return canon.reduced.data;
}

bool in_span(const std::vector<QVector>& vectors, const QVector& x,
             std::size_t n) {
  auto base = QMatrix::from_rows(vectors, n);
  std::size_t r0 = rank(base);
  base.data.push_back(x);
  ++base.rows;
  return rank(base) == r0;
}

QVector row_times(const QVector& v, const QMatrix& a) {
  QVector out(a.cols, mpq_class(0));
  for (std::size_t i = 0; i < a.rows; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols; ++j) out[j] += v[i] * a.data[i][j];
  }
  return out;
}

}  // namespace embedlab
