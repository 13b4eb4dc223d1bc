#include "embedlab/int_matrix.hpp"

#include <json.hpp>

#include "embedlab/errors.hpp"
#include "embedlab/rational_linalg.hpp"

namespace embedlab {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(
    const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DomainMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(
    const std::vector<std::vector<std::int64_t>>& columns, std::size_t height) {
  IntMatrix m(height, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != height) throw DomainMismatch("ragged columns");
    for (std::size_t i = 0; i < height; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::parse(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad matrix literal '" + std::string(text) + "'");
  }
  if (!j.is_array()) throw ParseError("matrix literal must be a list of rows");
  std::vector<std::vector<std::int64_t>> rows;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw ParseError("matrix rows must be lists");
    std::vector<std::int64_t> r;
    for (const auto& e : j[i]) {
      if (!e.is_number_integer()) throw ParseError("matrix entries must be integers");
      r.push_back(e.get<std::int64_t>());
    }
    if (i == 0) cols = r.size();
    if (r.size() != cols) throw ParseError("ragged matrix literal");
    rows.push_back(std::move(r));
  }
  return from_rows(rows, cols);
}

std::vector<std::int64_t> IntMatrix::column(std::size_t j) const {
  std::vector<std::int64_t> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<std::int64_t> IntMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

IntMatrix IntMatrix::with_column(const std::vector<std::int64_t>& c) const {
  if (c.size() != rows_) throw DomainMismatch("column height mismatch");
  IntMatrix m(rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    m(i, cols_) = c[i];
  }
  return m;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
  }
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
  }
  return m;
}

IntMatrix IntMatrix::drop_column(std::size_t j) const {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < cols_; ++k) {
    if (k != j) idx.push_back(k);
  }
  return select_columns(idx);
}

IntMatrix IntMatrix::drop_row(std::size_t i) const {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < rows_; ++k) {
    if (k != i) idx.push_back(k);
  }
  return select_rows(idx);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

IntMatrix IntMatrix::reduced(const RingDescriptor& ring) const {
  IntMatrix m = *this;
  for (auto& e : m.data_) e = ring.reduce(e);
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainMismatch("matrix shapes do not chain");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      std::int64_t x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  }
  return c;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b,
                   const RingDescriptor& ring) {
  return (a * b).reduced(ring);
}

std::string IntMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ",";
      out += std::to_string((*this)(i, j));
    }
    out += "]";
  }
  return out + "]";
}

mpz_class determinant(const IntMatrix& a) {
  if (!a.is_square()) throw DomainMismatch("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<long>(a(i, j));
  }
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::size_t rational_rank(const IntMatrix& a) {
  QMatrix q(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      q.at(i, j) = static_cast<long>(a(i, j));
    }
  }
  return rank(q);
}

std::size_t rank_mod_p(const IntMatrix& a, std::int64_t p) {
  auto ring = RingDescriptor::prime_field(p);
  IntMatrix m = a.reduced(ring);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
    mpz_class inv_z;
    mpz_class v = static_cast<long>(m(r, c));
    mpz_class pz = static_cast<long>(p);
    mpz_invert(inv_z.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
    std::int64_t inv = inv_z.get_si();
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = ring.reduce(m(r, j) * inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      std::int64_t f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        m(i, j) = ring.reduce(m(i, j) - f * m(r, j));
      }
    }
    ++r;
  }
  return r;
}

}  // namespace embedlab
