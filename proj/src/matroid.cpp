#include "embedlab/matroid.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>

#include "embedlab/errors.hpp"

namespace embedlab {

// ---------------------------------------------------------------------------
// ModuleSubset

bool ModuleSubset::contains(const ModuleSubset& o) const {
  if (n != o.n || rational != o.rational) throw DomainMismatch("incomparable subsets");
  if (rational) {
    return std::all_of(o.basis.begin(), o.basis.end(),
                       [&](const QVector& v) { return in_span(basis, v, n); });
  }
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (o.bits[i] & ~bits[i]) return false;
  }
  return true;
}

std::uint64_t ModuleSubset::count() const {
  if (rational) throw InfiniteCarrier("subspace of Q^n");
  std::uint64_t c = 0;
  for (auto w : bits) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

bool ModuleSubset::is_zero() const {
  if (rational) return basis.empty();
  return count() == 1 && test(0);
}

// ---------------------------------------------------------------------------
// Helpers

std::vector<IntVec> enumerate_vectors(const std::vector<std::int64_t>& values,
                                      std::size_t n) {
  std::vector<IntVec> out;
  if (values.empty()) return out;
  MixedRadixCounter ctr(values.size(), n);
  for (; !ctr.done(); ctr.advance()) {
    IntVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = values[ctr.digits()[i]];
    out.push_back(std::move(v));
  }
  return out;
}

std::string vec_to_string(const IntVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

namespace {

QVector to_qvector(const IntVec& v) {
  QVector out;
  out.reserve(v.size());
  for (auto e : v) out.emplace_back(static_cast<long>(e));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ClosureContext

ClosureContext::ClosureContext(RingDescriptor ring, ModulePresentation module,
                               ClosureSide side)
    : ring_(ring), module_(std::move(module)), side_(side) {
  if (!(module_.ring() == ring_)) {
    throw DomainMismatch("module is over " + module_.ring().to_string() +
                         ", context over " + ring_.to_string());
  }
  if (module_.is_finite()) {
    exponent_ = 1;
    for (auto d : module_.factors()) exponent_ = std::lcm(exponent_, d);
  }
}

ClosureContext ClosureContext::parse(std::string_view ring,
                                     std::string_view module, ClosureSide side) {
  auto r = RingDescriptor::parse(ring);
  return ClosureContext(r, ModulePresentation::parse(r, module), side);
}

std::string ClosureContext::describe() const {
  return std::string("R=") + ring_.to_string() + " " +
         (side_ == ClosureSide::FromRightModule ? "M=" : "L=") +
         module_.to_string();
}

std::vector<std::int64_t> ClosureContext::ring_values(std::int64_t bound) const {
  std::vector<std::int64_t> out;
  if (ring_.is_finite()) {
    for (std::int64_t r = 0; r < ring_.modulus; ++r) out.push_back(r);
    return out;
  }
  out.push_back(0);
  for (std::int64_t k = 1; k <= bound; ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

IntVec ClosureContext::normalize(const IntVec& x) const {
  IntVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (exponent_ > 0) {
      out[i] = ((x[i] % exponent_) + exponent_) % exponent_;
    } else {
      out[i] = ring_.reduce(x[i]);
    }
  }
  return out;
}

std::uint64_t ClosureContext::universe(std::size_t n) const {
  std::uint64_t m = module_.size();
  std::uint64_t u = 1;
  for (std::size_t i = 0; i < n; ++i) {
    u *= m;
    if (u > kMaxUniverse) {
      throw SearchSpaceTooLarge("|M|^" + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxUniverse));
    }
  }
  return u;
}

std::vector<ModElem> ClosureContext::decode(std::uint64_t code, std::size_t n) const {
  std::uint64_t m = module_.size();
  std::vector<ModElem> a(n);
  for (std::size_t i = n; i-- > 0;) {
    a[i] = static_cast<ModElem>(code % m);
    code /= m;
  }
  return a;
}

std::uint64_t ClosureContext::encode(const std::vector<ModElem>& a) const {
  std::uint64_t m = module_.size();
  std::uint64_t code = 0;
  for (auto e : a) code = code * m + e;
  return code;
}

ModuleSubset ClosureContext::empty_subset(std::size_t n) const {
  ModuleSubset s;
  s.n = n;
  s.rational = rational();
  if (!s.rational) {
    s.universe = universe(n);
    s.bits.assign((s.universe + 63) / 64, 0);
  }
  return s;
}

ModuleSubset ClosureContext::full_subset(std::size_t n) const {
  ModuleSubset s = empty_subset(n);
  if (s.rational) {
    for (std::size_t i = 0; i < n; ++i) {
      QVector e(n, 0);
      e[i] = 1;
      s.basis.push_back(std::move(e));
    }
    return s;
  }
  for (std::uint64_t c = 0; c < s.universe; ++c) s.set(c);
  return s;
}

const ModuleSubset& ClosureContext::column_annihilator(const IntVec& x) const {
  IntVec key = normalize(x);
  auto it = ann_cache_.find(key);
  if (it != ann_cache_.end()) return it->second;
  const std::size_t n = key.size();
  ModuleSubset s = empty_subset(n);
  const std::uint64_t m = module_.size();
  // act_tables[i][a] = a * x_i
  std::vector<std::vector<ModElem>> act_tables(n, std::vector<ModElem>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint64_t a = 0; a < m; ++a) {
      act_tables[i][a] = module_.act(static_cast<ModElem>(a), key[i]);
    }
  }
  std::vector<ModElem> digits(n, 0);
  for (std::uint64_t code = 0; code < s.universe; ++code) {
    ModElem sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum = module_.add(sum, act_tables[i][digits[i]]);
    if (sum == 0) s.set(code);
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] < m) break;
      digits[i] = 0;
    }
  }
  return ann_cache_.emplace(std::move(key), std::move(s)).first->second;
}

ModuleSubset ClosureContext::annihilator(std::size_t n,
                                         const std::vector<IntVec>& cols) const {
  for (const auto& c : cols) {
    if (c.size() != n) throw DomainMismatch("column height differs from n");
  }
  if (rational()) {
    ModuleSubset s = empty_subset(n);
    if (cols.empty()) return full_subset(n);
    std::vector<QVector> qc;
    for (const auto& c : cols) qc.push_back(to_qvector(c));
    s.basis = rational_kernel_basis(QMatrix::from_columns(qc, n));
    return s;
  }
  ModuleSubset s = full_subset(n);
  for (const auto& c : cols) {
    const auto& a = column_annihilator(c);
    for (std::size_t w = 0; w < s.bits.size(); ++w) s.bits[w] &= a.bits[w];
  }
  return s;
}

ModuleSubset ClosureContext::annihilator(const IntMatrix& s) const {
  std::vector<IntVec> cols;
  for (std::size_t j = 0; j < s.cols(); ++j) cols.push_back(s.column(j));
  return annihilator(s.rows(), cols);
}

ModuleSubset ClosureContext::image_span(std::size_t n,
                                        const std::vector<IntVec>& cols) const {
  ModuleSubset s = empty_subset(n);
  if (rational()) {
    std::vector<QVector> qc;
    for (const auto& c : cols) qc.push_back(to_qvector(c));
    if (!qc.empty()) {
      auto r = rref(QMatrix::from_rows(qc, n));
      for (std::size_t i = 0; i < r.pivot_columns.size(); ++i) {
        s.basis.push_back(r.reduced.data[i]);
      }
    }
    return s;
  }
  const std::uint64_t m = module_.size();
  std::vector<std::uint64_t> gens;
  for (const auto& c : cols) {
    IntVec key = normalize(c);
    for (std::uint64_t l = 0; l < m; ++l) {
      std::vector<ModElem> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = module_.act(static_cast<ModElem>(l), key[i]);
      std::uint64_t code = encode(v);
      if (code != 0) gens.push_back(code);
    }
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  s.set(0);
  std::deque<std::uint64_t> queue{0};
  while (!queue.empty()) {
    auto a = decode(queue.front(), n);
    queue.pop_front();
    for (auto g : gens) {
      auto b = decode(g, n);
      std::vector<ModElem> sum(n);
      for (std::size_t i = 0; i < n; ++i) sum[i] = module_.add(a[i], b[i]);
      std::uint64_t code = encode(sum);
      if (!s.test(code)) {
        s.set(code);
        queue.push_back(code);
      }
    }
  }
  return s;
}

bool ClosureContext::in_closure(const IntVec& x, const std::vector<IntVec>& s,
                                std::size_t n) const {
  if (x.size() != n) throw DomainMismatch("vector height differs from n");
  if (n == 0) return true;
  if (rational()) {
    std::vector<QVector> qc;
    for (const auto& c : s) qc.push_back(to_qvector(c));
    return in_span(qc, to_qvector(x), n);
  }
  if (side_ == ClosureSide::FromRightModule) {
    return column_annihilator(x).contains(annihilator(n, s));
  }
  ModuleSubset span = image_span(n, s);
  IntVec key = normalize(x);
  const std::uint64_t m = module_.size();
  for (std::uint64_t l = 0; l < m; ++l) {
    std::vector<ModElem> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = module_.act(static_cast<ModElem>(l), key[i]);
    if (!span.test(encode(v))) return false;
  }
  return true;
}

bool ClosureContext::in_closure(const IntVec& x, const IntMatrix& s) const {
  std::vector<IntVec> cols;
  for (std::size_t j = 0; j < s.cols(); ++j) cols.push_back(s.column(j));
  return in_closure(x, cols, s.rows());
}

bool ClosureContext::closure_subset(const IntMatrix& a, const IntMatrix& b) const {
  if (a.rows() != b.rows()) throw DomainMismatch("heights differ");
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (!in_closure(a.column(j), b)) return false;
  }
  return true;
}

bool ClosureContext::is_right_strong(const IntMatrix& h) const {
  const std::size_t n = h.rows();
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    if (!in_closure(e, h)) return false;
  }
  return true;
}

bool ClosureContext::is_left_strong(const IntMatrix& h) const {
  for (std::size_t j = 0; j < h.cols(); ++j) {
    if (in_closure(h.column(j), h.drop_column(j))) return false;
  }
  return true;
}

bool ClosureContext::m_invertible(const IntMatrix& a) const {
  if (!a.is_square()) return false;
  if (rational()) return rational_rank(a) == a.rows();
  return annihilator(a).is_zero();
}

std::string ClosureContext::subset_to_string(const ModuleSubset& s) const {
  if (s.rational) {
    if (s.basis.empty()) return "{0}";
    std::string out = "span{";
    for (std::size_t i = 0; i < s.basis.size(); ++i) {
      if (i) out += ",";
      out += "(";
      for (std::size_t j = 0; j < s.basis[i].size(); ++j) {
        if (j) out += ",";
        out += rational_to_string(s.basis[i][j]);
      }
      out += ")";
    }
    return out + "}";
  }
  if (s.count() == s.universe && s.universe > 16) return "M^" + std::to_string(s.n);
  if (s.count() > 16) return "<" + std::to_string(s.count()) + " elements>";
  std::string out = "{";
  bool first = true;
  for (std::uint64_t c = 0; c < s.universe; ++c) {
    if (!s.test(c)) continue;
    if (!first) out += ",";
    first = false;
    auto a = decode(c, s.n);
    if (s.n == 1) {
      out += module_.element_to_string(a[0]);
    } else {
      out += "(";
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ",";
        out += module_.element_to_string(a[i]);
      }
      out += ")";
    }
  }
  return out + "}";
}

}  // namespace embedlab
