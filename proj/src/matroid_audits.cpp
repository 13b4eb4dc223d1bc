#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "embedlab/errors.hpp"
#include "embedlab/matroid.hpp"

namespace embedlab {

namespace {

std::string window_text(const ClosureContext& ctx, std::size_t n,
                        std::int64_t bound) {
  std::string out = ctx.describe() + ", n=" + std::to_string(n) + ", ";
  if (ctx.ring().is_finite()) return out + "all residues";
  return out + "entries in [" + std::to_string(-bound) + "," + std::to_string(bound) + "]";
}

IntVec mat_vec(const IntMatrix& h, const IntVec& x, const RingDescriptor& ring) {
  IntVec out(h.rows(), 0);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < h.cols(); ++j) s = ring.reduce(s + ring.reduce(h(i, j) * x[j]));
    out[i] = s;
  }
  return out;
}

IntVec vec_add(const IntVec& a, const IntVec& b, const RingDescriptor& ring) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.reduce(a[i] + b[i]);
  return out;
}

IntVec vec_scale(const IntVec& a, std::int64_t r, const RingDescriptor& ring) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.reduce(a[i] * r);
  return out;
}

IntMatrix columns_matrix(const std::vector<IntVec>& cols, std::size_t n) {
  return IntMatrix::from_columns(cols, n);
}

std::string cols_to_string(const std::vector<IntVec>& cols) {
  std::string out = "{";
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ",";
    out += vec_to_string(cols[i]);
  }
  return out + "}";
}

class Sampler {
 public:
  Sampler(std::vector<std::int64_t> values, std::uint64_t seed)
      : values_(std::move(values)), rng_(seed) {}

  std::int64_t entry() {
    return values_[std::uniform_int_distribution<std::size_t>(0, values_.size() - 1)(rng_)];
  }
  std::size_t range(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  IntVec vec(std::size_t n) {
    IntVec v(n);
    for (auto& e : v) e = entry();
    return v;
  }
  IntMatrix matrix(std::size_t r, std::size_t c) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) m(i, j) = entry();
    }
    return m;
  }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::vector<std::int64_t> values_;
  std::mt19937_64 rng_;
};

// Rejection sampling; nullopt after too many attempts.
std::optional<IntMatrix> sample_matrix(Sampler& s, std::size_t r, std::size_t c,
                                       const std::function<bool(const IntMatrix&)>& ok,
                                       std::size_t attempts = 2000) {
  for (std::size_t i = 0; i < attempts; ++i) {
    IntMatrix m = s.matrix(r, c);
    if (ok(m)) return m;
  }
  return std::nullopt;
}

std::vector<std::size_t> bits_to_indices(std::uint64_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask >> i & 1U) out.push_back(i);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

ExchangeReport exchange_audit(const ClosureContext& ctx, std::size_t n,
                              std::int64_t bound, std::uint64_t ceiling,
                              std::size_t keep) {
  if (n == 0) throw DomainMismatch("exchange audit needs n >= 1");
  ExchangeReport rep;
  rep.n = n;
  rep.window = window_text(ctx, n, bound);
  auto vecs = enumerate_vectors(ctx.ring_values(bound), n);
  const std::uint64_t v = vecs.size();
  std::uint64_t total = v * v;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    total *= v;
    if (total > ceiling) break;
  }
  if (total > ceiling) {
    throw SearchSpaceTooLarge("exchange search of " + std::to_string(total) +
                              "+ triples exceeds ceiling " + std::to_string(ceiling));
  }

  const bool right = ctx.side() == ClosureSide::FromRightModule;
  MixedRadixCounter hctr(v, n - 1);
  for (; !hctr.done(); hctr.advance()) {
    std::vector<IntVec> h;
    for (auto d : hctr.digits()) h.push_back(vecs[d]);
    for (const auto& u : vecs) {
      if (ctx.in_closure(u, h, n)) {
        rep.triples_checked += v;
        continue;
      }
      auto hu = h;
      hu.push_back(u);
      for (const auto& t : vecs) {
        ++rep.triples_checked;
        auto ht = h;
        ht.push_back(t);
        if (!ctx.in_closure(u, ht, n) || ctx.in_closure(t, hu, n)) continue;
        ++rep.violation_count;
        if (rep.violations.size() >= keep) continue;
        ExchangeViolation w;
        w.h = columns_matrix(h, n);
        w.u = u;
        w.t = t;
        if (right) {
          w.ann_h = ctx.subset_to_string(ctx.annihilator(n, h));
          w.ann_hu = ctx.subset_to_string(ctx.annihilator(n, hu));
          w.ann_ht = ctx.subset_to_string(ctx.annihilator(n, ht));
        } else {
          w.ann_h = ctx.subset_to_string(ctx.image_span(n, h));
          w.ann_hu = ctx.subset_to_string(ctx.image_span(n, hu));
          w.ann_ht = ctx.subset_to_string(ctx.image_span(n, ht));
        }
        rep.violations.push_back(std::move(w));
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

AuditReport closure_axioms_audit(const ClosureContext& ctx, std::size_t n,
                                 const SampleSpec& spec) {
  AuditReport rep;
  rep.audit = "closure axioms";
  rep.window = window_text(ctx, n, spec.bound) + ", " + std::to_string(spec.trials) +
               " samples, seed " + std::to_string(spec.seed);
  const auto& ring = ctx.ring();
  auto values = ctx.ring_values(spec.bound);
  Sampler smp(values, spec.seed);
  auto all = enumerate_vectors(values, n);
  // Candidate vectors to test membership against.
  auto candidates = [&]() {
    if (all.size() <= 729) return all;
    std::vector<IntVec> out;
    for (int i = 0; i < 200; ++i) out.push_back(smp.vec(n));
    return out;
  };

  if (n > 0) {
    IntVec e(n, 0);
    e[0] = 1;
    rep.record("cl(empty) proper", !ctx.in_closure(e, {}, n),
               [] { return std::string("e_1 lies in cl(empty)"); });
  }

  for (std::size_t trial = 0; trial < spec.trials; ++trial) {
    std::vector<IntVec> s;
    for (std::size_t k = smp.range(0, 3); k > 0; --k) s.push_back(smp.vec(n));
    std::vector<IntVec> t = s;
    for (std::size_t k = smp.range(0, 2); k > 0; --k) t.push_back(smp.vec(n));
    const std::size_t n2 = smp.range(1, n + 1);
    IntMatrix h = smp.matrix(n2, n);
    auto xs = candidates();
    auto tag = [&](const IntVec& x) {
      return "S=" + cols_to_string(s) + " x=" + vec_to_string(x);
    };

    for (const auto& x : s) {
      rep.record("extensive", ctx.in_closure(x, s, n), [&] { return tag(x); });
    }
    std::vector<IntVec> closed;
    for (const auto& x : xs) {
      bool in_s = ctx.in_closure(x, s, n);
      if (in_s) closed.push_back(x);
      rep.record("monotone", !in_s || ctx.in_closure(x, t, n), [&] { return tag(x); });
    }
    for (const auto& x : xs) {
      rep.record("idempotent", !ctx.in_closure(x, closed, n) || ctx.in_closure(x, s, n),
                 [&] { return tag(x); });
    }
    for (std::size_t k = 0; k < std::min<std::size_t>(closed.size(), 20); ++k) {
      const auto& a = closed[smp.range(0, closed.size() - 1)];
      const auto& b = closed[smp.range(0, closed.size() - 1)];
      std::int64_t r = smp.entry();
      bool ok = ctx.in_closure(vec_add(a, b, ring), s, n) &&
                ctx.in_closure(vec_scale(a, r, ring), s, n);
      rep.record("closed sets are submodules", ok, [&] {
        return "S=" + cols_to_string(s) + " a=" + vec_to_string(a) + " b=" + vec_to_string(b) +
               " r=" + std::to_string(r);
      });
    }

    // h(cl S) in cl(hS)
    std::vector<IntVec> hs;
    for (const auto& x : s) hs.push_back(mat_vec(h, x, ring));
    bool image_ok = true;
    for (const auto& x : closed) {
      bool ok = ctx.in_closure(mat_vec(h, x, ring), hs, n2);
      image_ok = image_ok && ok;
      rep.record("image of closure", ok, [&] {
        return "h=" + h.to_string() + " " + tag(x);
      });
    }
    // h^{-1}(closed) is closed, with the closed set cl(hT)
    std::vector<IntVec> ht;
    for (const auto& x : t) ht.push_back(mat_vec(h, x, ring));
    std::vector<IntVec> pre;
    for (const auto& x : xs) {
      if (ctx.in_closure(mat_vec(h, x, ring), ht, n2)) pre.push_back(x);
    }
    bool pre_ok = true;
    for (const auto& x : xs) {
      bool ok = !ctx.in_closure(x, pre, n) || ctx.in_closure(mat_vec(h, x, ring), ht, n2);
      pre_ok = pre_ok && ok;
      rep.record("inverse image of closed set", ok, [&] {
        return "h=" + h.to_string() + " T=" + cols_to_string(t) + " x=" + vec_to_string(x);
      });
    }
    rep.record("image and inverse-image forms agree", image_ok == pre_ok,
               [&] { return "h=" + h.to_string() + " S=" + cols_to_string(s); });
  }
  return rep;
}

// ---------------------------------------------------------------------------

AuditReport strong_lemmas_audit(const ClosureContext& ctx, std::size_t max_n,
                                std::size_t trials, std::uint64_t seed) {
  if (!ctx.ring().is_finite()) throw DomainMismatch("strong-lemma audit needs a finite ring");
  if (max_n == 0) throw DomainMismatch("max_n must be >= 1");
  AuditReport rep;
  rep.audit = "strong-matrix lemmas";
  rep.window = ctx.describe() + ", sizes <= " + std::to_string(max_n) + ", " +
               std::to_string(trials) + " instances per clause, seed " + std::to_string(seed);
  const auto& ring = ctx.ring();
  Sampler smp(ctx.ring_values(0), seed);
  auto rs = [&](const IntMatrix& h) { return ctx.is_right_strong(h); };
  auto ls = [&](const IntMatrix& h) { return ctx.is_left_strong(h); };
  auto st = [&](const IntMatrix& h) { return ctx.is_strong(h); };
  auto show = [](const IntMatrix& h) { return h.to_string(); };
  const std::size_t budget = trials * 50;  // attempts per clause

  // basics (i)
  for (std::size_t k = 0; k < trials; ++k) {
    std::size_t n = smp.range(0, max_n);
    rep.record("basics(i) identity is strong", st(IntMatrix::identity(n)),
               [&] { return "n=" + std::to_string(n); });
  }

  // basics (ii): products
  for (std::size_t k = 0, att = 0; k < trials && att < budget; ++att) {
    std::size_t a = smp.range(1, max_n), b = smp.range(1, max_n), c = smp.range(1, max_n);
    std::size_t dims[3] = {a, b, c};
    std::sort(dims, dims + 3);
    auto A = sample_matrix(smp, dims[0], dims[1], rs, 50);
    auto B = sample_matrix(smp, dims[1], dims[2], rs, 50);
    if (!A || !B) continue;
    ++k;
    IntMatrix p = multiply(*A, *B, ring);
    rep.record("basics(ii) right strong closed under products", rs(p),
               [&] { return show(*A) + " * " + show(*B); });
  }
  for (std::size_t k = 0, att = 0; k < trials && att < budget; ++att) {
    std::size_t dims[3] = {smp.range(1, max_n), smp.range(1, max_n), smp.range(1, max_n)};
    std::sort(dims, dims + 3, std::greater<>());
    auto A = sample_matrix(smp, dims[0], dims[1], ls, 50);
    auto B = sample_matrix(smp, dims[1], dims[2], ls, 50);
    if (!A || !B) continue;
    ++k;
    IntMatrix p = multiply(*A, *B, ring);
    rep.record("basics(ii) left strong closed under products", ls(p),
               [&] { return show(*A) + " * " + show(*B); });
  }

  // basics (iii)
  for (std::size_t k = 0, att = 0; k < trials && att < budget; ++att) {
    std::size_t n = smp.range(1, max_n);
    std::size_t m = smp.range(n, max_n);
    auto H = sample_matrix(smp, n, m, rs, 50);
    if (!H) continue;
    ++k;
    IntMatrix wider = H->with_column(smp.vec(n));
    IntMatrix shorter = H->drop_row(smp.range(0, n - 1));
    rep.record("basics(iii) right strong: adjoin column, delete row",
               rs(wider) && rs(shorter), [&] { return show(*H); });
  }
  for (std::size_t k = 0, att = 0; k < trials && att < budget; ++att) {
    std::size_t n = smp.range(1, max_n);
    std::size_t m = smp.range(1, n);
    auto H = sample_matrix(smp, n, m, ls, 50);
    if (!H) continue;
    ++k;
    bool ok = ls(H->drop_column(smp.range(0, m - 1)));
    if (n < max_n) {
      IntMatrix taller(n + 1, m);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) taller(i, j) = (*H)(i, j);
      }
      for (std::size_t j = 0; j < m; ++j) taller(n, j) = smp.entry();
      ok = ok && ls(taller);
    }
    rep.record("basics(iii) left strong: delete column, adjoin row", ok,
               [&] { return show(*H); });
  }

  // e_i lemma
  for (std::size_t k = 0; k < trials; ++k) {
    std::size_t n = smp.range(1, max_n);
    std::size_t m = smp.range(1, max_n);
    IntMatrix H = smp.matrix(n, m);
    std::uint64_t mask = smp.range(1, (std::size_t{1} << n) - 1);
    auto drop = bits_to_indices(mask, n);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1U)) keep.push_back(i);
    }
    IntMatrix h1 = H.select_rows(keep);
    IntMatrix h2 = H;
    for (auto i : drop) {
      IntVec e(n, 0);
      e[i] = 1;
      h2 = h2.with_column(e);
    }
    bool ok = rs(h1) == rs(h2) && ls(h1) == ls(h2);
    rep.record("e_i: deleting rows vs adjoining e_i", ok,
               [&] { return show(H) + " rows " + std::to_string(mask); });
  }

  // strong_n-1 (i), (ii), (v)
  for (std::size_t k = 0, att = 0; k < trials && att < budget; ++att) {
    std::size_t n = smp.range(1, max_n), m = smp.range(1, max_n);
    IntMatrix H = smp.matrix(n, m);
    if (!rs(H)) continue;
    ++k;
    rep.record("strong_n-1(i) right strong has n <= n'", n <= m, [&] { return show(H); });
  }
  for (std::size_t k = 0, att = 0; k < trials && att < budget; ++att) {
    std::size_t n = smp.range(1, max_n), m = smp.range(1, max_n);
    IntMatrix H = smp.matrix(n, m);
    if (!ls(H)) continue;
    ++k;
    rep.record("strong_n-1(ii) left strong has n >= n'", n >= m, [&] { return show(H); });
  }

  // (iii): column subsets of a right-strong matrix
  for (std::size_t k = 0, att = 0; k < trials && att < budget; ++att) {
    std::size_t n = smp.range(1, max_n), m = smp.range(n, max_n);
    IntMatrix H = smp.matrix(n, m);
    if (!rs(H)) continue;
    ++k;
    const std::size_t subsets = std::size_t{1} << m;
    std::vector<char> r(subsets), l(subsets);
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      IntMatrix sub = H.select_columns(bits_to_indices(mask, m));
      r[mask] = rs(sub);
      l[mask] = ls(sub);
    }
    bool ok = true;
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      bool minimal_r = r[mask];
      bool maximal_l = l[mask];
      for (std::size_t j = 0; j < m; ++j) {
        if (mask >> j & 1U) {
          minimal_r = minimal_r && !r[mask & ~(std::size_t{1} << j)];
        } else {
          maximal_l = maximal_l && !l[mask | (std::size_t{1} << j)];
        }
      }
      ok = ok && minimal_r == maximal_l && (!minimal_r || (r[mask] && l[mask]));
    }
    rep.record("strong_n-1(iii) minimal right strong = maximal left strong (columns)", ok,
               [&] { return show(H); });
  }
  // (iv): row subsets of a left-strong matrix
  for (std::size_t k = 0, att = 0; k < trials && att < budget; ++att) {
    std::size_t n = smp.range(1, max_n), m = smp.range(1, n);
    IntMatrix H = smp.matrix(n, m);
    if (!ls(H)) continue;
    ++k;
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<char> r(subsets), l(subsets);
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      IntMatrix sub = H.select_rows(bits_to_indices(mask, n));
      r[mask] = rs(sub);
      l[mask] = ls(sub);
    }
    bool ok = true;
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      bool minimal_l = l[mask];
      bool maximal_r = r[mask];
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1U) {
          minimal_l = minimal_l && !l[mask & ~(std::size_t{1} << i)];
        } else {
          maximal_r = maximal_r && !r[mask | (std::size_t{1} << i)];
        }
      }
      ok = ok && minimal_l == maximal_r && (!minimal_l || (r[mask] && l[mask]));
    }
    rep.record("strong_n-1(iv) minimal left strong = maximal right strong (rows)", ok,
               [&] { return show(H); });
  }
  for (std::size_t k = 0, att = 0; k < trials && att < budget; ++att) {
    std::size_t n = smp.range(1, max_n), m = smp.range(1, max_n);
    IntMatrix H = smp.matrix(n, m);
    bool r = rs(H), l = ls(H);
    if (!r && !l) continue;
    ++k;
    rep.record("strong_n-1(v) one-sided strong is strong iff square",
               (r && l) == (n == m), [&] { return show(H); });
  }

  // (vi): maximal strong submatrices are m x m
  for (std::size_t k = 0; k < trials; ++k) {
    std::size_t n = smp.range(1, max_n), m = smp.range(1, max_n);
    IntMatrix H = smp.matrix(n, m);
    // a maximal independent set of columns, greedily
    std::vector<IntVec> indep;
    for (std::size_t j = 0; j < m; ++j) {
      if (!ctx.in_closure(H.column(j), indep, n)) indep.push_back(H.column(j));
    }
    const std::size_t rank = indep.size();
    const std::size_t rows = std::size_t{1} << n, cols = std::size_t{1} << m;
    std::vector<char> strong(rows * cols);
    for (std::size_t ri = 0; ri < rows; ++ri) {
      IntMatrix byrow = H.select_rows(bits_to_indices(ri, n));
      for (std::size_t ci = 0; ci < cols; ++ci) {
        strong[ri * cols + ci] = st(byrow.select_columns(bits_to_indices(ci, m)));
      }
    }
    bool ok = true;
    std::string bad;
    for (std::size_t ri = 0; ri < rows; ++ri) {
      for (std::size_t ci = 0; ci < cols; ++ci) {
        if (!strong[ri * cols + ci]) continue;
        bool maximal = true;
        for (std::size_t r2 = 0; r2 < rows && maximal; ++r2) {
          if ((r2 & ri) != ri) continue;
          for (std::size_t c2 = 0; c2 < cols && maximal; ++c2) {
            if ((c2 & ci) != ci || (r2 == ri && c2 == ci)) continue;
            if (strong[r2 * cols + c2]) maximal = false;
          }
        }
        if (!maximal) continue;
        auto pr = static_cast<std::size_t>(std::popcount(ri));
        auto pc = static_cast<std::size_t>(std::popcount(ci));
        if (pr != rank || pc != rank) {
          ok = false;
          bad = "rows " + std::to_string(ri) + " cols " + std::to_string(ci);
        }
      }
    }
    rep.record("strong_n-1(vi) maximal strong submatrices are m x m", ok,
               [&] { return show(H) + " " + bad + " m=" + std::to_string(rank); });
  }

  // (vii)
  for (std::size_t k = 0, att = 0; k < trials && att < budget; ++att) {
    std::size_t n = smp.range(1, max_n);
    IntMatrix H = smp.matrix(n, n);
    std::vector<std::size_t> head(n - 1);
    std::iota(head.begin(), head.end(), 0);
    IntMatrix block = H.select_rows(head).select_columns(head);
    if (!st(block)) continue;
    ++k;
    bool last_free = !ctx.in_closure(H.column(n - 1), H.drop_column(n - 1));
    rep.record("strong_n-1(vii) strong iff last column outside closure of the rest",
               st(H) == last_free, [&] { return show(H); });
  }
  return rep;
}

// ---------------------------------------------------------------------------

AuditReport either_or_audit(const ClosureContext& ctx, std::size_t n,
                            std::int64_t bound, std::uint64_t ceiling) {
  if (!ctx.module().is_finite()) throw InfiniteCarrier("either/or audit needs a finite module");
  if (n == 0) throw DomainMismatch("either/or audit needs n >= 1");
  AuditReport rep;
  rep.audit = "either/or";
  rep.window = window_text(ctx, n, bound);
  auto values = ctx.ring_values(bound);
  auto vecs = enumerate_vectors(values, n);
  const std::uint64_t msize = ctx.module().size();

  std::uint64_t count = vecs.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    count *= vecs.size();
    if (count > ceiling) {
      throw SearchSpaceTooLarge("either/or search exceeds ceiling " + std::to_string(ceiling));
    }
  }

  std::vector<std::size_t> top(n - 1);
  std::iota(top.begin(), top.end(), 0);

  // Every maximal M-invertible square submatrix A of h (rows I, columns J)
  // has ann(h) = ann(columns J of h).
  auto check_max_inv = [&](const IntMatrix& h) {
    const std::size_t rows = std::size_t{1} << h.rows();
    const std::size_t cols = std::size_t{1} << h.cols();
    std::vector<char> inv(rows * cols, 0);
    for (std::size_t ri = 0; ri < rows; ++ri) {
      for (std::size_t ci = 0; ci < cols; ++ci) {
        if (std::popcount(ri) != std::popcount(ci)) continue;
        inv[ri * cols + ci] = ctx.m_invertible(
            h.select_rows(bits_to_indices(ri, h.rows())).select_columns(bits_to_indices(ci, h.cols())));
      }
    }
    ModuleSubset whole = ctx.annihilator(h);
    for (std::size_t ri = 0; ri < rows; ++ri) {
      for (std::size_t ci = 0; ci < cols; ++ci) {
        if (!inv[ri * cols + ci]) continue;
        bool maximal = true;
        for (std::size_t i = 0; i < h.rows() && maximal; ++i) {
          if (ri >> i & 1U) continue;
          for (std::size_t j = 0; j < h.cols() && maximal; ++j) {
            if (ci >> j & 1U) continue;
            if (inv[(ri | std::size_t{1} << i) * cols + (ci | std::size_t{1} << j)]) maximal = false;
          }
        }
        if (!maximal) continue;
        bool ok = ctx.annihilator(h.select_columns(bits_to_indices(ci, h.cols()))) == whole;
        rep.record("max_inv annihilator equality", ok, [&] {
          return "H=" + h.to_string() + " cols " + std::to_string(ci);
        });
      }
    }
  };

  MixedRadixCounter xctr(vecs.size(), n - 1);
  for (; !xctr.done(); xctr.advance()) {
    std::vector<IntVec> xcols;
    for (auto d : xctr.digits()) xcols.push_back(vecs[d]);
    IntMatrix x = IntMatrix::from_columns(xcols, n);
    if (!ctx.m_invertible(x.select_rows(top))) continue;
    ModuleSubset k = ctx.annihilator(x);
    std::vector<std::uint64_t> kcodes;
    for (std::uint64_t c = 0; c < k.universe; ++c) {
      if (k.test(c)) kcodes.push_back(c);
    }
    check_max_inv(x);
    for (const auto& y : vecs) {
      IntVec yn = ctx.normalize(y);
      std::set<ModElem> image;
      bool zero = true;
      for (auto c : kcodes) {
        auto a = ctx.decode(c, n);
        ModElem s = 0;
        for (std::size_t i = 0; i < n; ++i) s = ctx.module().add(s, ctx.module().act(a[i], yn[i]));
        zero = zero && s == 0;
        image.insert(s);
      }
      bool bijective = kcodes.size() == msize && image.size() == msize;
      rep.record("zero on K or bijective K -> M", zero || bijective, [&] {
        return "X=" + x.to_string() + " y=" + vec_to_string(y) + " |K|=" +
               std::to_string(kcodes.size()) + " |yK|=" + std::to_string(image.size());
      });
      IntMatrix xy = x.with_column(y);
      if (bijective) {
        rep.record("appending a bijective y gives an M-invertible matrix",
                   ctx.m_invertible(xy),
                   [&] { return "X=" + x.to_string() + " y=" + vec_to_string(y); });
      }
      check_max_inv(xy);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

AuditReport restricted_exchange_audit(const ClosureContext& ctx, std::size_t n,
                                      const SampleSpec& spec) {
  AuditReport rep;
  rep.audit = "restricted exchange consequences";
  auto vecs = enumerate_vectors(ctx.ring_values(spec.bound), n);
  Sampler smp(ctx.ring_values(spec.bound), spec.seed);
  std::vector<std::vector<IntVec>> families;
  if (vecs.size() <= 12) {
    rep.window = window_text(ctx, n, spec.bound) + ", every subset S";
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vecs.size()); ++mask) {
      std::vector<IntVec> s;
      for (std::size_t i = 0; i < vecs.size(); ++i) {
        if (mask >> i & 1U) s.push_back(vecs[i]);
      }
      families.push_back(std::move(s));
    }
  } else {
    rep.window = window_text(ctx, n, spec.bound) + ", " + std::to_string(spec.trials) +
                 " sampled S of size <= 6, seed " + std::to_string(spec.seed);
    for (std::size_t t = 0; t < spec.trials; ++t) {
      std::vector<IntVec> s;
      for (std::size_t k = smp.range(0, 6); k > 0; --k) s.push_back(smp.vec(n));
      families.push_back(std::move(s));
    }
  }

  for (const auto& s : families) {
    IntMatrix sm = IntMatrix::from_columns(s, n);
    // subsets of S with at most n elements
    std::vector<std::vector<IntVec>> small;
    std::function<void(std::size_t, std::vector<IntVec>&)> rec =
        [&](std::size_t start, std::vector<IntVec>& cur) {
          small.push_back(cur);
          if (cur.size() == n) return;
          for (std::size_t i = start; i < s.size(); ++i) {
            cur.push_back(s[i]);
            rec(i + 1, cur);
            cur.pop_back();
          }
        };
    std::vector<IntVec> cur;
    rec(0, cur);

    bool has_le_n = false;
    bool has_lt_n = false;
    for (const auto& s0 : small) {
      if (ctx.same_closure(IntMatrix::from_columns(s0, n), sm)) {
        has_le_n = true;
        if (s0.size() < n) has_lt_n = true;
      }
    }
    rep.record("(ii) subset of size <= n with equal closure", has_le_n,
               [&] { return "S=" + cols_to_string(s); });
    if (!ctx.is_right_strong(sm)) {
      rep.record("(iii) proper closure has a subset of size < n", has_lt_n,
                 [&] { return "S=" + cols_to_string(s); });
    }
    for (const auto& x : vecs) {
      bool whole = ctx.in_closure(x, s, n);
      bool some = false;
      for (const auto& s0 : small) {
        if (ctx.in_closure(x, s0, n)) {
          some = true;
          break;
        }
      }
      rep.record("(iv) finitary: cl(S) is the union over small subsets", whole == some,
                 [&] { return "S=" + cols_to_string(s) + " x=" + vec_to_string(x); });
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

AuditReport field_oracle_audit(const ClosureContext& ctx, std::size_t n,
                               const SampleSpec& spec) {
  const auto& ring = ctx.ring();
  const bool prime = ring.kind == RingKind::PrimeField && ctx.module().is_finite() &&
                     ctx.module().factors() == std::vector<std::int64_t>{ring.modulus};
  if (!prime && !ctx.rational()) {
    throw DomainMismatch("the span oracle needs M = F_p over F_p or the Q backend");
  }
  AuditReport rep;
  rep.audit = "closure vs span oracle";
  rep.window = window_text(ctx, n, spec.bound) + ", " + std::to_string(spec.trials) +
               " samples, seed " + std::to_string(spec.seed);
  Sampler smp(ctx.ring_values(spec.bound), spec.seed);
  auto rank = [&](const IntMatrix& m) {
    return prime ? rank_mod_p(m, ring.modulus) : rational_rank(m);
  };
  for (std::size_t t = 0; t < spec.trials; ++t) {
    std::vector<IntVec> s;
    for (std::size_t k = smp.range(0, n + 1); k > 0; --k) s.push_back(smp.vec(n));
    IntVec x = smp.vec(n);
    IntMatrix sm = IntMatrix::from_columns(s, n);
    bool oracle = rank(sm.with_column(x)) == rank(sm);
    rep.record("membership agrees with rank", ctx.in_closure(x, s, n) == oracle,
               [&] { return "S=" + cols_to_string(s) + " x=" + vec_to_string(x); });
  }
  return rep;
}

}  // namespace embedlab
