#pragma once

// Higman-style closure generation: the least subset Y of X closed under a
// list of partial operations X^n x I_n -> X, generated by a worklist, or
// emitted in increasing order when every operation strictly increases its
// arguments.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "embedlab/errors.hpp"

namespace embedlab::wqo {

/// One family s_n : X^n x I_n -> X. The index set is {0, ..., index_count-1};
/// the evaluator returns nullopt where the operation is undefined.
template <class X>
struct PartialOpFamily {
  std::size_t arity = 0;
  std::size_t index_count = 0;
  std::function<std::optional<X>(const std::vector<X>&, std::size_t)> eval;
};

struct ClosureBudget {
  std::size_t max_elements = 1000;
  std::size_t max_steps = 1000000;
};

template <class X>
struct ClosureResult {
  std::vector<X> elements;  // in generation order
  bool truncated = false;
};

namespace detail {

// Calls f on every tuple over elements[0..k] of length n that uses index k
// at least once (so each tuple is visited exactly once over all k).
template <class X, class F>
bool for_tuples_with_max(const std::vector<X>& elements, std::size_t k,
                         std::size_t n, F&& f) {
  if (n == 0) return true;
  std::vector<std::size_t> idx(n, 0);
  std::vector<X> args(n);
  while (true) {
    bool uses_k = false;
    for (std::size_t i = 0; i < n; ++i) uses_k = uses_k || idx[i] == k;
    if (uses_k) {
      for (std::size_t i = 0; i < n; ++i) args[i] = elements[idx[i]];
      if (!f(args)) return false;
    }
    std::size_t pos = n;
    while (true) {
      if (pos == 0) return true;
      --pos;
      if (++idx[pos] <= k) break;
      idx[pos] = 0;
    }
  }
}

}  // namespace detail

/// Worklist closure. Elements are deduplicated with the strict total order
/// `less`; generation order is deterministic.
template <class X, class Less = std::less<X>>
ClosureResult<X> close(const std::vector<PartialOpFamily<X>>& families,
                       const ClosureBudget& budget, Less less = Less{}) {
  ClosureResult<X> out;
  std::set<X, Less> seen(less);
  std::size_t steps = 0;
  bool stop = false;

  auto offer = [&](const std::optional<X>& v) {
    if (++steps > budget.max_steps) {
      out.truncated = true;
      stop = true;
      return;
    }
    if (!v || seen.count(*v)) return;
    if (out.elements.size() >= budget.max_elements) {
      out.truncated = true;
      stop = true;
      return;
    }
    seen.insert(*v);
    out.elements.push_back(*v);
  };

  for (const auto& fam : families) {
    if (fam.arity != 0) continue;
    for (std::size_t i = 0; i < fam.index_count && !stop; ++i) {
      offer(fam.eval({}, i));
    }
  }
  for (std::size_t k = 0; k < out.elements.size() && !stop; ++k) {
    for (const auto& fam : families) {
      if (fam.arity == 0 || stop) continue;
      // Snapshot: tuples may only use elements up to k.
      std::vector<X> prefix(out.elements.begin(),
                            out.elements.begin() + static_cast<std::ptrdiff_t>(k + 1));
      detail::for_tuples_with_max(prefix, k, fam.arity,
                                  [&](const std::vector<X>& args) {
                                    for (std::size_t i = 0;
                                         i < fam.index_count && !stop; ++i) {
                                      offer(fam.eval(args, i));
                                    }
                                    return !stop;
                                  });
    }
  }
  return out;
}

/// Emits the closure in strictly increasing order. Seeds arrive from a pull
/// function (nondecreasing, nullopt at the end); the pool minimum is emitted
/// only once the next seed is not below it, and successors of an emitted
/// element must be strictly above it (OrderViolation otherwise).
///
/// With auto_expand off the caller decides which emitted elements get
/// expanded, which lets a consumer prune branches it knows are dead.
template <class X, class Less = std::less<X>>
class OrderedCloser {
 public:
  using SeedFn = std::function<std::optional<X>()>;

  OrderedCloser(std::vector<PartialOpFamily<X>> families, SeedFn seeds,
                ClosureBudget budget, Less less = Less{}, bool auto_expand = true)
      : families_(std::move(families)),
        seeds_(std::move(seeds)),
        budget_(budget),
        less_(less),
        pool_(less),
        auto_expand_(auto_expand) {}

  /// Next element of Y, or nullopt when Y is exhausted or the budget hit.
  std::optional<X> next() {
    if (truncated_) return std::nullopt;
    if (!lookahead_loaded_) load_seed();
    while (lookahead_ && (pool_.empty() || !less_(*pool_.begin(), *lookahead_))) {
      insert(*lookahead_);
      load_seed();
    }
    if (pool_.empty()) return std::nullopt;
    if (emitted_.size() >= budget_.max_elements) {
      truncated_ = true;
      return std::nullopt;
    }
    X m = *pool_.begin();
    pool_.erase(pool_.begin());
    emitted_.push_back(m);
    last_ = m;
    if (auto_expand_) expand(m);
    return m;
  }

  /// Applies every non-zeroary family to tuples of emitted elements whose
  /// largest member is m (m must be the latest emitted element).
  void expand(const X& m) {
    for (const auto& fam : families_) {
      if (fam.arity == 0) continue;
      std::size_t k = emitted_.size() - 1;
      detail::for_tuples_with_max(emitted_, k, fam.arity,
                                  [&](const std::vector<X>& args) {
                                    for (std::size_t i = 0; i < fam.index_count; ++i) {
                                      if (++steps_ > budget_.max_steps) {
                                        truncated_ = true;
                                        return false;
                                      }
                                      auto v = fam.eval(args, i);
                                      if (!v) continue;
                                      if (!less_(m, *v)) {
                                        throw OrderViolation(
                                            "operation did not strictly increase its "
                                            "argument");
                                      }
                                      pool_.insert(*v);
                                    }
                                    return true;
                                  });
    }
  }

  bool truncated() const { return truncated_; }
  const std::vector<X>& emitted() const { return emitted_; }
  /// Generated but not yet emitted.
  const std::set<X, Less>& pool() const { return pool_; }
  /// True if x was emitted or is pending in the pool.
  bool known(const X& x) const {
    if (pool_.count(x)) return true;
    return std::binary_search(emitted_.begin(), emitted_.end(), x, less_);
  }

 private:
  void load_seed() {
    lookahead_loaded_ = true;
    lookahead_ = seeds_ ? seeds_() : std::nullopt;
    if (lookahead_ && prev_seed_ && less_(*lookahead_, *prev_seed_)) {
      throw OrderViolation("seed stream is not nondecreasing");
    }
    if (lookahead_) prev_seed_ = lookahead_;
  }

  void insert(const X& x) {
    if (last_ && !less_(*last_, x)) {
      if (less_(x, *last_)) throw OrderViolation("seed arrived below emitted element");
      return;  // duplicate of the last emitted element
    }
    pool_.insert(x);
  }

  std::vector<PartialOpFamily<X>> families_;
  SeedFn seeds_;
  ClosureBudget budget_;
  Less less_;
  std::set<X, Less> pool_;
  bool auto_expand_;
  std::vector<X> emitted_;
  std::optional<X> last_;
  std::optional<X> lookahead_;
  std::optional<X> prev_seed_;
  bool lookahead_loaded_ = false;
  bool truncated_ = false;
  std::size_t steps_ = 0;
};

/// Convenience: seeds from the zeroary families (in index order, which must
/// be nondecreasing) and full expansion; returns the emitted prefix.
template <class X, class Less = std::less<X>>
ClosureResult<X> ordered_close(const std::vector<PartialOpFamily<X>>& families,
                               const ClosureBudget& budget, Less less = Less{}) {
  std::vector<X> seeds;
  for (const auto& fam : families) {
    if (fam.arity != 0) continue;
    for (std::size_t i = 0; i < fam.index_count; ++i) {
      if (auto v = fam.eval({}, i)) seeds.push_back(*v);
    }
  }
  std::stable_sort(seeds.begin(), seeds.end(), less);
  std::size_t pos = 0;
  OrderedCloser<X, Less> closer(
      families,
      [seeds, pos]() mutable -> std::optional<X> {
        if (pos >= seeds.size()) return std::nullopt;
        return seeds[pos++];
      },
      budget, less);
  ClosureResult<X> out;
  while (auto v = closer.next()) out.elements.push_back(*v);
  out.truncated = closer.truncated();
  return out;
}

struct WpoReport {
  std::size_t sample_size = 0;
  /// Longest strictly descending subsequence, in sample order.
  std::size_t longest_descending = 0;
  /// Largest antichain (Dilworth, via bipartite matching on distinct elements).
  std::size_t max_antichain = 0;
  bool descending_pair_found() const { return longest_descending >= 2; }
};

/// `lt(a, b)` is the strict partial order; equal elements satisfy neither
/// lt(a, b) nor lt(b, a) and are identified by `eq`.
template <class X, class Lt, class Eq>
WpoReport wpo_probe(const std::vector<X>& sample, Lt lt, Eq eq) {
  WpoReport rep;
  rep.sample_size = sample.size();
  const std::size_t n = sample.size();
  std::vector<std::size_t> best(n, 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (lt(sample[j], sample[i])) best[j] = std::max(best[j], best[i] + 1);
    }
    rep.longest_descending = std::max(rep.longest_descending, best[j]);
  }

  std::vector<X> distinct;
  for (const auto& x : sample) {
    bool dup = false;
    for (const auto& d : distinct) dup = dup || eq(d, x);
    if (!dup) distinct.push_back(x);
  }
  const std::size_t m = distinct.size();
  std::vector<std::vector<std::size_t>> adj(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && lt(distinct[i], distinct[j])) adj[i].push_back(j);
    }
  }
  std::vector<long> match_right(m, -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment =
      [&](std::size_t u, std::vector<bool>& seen) {
        for (auto v : adj[u]) {
          if (seen[v]) continue;
          seen[v] = true;
          if (match_right[v] < 0 ||
              augment(static_cast<std::size_t>(match_right[v]), seen)) {
            match_right[v] = static_cast<long>(u);
            return true;
          }
        }
        return false;
      };
  std::size_t matching = 0;
  for (std::size_t u = 0; u < m; ++u) {
    std::vector<bool> seen(m, false);
    if (augment(u, seen)) ++matching;
  }
  rep.max_antichain = m - matching;
  return rep;
}

}  // namespace embedlab::wqo
