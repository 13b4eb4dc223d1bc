#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "embedlab/int_matrix.hpp"
#include "embedlab/module.hpp"
#include "embedlab/rational_linalg.hpp"
#include "embedlab/report.hpp"
#include "embedlab/scalars.hpp"

namespace embedlab {

using IntVec = std::vector<std::int64_t>;

enum class ClosureSide { FromRightModule, FromLeftModule };

/// A subset of M^n: a bitset over the codes of a finite M^n, or a
/// Q-subspace given by a reduced basis.
struct ModuleSubset {
  std::size_t n = 0;
  bool rational = false;
  std::vector<std::uint64_t> bits;
  std::uint64_t universe = 0;
  std::vector<QVector> basis;

  bool test(std::uint64_t code) const { return (bits[code >> 6] >> (code & 63)) & 1U; }
  void set(std::uint64_t code) { bits[code >> 6] |= std::uint64_t{1} << (code & 63); }
  /// this contains o.
  bool contains(const ModuleSubset& o) const;
  friend bool operator==(const ModuleSubset& a, const ModuleSubset& b) {
    return a.contains(b) && b.contains(a);
  }
  /// Number of elements (finite only).
  std::uint64_t count() const;
  bool is_zero() const;
};

/// The closure operator on R^n induced by a module: from a right module M,
/// x is in cl(S) iff ann_{M^n}(x) contains ann_{M^n}(S); from a left module
/// L, iff xL lies in the sum of the sL.
///
/// Finite modules are handled by enumeration, M = Q over R = Z or Q by
/// exact elimination. Caches make a context cheap to query repeatedly but
/// not safe to share between threads.
class ClosureContext {
 public:
  ClosureContext(RingDescriptor ring, ModulePresentation module,
                 ClosureSide side = ClosureSide::FromRightModule);

  /// `--ring Zmod(4) --module Zmod(4)`; module `Q` selects the rational
  /// backend.
  static ClosureContext parse(std::string_view ring, std::string_view module,
                              ClosureSide side = ClosureSide::FromRightModule);

  const RingDescriptor& ring() const { return ring_; }
  const ModulePresentation& module() const { return module_; }
  ClosureSide side() const { return side_; }
  bool rational() const { return module_.is_rational_backend(); }
  std::string describe() const;

  /// Ring elements used by searches: every residue of a finite ring, or the
  /// window 0, 1, -1, ..., bound, -bound for Z and Q.
  std::vector<std::int64_t> ring_values(std::int64_t bound) const;

  /// Canonical representative of a vector (reduced mod the exponent of M
  /// when only the action matters).
  IntVec normalize(const IntVec& x) const;

  /// ann_{M^n}(S) for the columns of s (right modules only).
  ModuleSubset annihilator(const IntMatrix& s) const;
  ModuleSubset annihilator(std::size_t n, const std::vector<IntVec>& cols) const;
  /// The sum of the sL (left modules only).
  ModuleSubset image_span(std::size_t n, const std::vector<IntVec>& cols) const;

  bool in_closure(const IntVec& x, const std::vector<IntVec>& s,
                  std::size_t n) const;
  bool in_closure(const IntVec& x, const IntMatrix& s) const;
  /// cl(a) is contained in cl(b) (columns, same height).
  bool closure_subset(const IntMatrix& a, const IntMatrix& b) const;
  bool same_closure(const IntMatrix& a, const IntMatrix& b) const {
    return closure_subset(a, b) && closure_subset(b, a);
  }

  bool is_right_strong(const IntMatrix& h) const;
  bool is_left_strong(const IntMatrix& h) const;
  bool is_strong(const IntMatrix& h) const {
    return is_right_strong(h) && is_left_strong(h);
  }

  /// Square a acts bijectively on M^n (finite right modules).
  bool m_invertible(const IntMatrix& a) const;

  /// Elements of a finite subset of M^n, rendered for reports.
  std::string subset_to_string(const ModuleSubset& s) const;
  /// Tuple of M-elements with a given code in M^n.
  std::vector<ModElem> decode(std::uint64_t code, std::size_t n) const;
  std::uint64_t encode(const std::vector<ModElem>& a) const;
  std::uint64_t universe(std::size_t n) const;

  /// Ceiling on |M|^n for enumeration.
  static constexpr std::uint64_t kMaxUniverse = std::uint64_t{1} << 20;

 private:
  ModuleSubset empty_subset(std::size_t n) const;
  ModuleSubset full_subset(std::size_t n) const;
  const ModuleSubset& column_annihilator(const IntVec& x) const;

  RingDescriptor ring_;
  ModulePresentation module_;
  ClosureSide side_;
  std::int64_t exponent_ = 0;  // lcm of the cyclic factors
  mutable std::map<IntVec, ModuleSubset> ann_cache_;
};

/// Every vector of length n over `values`, last entry fastest.
std::vector<IntVec> enumerate_vectors(const std::vector<std::int64_t>& values,
                                      std::size_t n);

std::string vec_to_string(const IntVec& v);

// ---------------------------------------------------------------------------
// Audits

struct ExchangeViolation {
  IntMatrix h;  // n x (n-1), the common columns
  IntVec u;
  IntVec t;
  std::string ann_h, ann_hu, ann_ht;  // ann(H) > ann(H,u) > ann(H,t)
};

struct ExchangeReport {
  std::string window;
  std::size_t n = 0;
  std::uint64_t triples_checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<ExchangeViolation> violations;  // first few, in search order
  bool found() const { return violation_count > 0; }
};

/// Searches (H, u, t) with H of size n x (n-1) and ann(H) > ann(H,u) > ann(H,t)
/// strictly, i.e. u outside cl(H), u in cl(H,t), t outside cl(H,u).
ExchangeReport exchange_audit(const ClosureContext& ctx, std::size_t n,
                              std::int64_t bound,
                              std::uint64_t ceiling = 50000000,
                              std::size_t keep = 10);

struct SampleSpec {
  std::size_t trials = 200;
  std::int64_t bound = 3;
  std::uint64_t seed = 1;
  bool exhaustive = false;
};

/// Extensive, monotone, idempotent, closed sets are submodules, cl(empty)
/// proper, h(cl S) in cl(hS), and closed sets pull back to closed sets.
AuditReport closure_axioms_audit(const ClosureContext& ctx, std::size_t n,
                                 const SampleSpec& spec);

/// Random instances of the strong-matrix lemmas over the context's ring
/// (a finite field acting on itself is the intended setting).
AuditReport strong_lemmas_audit(const ClosureContext& ctx, std::size_t max_n,
                                std::size_t trials, std::uint64_t seed);

/// For every n x (n-1) X with M-invertible top block and every y: y is zero
/// on K = ann(X) or maps K bijectively to M; bijective y extends X to an
/// M-invertible matrix; ann(H) equals the annihilator of the columns through
/// any maximal M-invertible square submatrix.
AuditReport either_or_audit(const ClosureContext& ctx, std::size_t n,
                            std::int64_t bound, std::uint64_t ceiling = 5000000);

/// Consequences of restricted exchange: subsets of size <= n (< n when the
/// closure is proper) with the same closure, and finitariness.
AuditReport restricted_exchange_audit(const ClosureContext& ctx, std::size_t n,
                                      const SampleSpec& spec);

/// Over F_p with M = F_p: closure agrees with rank over F_p.
AuditReport field_oracle_audit(const ClosureContext& ctx, std::size_t n,
                               const SampleSpec& spec);

}  // namespace embedlab
