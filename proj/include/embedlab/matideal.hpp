#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "embedlab/int_matrix.hpp"
#include "embedlab/matroid.hpp"
#include "embedlab/module.hpp"
#include "embedlab/report.hpp"
#include "embedlab/scalars.hpp"

namespace embedlab {

enum class Axis { Row, Column };

/// Block diagonal A (+) B.
IntMatrix diag_sum(const IntMatrix& a, const IntMatrix& b);

/// Determinantal sum along line r (0-based): A and B must agree off that
/// line, which becomes the sum of theirs. Entries are reduced in `ring`.
IntMatrix det_sum(const IntMatrix& a, const IntMatrix& b, std::size_t r, Axis axis,
                  const RingDescriptor& ring = RingDescriptor::integers());

/// A = B C with B n x (n-1), C (n-1) x n. Over Z and F_p this is rank < n;
/// over Z/m it is decided by searching every B.
bool is_non_full(const IntMatrix& a, const RingDescriptor& ring,
                 std::uint64_t ceiling = 2000000);

/// I_n + sign * e_ij.
IntMatrix elementary(std::size_t n, std::size_t i, std::size_t j, int sign);

/// A set of square matrices over R given by a decidable predicate.
class MatrixIdealSpec {
 public:
  enum class Kind { InducedNonInjective, InducedNonSurjective, DetDivisibleBy, ExplicitList };

  /// Matrices acting non-injectively on M^n.
  static MatrixIdealSpec induced_non_injective(RingDescriptor ring, ModulePresentation m);
  /// Matrices acting non-surjectively on M^n.
  static MatrixIdealSpec induced_non_surjective(RingDescriptor ring, ModulePresentation m);
  /// Integer matrices whose determinant is divisible by p.
  static MatrixIdealSpec det_divisible_by(std::int64_t p);
  static MatrixIdealSpec explicit_list(RingDescriptor ring, std::vector<IntMatrix> members);

  Kind kind() const { return kind_; }
  const RingDescriptor& ring() const { return ring_; }
  std::string describe() const;

  bool member(const IntMatrix& a) const;

 private:
  MatrixIdealSpec() = default;
  std::vector<std::int64_t> key(const IntMatrix& a) const;

  Kind kind_ = Kind::DetDivisibleBy;
  RingDescriptor ring_ = RingDescriptor::integers();
  std::shared_ptr<ClosureContext> ctx_;  // induced kinds
  std::int64_t p_ = 0;
  std::int64_t reduce_mod_ = 0;  // entries only matter mod this (0: not at all)
  std::vector<IntMatrix> list_;
  mutable std::shared_ptr<std::map<std::vector<std::int64_t>, bool>> memo_ =
      std::make_shared<std::map<std::vector<std::int64_t>, bool>>();
};

struct IdealWindow {
  std::size_t max_n = 2;     // operand sizes 1..max_n
  std::int64_t bound = 2;    // entries in [-bound, bound] over Z
};

/// Square matrices of size k with entries from `values`, row-major, last
/// entry fastest.
std::vector<IntMatrix> enumerate_square(const std::vector<std::int64_t>& values, std::size_t k);

/// Checks nonfull, diag_sum, col_sum, row_sum, cancel_one, one_excluded,
/// prime, elementary_left and elementary_right on every instance in the
/// window. Operands range over the window; composites may be larger.
AuditReport ideal_axioms_audit(const MatrixIdealSpec& spec, const IdealWindow& w);

enum class ModuleMode { Injective, Surjective };

/// A height-n column (injective mode) or length-n row (surjective mode)
/// pair showing the dichotomy failing for one X.
struct DichotomyWitness {
  IntMatrix x;
  IntVec good;  // injective on K / spans with I
  IntVec bad;   // nonzero on K but not injective / escapes I without spanning
};

/// Injective mode: K = ker(a -> aX) for X n x (n-1); surjective mode:
/// I = image of M^{n-1} under Z (n-1) x n. nullopt when the dichotomy holds.
std::optional<DichotomyWitness> dichotomy_witness(const ClosureContext& ctx,
                                                  const IntMatrix& x, ModuleMode mode,
                                                  const std::vector<std::int64_t>& values);

/// no_injection / kernel_dichotomy (injective mode) or no_surjection /
/// image_dichotomy (surjective mode) for heights 1..max_n, plus a verdict.
AuditReport module_conditions_audit(const ClosureContext& ctx, ModuleMode mode,
                                    const IdealWindow& w);

/// Row-sum closure versus closure under left multiplication by I +- e_ij,
/// the signed-swap identity, the lower-left block criterion and a replay of
/// the row-sum construction.
AuditReport malcolmson_audit(const MatrixIdealSpec& spec, const IdealWindow& w);

/// InducedNonInjective(M) against DetDivisibleBy(p) on all n x n matrices
/// of the window.
AuditReport det_agreement_audit(const MatrixIdealSpec& induced, std::int64_t p,
                                const IdealWindow& w);

}  // namespace embedlab
