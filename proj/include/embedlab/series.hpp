#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "embedlab/galg.hpp"
#include "embedlab/ogroup.hpp"
#include "embedlab/scalars.hpp"

namespace embedlab {

struct Term {
  GroupElement g;
  Scalar c;
};

/// A step counter shared by every source taking part in one computation.
class Budget {
 public:
  explicit Budget(std::size_t limit) : limit_(limit) {}
  void charge(std::size_t k = 1);
  std::size_t used() const { return used_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};
using BudgetPtr = std::shared_ptr<Budget>;

/// Right: k((G)) ordered by the right order, kG acting on the right.
/// Left: k((G*)) ordered by the dual order, kG acting on the left.
enum class Side { Right, Left };

/// Order plus action for one side, so the same algorithms serve both.
class Frame {
 public:
  Frame(std::shared_ptr<const Group> group, Side side)
      : group_(std::move(group)), side_(side) {}

  const Group& group() const { return *group_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }
  Side side() const { return side_; }
  OrderTag tag() const {
    return side_ == Side::Right ? OrderTag::right() : OrderTag::dual_left();
  }
  int compare(const GroupElement& a, const GroupElement& b) const {
    return group_->compare(a, b, tag());
  }
  bool less(const GroupElement& a, const GroupElement& b) const {
    return compare(a, b) < 0;
  }
  /// g.h on the right side, h.g on the left.
  GroupElement act(const GroupElement& g, const GroupElement& h) const;
  /// The g' with act(g', h) == target.
  GroupElement unact(const GroupElement& target, const GroupElement& h) const;
  /// The h with act(g, h) == target.
  GroupElement fiber(const GroupElement& g, const GroupElement& target) const;

 private:
  std::shared_ptr<const Group> group_;
  Side side_;
};

struct FrameLess {
  const Frame* frame = nullptr;
  bool operator()(const GroupElement& a, const GroupElement& b) const {
    return frame->less(a, b);
  }
};

class SeriesSource {
 public:
  virtual ~SeriesSource() = default;
  /// Next term, or nullopt when the series has no further terms.
  virtual std::optional<Term> pull() = 0;
  virtual bool finitely_backed() const { return false; }
};

/// A lazily generated series with strictly increasing support. Pulled terms
/// are memoized, so indexing is repeatable; copies share the same state and
/// must not be consumed from different threads.
class SeriesStream {
 public:
  SeriesStream(Frame frame, RingDescriptor field,
               std::shared_ptr<SeriesSource> source);

  /// The finite series given by u, ordered for `side`.
  static SeriesStream finite(std::shared_ptr<const Group> group,
                             const AlgebraElement& u, Side side = Side::Right);
  static SeriesStream finite(const Group& group, const AlgebraElement& u,
                             Side side = Side::Right);

  const Frame& frame() const { return state_->frame; }
  const RingDescriptor& field() const { return state_->field; }
  bool finitely_backed() const { return state_->source->finitely_backed(); }

  /// The i-th term, or nullptr if the series has fewer than i+1 terms.
  const Term* at(std::size_t i) const;
  /// Up to n leading terms.
  std::vector<Term> take(std::size_t n) const;
  /// Terms pulled so far.
  std::size_t buffered() const { return state_->buffer.size(); }
  bool ended() const { return state_->ended; }

 private:
  struct State {
    Frame frame;
    RingDescriptor field;
    std::shared_ptr<SeriesSource> source;
    std::vector<Term> buffer;
    bool ended = false;
  };
  std::shared_ptr<State> state_;
};

/// The least element of g.S (right) / S.g (left, dual order).
GroupElement rho(const Frame& frame, const std::vector<GroupElement>& s,
                 const GroupElement& g);
GroupElement rho(const Group& group, const std::vector<GroupElement>& s,
                 const GroupElement& g);
/// The unique g' with rho(g') = g: g.h0^{-1} for the h0 maximizing it.
GroupElement rho_inverse(const Frame& frame, const std::vector<GroupElement>& s,
                         const GroupElement& g);
GroupElement rho_inverse(const Group& group, const std::vector<GroupElement>& s,
                         const GroupElement& g);

/// a.x for a right series, x.b for a left series; merges |supp x| shifted
/// copies. Each output term charges `budget` once.
SeriesStream act(const SeriesStream& a, const AlgebraElement& x,
                 BudgetPtr budget = nullptr);
SeriesStream act_right(const SeriesStream& a, const AlgebraElement& x,
                       BudgetPtr budget = nullptr);
SeriesStream act_left(const AlgebraElement& x, const SeriesStream& b,
                      BudgetPtr budget = nullptr);

/// Sum of ca * a + cb * b (same frame and field).
SeriesStream linear_combination(const SeriesStream& a, const Scalar& ca,
                                const SeriesStream& b, const Scalar& cb,
                                BudgetPtr budget = nullptr);

/// Coefficient of g, pulling at most max_terms terms.
Scalar coefficient_at(const SeriesStream& a, const GroupElement& g,
                      std::size_t max_terms);

struct InversionStats {
  std::size_t y_elements = 0;          // elements of Y processed
  std::size_t containment_checks = 0;  // remainder terms checked
  std::size_t containment_failures = 0;
  std::size_t resolution_failures = 0;  // remainder term <= rho(g) left over
};

struct InversionOptions {
  std::size_t budget = 200000;
  /// For finitely backed a: track the remainder a - b'x and check that its
  /// support stays in rho(Y) and above rho(g) after each step.
  bool audit = false;
  std::shared_ptr<InversionStats> stats;
  /// Test hook applied to every emitted coefficient.
  std::function<Scalar(const GroupElement&, const Scalar&)> mutate;
};

/// The series b with b.x = a (right) or x.b = a (left).
SeriesStream dubrovin_invert(const SeriesStream& a, const AlgebraElement& x,
                             InversionOptions options = {});

/// sum_g alpha_g beta_{g^{-1}} for a right series a and a left series b.
Scalar pair(const SeriesStream& a, const SeriesStream& b, std::size_t max_terms);

struct RoundTripReport {
  std::size_t b_terms = 0;
  bool b_ended = false;
  GroupElement horizon;  // rho(last b term); comparison covers elements <= it
  std::size_t compared = 0;
  std::size_t mismatches = 0;
  bool ok() const { return mismatches == 0; }
};

/// Inverts finite a by x, multiplies the first k terms of b back by x, and
/// compares with a on every element up to rho(last term) (all of it if b
/// ended).
RoundTripReport round_trip_check(const Group& group, const AlgebraElement& a,
                                 const AlgebraElement& x, std::size_t k,
                                 InversionOptions options = {},
                                 Side side = Side::Right);

/// For finite a != 0: the least term of a.x sits at rho(least of a) with
/// coefficient (least coeff of a) * (x at the minimizing h).
bool least_term_witness(const Group& group, const AlgebraElement& a,
                        const AlgebraElement& x);

struct Q2Report {
  std::size_t trials = 0;
  std::size_t nonzero = 0;
  std::size_t exact_zero = 0;
  std::size_t undetermined = 0;
  std::string evidence;
};

/// Applies a -> a.y1 - ((a.x1) x2^{-1}).y2 to random finite a and records
/// whether a nonzero term shows up within `terms` terms and `budget` steps.
Q2Report probe_q2(const Group& group, RingDescriptor field,
                  const AlgebraElement& x1, const AlgebraElement& x2,
                  const AlgebraElement& y1, const AlgebraElement& y2,
                  std::size_t trials, std::uint64_t seed, std::size_t budget);

/// Random element of kG with up to max_terms terms; exponents in
/// [-spread, spread], coefficients small nonzero integers.
AlgebraElement random_algebra_element(const Group& group, RingDescriptor field,
                                      std::size_t max_terms, long spread,
                                      std::mt19937_64& rng);

}  // namespace embedlab
