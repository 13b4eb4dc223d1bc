#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "embedlab/quad.hpp"

namespace embedlab {

/// The c-scaled group: normal forms y^h x^n with y^h x = x y^{ch}.
/// c = -1 is the Klein-bottle group (t = y, s = x), c = 1 is Z^2-like.
struct GroupDescriptor {
  QuadImaginary c;

  /// `c=-1`, `-1`, `zeta3`, `gauss(3/5,4/5)`, ...
  static GroupDescriptor parse(std::string_view text);
  static GroupDescriptor klein() { return {QuadImaginary::rational(-1)}; }

  /// The field Q(sqrt(-d)) that h lives in.
  int d() const { return c.d(); }
  bool is_klein() const { return c == QuadImaginary::rational(-1); }
  std::string to_string() const;
};

/// y^h x^n.
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(QuadImaginary h, long n) : h_(std::move(h)), n_(n) {}

  const QuadImaginary& h() const { return h_; }
  long n() const { return n_; }
  bool is_identity() const { return h_.is_zero() && n_ == 0; }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.n_ == b.n_ && a.h_ == b.h_;
  }

  /// The right-invariant order: n first, then Re(h), then Im(h). It does not
  /// depend on c, so it can serve as the default ordering key for maps.
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return compare_right(a, b) < 0;
  }
  static int compare_right(const GroupElement& a, const GroupElement& b);

 private:
  QuadImaginary h_;
  long n_ = 0;
};

struct OrderTag {
  enum class Kind { Right, DualLeft, ConjugatedBy };
  Kind kind = Kind::Right;
  GroupElement by;  // only for ConjugatedBy

  static OrderTag right() { return {}; }
  static OrderTag dual_left() { return {Kind::DualLeft, {}}; }
  static OrderTag conjugated_by(GroupElement g) {
    return {Kind::ConjugatedBy, std::move(g)};
  }
};

class Group {
 public:
  explicit Group(GroupDescriptor desc);

  const GroupDescriptor& descriptor() const { return desc_; }
  const QuadImaginary& c() const { return desc_.c; }

  GroupElement identity() const;
  GroupElement y(const QuadImaginary& h) const { return {h, 0}; }
  GroupElement y_rational(const mpq_class& q) const;
  GroupElement x(long n = 1) const;
  GroupElement make(const mpq_class& a, const mpq_class& b, long n) const;

  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inv(const GroupElement& a) const;
  GroupElement pow(const GroupElement& a, long e) const;
  /// g a g^{-1}
  GroupElement conjugate(const GroupElement& g, const GroupElement& a) const;

  /// -1, 0 or 1.
  int compare(const GroupElement& a, const GroupElement& b,
              const OrderTag& tag = OrderTag::right()) const;
  bool less(const GroupElement& a, const GroupElement& b,
            const OrderTag& tag = OrderTag::right()) const {
    return compare(a, b, tag) < 0;
  }

  /// S sorted by the local order a <=_g b iff g a <= g b.
  std::vector<GroupElement> local_order_class(
      const GroupElement& g, const std::vector<GroupElement>& s) const;

  /// `y^(a+b*w)x^n`, `x`, `y^2`, `1`, and in Klein mode words in t, s such
  /// as `t^-1s`, `ts`, `t^2*s^3`.
  GroupElement parse_element(std::string_view text) const;
  std::string format(const GroupElement& g) const;

 private:
  QuadImaginary c_pow(long e) const;

  GroupDescriptor desc_;
  QuadImaginary c_inv_;
  std::vector<QuadImaginary> pos_pows_;  // c^0 .. c^k cached
  std::vector<QuadImaginary> neg_pows_;  // c^0 .. c^-k cached
};

/// Ordering functor for std::set / std::map under a chosen tag.
struct GroupLess {
  const Group* group = nullptr;
  OrderTag tag;
  bool operator()(const GroupElement& a, const GroupElement& b) const {
    return group->less(a, b, tag);
  }
};

struct PeriodicityReport {
  long window = 0;
  /// classes[k] is the permutation of S (as indices) for x^{k - window}.
  std::vector<std::vector<std::size_t>> classes;
  std::optional<long> period;
};

/// Local-order classes of x^n on S for n in [-N, N], plus the least p <= N
/// with classes[i] == classes[i + p] throughout the window.
PeriodicityReport positivity_periodicity_probe(const Group& group,
                                               const std::vector<GroupElement>& s,
                                               long window);

}  // namespace embedlab
