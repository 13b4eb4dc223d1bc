#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "embedlab/ogroup.hpp"
#include "embedlab/scalars.hpp"

namespace embedlab {

/// An element of kG: finitely many group elements with nonzero coefficients,
/// kept sorted by the right order.
class AlgebraElement {
 public:
  using TermMap = std::map<GroupElement, Scalar>;

  explicit AlgebraElement(RingDescriptor field = RingDescriptor::rationals());

  static AlgebraElement monomial(RingDescriptor field, const GroupElement& g,
                                 const Scalar& coeff);

  const RingDescriptor& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds coeff * g, dropping the entry if it cancels.
  void add_term(const GroupElement& g, const Scalar& coeff);
  Scalar coeff(const GroupElement& g) const;
  /// Strictly increasing under the right order.
  std::vector<GroupElement> support() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement scaled(const Scalar& s) const;
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
    return a += b;
  }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
    return a -= b;
  }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

 private:
  RingDescriptor field_;
  TermMap terms_;
};

AlgebraElement algebra_mul(const Group& group, const AlgebraElement& u,
                           const AlgebraElement& v);

/// Right translate u * g.
AlgebraElement right_translate(const Group& group, const AlgebraElement& u,
                               const GroupElement& g);

/// `3/2*y^(1)x^0 + -1*y^(0)x^1`, `1 - t`, `s + ts`, `2*x - 1/3`.
AlgebraElement parse_algebra(const Group& group, RingDescriptor field,
                             std::string_view text);

std::string format_algebra(const Group& group, const AlgebraElement& u);

/// `coeff*element` rendering used in reports; the coefficient is omitted when
/// it is 1 and a bare sign is used for -1.
std::string format_term(const Group& group, const GroupElement& g,
                        const Scalar& c);

}  // namespace embedlab
