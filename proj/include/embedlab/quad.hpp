#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>

namespace embedlab {

/// An element re + im * sqrt(-d) of Q(sqrt(-d)), d in {1, 3}.
///
/// Re(value) = re and sign(Im(value)) = sign(im) exactly, which is all the
/// group orderings need.
class QuadImaginary {
 public:
  QuadImaginary() = default;
  explicit QuadImaginary(int d) : d_(d) { check_d(); }
  QuadImaginary(mpq_class re, mpq_class im, int d);

  static QuadImaginary rational(const mpq_class& q, int d = 1) {
    return QuadImaginary(q, 0, d);
  }
  /// Primitive cube root of unity -1/2 + (1/2) sqrt(-3).
  static QuadImaginary omega();
  /// The basis symbol `w` of the element grammar: i for d = 1, omega for d = 3.
  static QuadImaginary basis_symbol(int d);
  /// a + b*w with w = basis_symbol(d).
  static QuadImaginary from_basis(const mpq_class& a, const mpq_class& b, int d);

  /// `-1`, `3/5`, `i`, `zeta3`, `zeta6`, `gauss(a,b)` (a+bi), `eisen(a,b)`
  /// (a + b*omega).
  static QuadImaginary parse_constant(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  int d() const { return d_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  int sign_re() const { return sgn(re_); }
  int sign_im() const { return sgn(im_); }

  /// re^2 + d * im^2, i.e. |value|^2.
  mpq_class norm() const { return re_ * re_ + d_ * im_ * im_; }
  QuadImaginary conj() const { return QuadImaginary(re_, -im_, d_); }
  QuadImaginary inverse() const;
  QuadImaginary pow(long e) const;

  QuadImaginary operator-() const { return QuadImaginary(-re_, -im_, d_); }
  QuadImaginary& operator+=(const QuadImaginary& o);
  QuadImaginary& operator-=(const QuadImaginary& o);
  QuadImaginary& operator*=(const QuadImaginary& o);
  friend QuadImaginary operator+(QuadImaginary a, const QuadImaginary& b) {
    return a += b;
  }
  friend QuadImaginary operator-(QuadImaginary a, const QuadImaginary& b) {
    return a -= b;
  }
  friend QuadImaginary operator*(QuadImaginary a, const QuadImaginary& b) {
    return a *= b;
  }
  friend bool operator==(const QuadImaginary& a, const QuadImaginary& b) {
    return a.re_ == b.re_ && a.im_ == b.im_ && (a.d_ == b.d_ || a.im_ == 0);
  }

  /// Coordinates in the basis {1, w}: value = a + b*w.
  std::pair<mpq_class, mpq_class> basis_coords() const;

  /// Renders as `a+b*w` in basis coordinates (just `a` when b = 0).
  std::string to_string() const;

 private:
  void check_d() const;
  void align(const QuadImaginary& o);

  mpq_class re_;
  mpq_class im_;
  int d_ = 1;
};

}  // namespace embedlab
