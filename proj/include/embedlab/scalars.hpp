#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "embedlab/errors.hpp"

namespace embedlab {

enum class RingKind { Rationals, PrimeField, IntegersMod, Integers };

/// Names one of the coefficient rings Q, F_p, Z/m, Z.
struct RingDescriptor {
  RingKind kind = RingKind::Rationals;
  std::int64_t modulus = 0;  // p or m; unused for Q and Z

  static RingDescriptor rationals() { return {RingKind::Rationals, 0}; }
  static RingDescriptor integers() { return {RingKind::Integers, 0}; }
  static RingDescriptor prime_field(std::int64_t p);
  static RingDescriptor integers_mod(std::int64_t m);

  /// Accepts `Q`, `Z`, `Fp(p)`, `Zmod(m)`.
  static RingDescriptor parse(std::string_view text);

  bool is_field() const;
  bool is_finite() const {
    return kind == RingKind::PrimeField || kind == RingKind::IntegersMod;
  }
  std::string to_string() const;

  /// Canonical representative of an integer in this ring (a residue for the
  /// finite rings, the integer itself otherwise).
  std::int64_t reduce(std::int64_t v) const;

  friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;
};

bool is_prime(std::int64_t n);

/// An exact element of one of the rings named by RingDescriptor.
///
/// The value is kept canonical: reduced fractions over Q, integers over Z and
/// residues in [0, m) over the finite rings, so `==` is structural.
class Scalar {
 public:
  Scalar() = default;
  Scalar(RingDescriptor ring, const mpq_class& value);
  Scalar(RingDescriptor ring, std::int64_t value);

  static Scalar zero(RingDescriptor ring) { return Scalar(ring, 0); }
  static Scalar one(RingDescriptor ring) { return Scalar(ring, 1); }

  /// Parses `3/2`, `-1`, `4`. Fractions in F_p are read as a * b^{-1}.
  static Scalar parse(RingDescriptor ring, std::string_view text);

  const RingDescriptor& ring() const { return ring_; }
  const mpq_class& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  Scalar inverse() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    return a * b.inverse();
  }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.ring_ == b.ring_ && a.value_ == b.value_;
  }

  std::string to_string() const;

 private:
  void canonicalize();
  void check_same_ring(const Scalar& o) const;

  RingDescriptor ring_;
  mpq_class value_;
};

/// 1/x for a nonzero rational; throws ZeroInverse on zero.
mpq_class rational_inverse(const mpq_class& x);

/// Parses a rational literal `a` or `a/b` (leading sign allowed).
mpq_class parse_rational(std::string_view text);

std::string rational_to_string(const mpq_class& q);

}  // namespace embedlab
