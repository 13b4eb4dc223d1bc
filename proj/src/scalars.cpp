#include "embedlab/scalars.hpp"

#include <cctype>
#include <charconv>

namespace embedlab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

// Parses `Name(arg)` and returns arg, or nullopt-like empty view if the
// prefix does not match.
bool match_call(std::string_view text, std::string_view name,
                std::string_view& arg) {
  if (text.size() < name.size() + 2 || text.substr(0, name.size()) != name) {
    return false;
  }
  auto rest = text.substr(name.size());
  if (rest.front() != '(' || rest.back() != ')') return false;
  arg = rest.substr(1, rest.size() - 2);
  return true;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

RingDescriptor RingDescriptor::prime_field(std::int64_t p) {
  if (!is_prime(p)) {
    throw ParseError("Fp(" + std::to_string(p) + "): modulus is not prime");
  }
  return {RingKind::PrimeField, p};
}

RingDescriptor RingDescriptor::integers_mod(std::int64_t m) {
  if (m < 1) throw ParseError("Zmod(m) needs m >= 1");
  return {RingKind::IntegersMod, m};
}

RingDescriptor RingDescriptor::parse(std::string_view text) {
  text = trim(text);
  if (text == "Q") return rationals();
  if (text == "Z") return integers();
  std::string_view arg;
  if (match_call(text, "Fp", arg)) return prime_field(parse_int(arg));
  if (match_call(text, "Zmod", arg)) return integers_mod(parse_int(arg));
  throw ParseError("unknown ring '" + std::string(text) +
                   "' (expected Q, Z, Fp(p) or Zmod(m))");
}

bool RingDescriptor::is_field() const {
  switch (kind) {
    case RingKind::Rationals:
    case RingKind::PrimeField:
      return true;
    case RingKind::IntegersMod:
      return is_prime(modulus);
    case RingKind::Integers:
      return false;
  }
  return false;
}

std::string RingDescriptor::to_string() const {
  switch (kind) {
    case RingKind::Rationals:
      return "Q";
    case RingKind::Integers:
      return "Z";
    case RingKind::PrimeField:
      return "Fp(" + std::to_string(modulus) + ")";
    case RingKind::IntegersMod:
      return "Zmod(" + std::to_string(modulus) + ")";
  }
  return "?";
}

std::int64_t RingDescriptor::reduce(std::int64_t v) const {
  if (!is_finite()) return v;
  std::int64_t r = v % modulus;
  return r < 0 ? r + modulus : r;
}

mpq_class rational_inverse(const mpq_class& x) {
  if (x == 0) throw ZeroInverse();
  return mpq_class(1) / x;
}

mpq_class parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty rational literal");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' ||
          ch == '-')) {
      throw ParseError("bad rational literal '" + std::string(text) + "'");
    }
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw ParseError("bad rational literal '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

Scalar::Scalar(RingDescriptor ring, const mpq_class& value)
    : ring_(ring), value_(value) {
  canonicalize();
}

Scalar::Scalar(RingDescriptor ring, std::int64_t value)
    : ring_(ring), value_(static_cast<long>(value)) {
  canonicalize();
}

Scalar Scalar::parse(RingDescriptor ring, std::string_view text) {
  return Scalar(ring, parse_rational(text));
}

void Scalar::canonicalize() {
  value_.canonicalize();
  switch (ring_.kind) {
    case RingKind::Rationals:
      return;
    case RingKind::Integers:
      if (value_.get_den() != 1) {
        throw DomainMismatch("non-integer value " + value_.get_str() +
                             " in Z");
      }
      return;
    case RingKind::PrimeField:
    case RingKind::IntegersMod: {
      mpz_class m(static_cast<long>(ring_.modulus));
      mpz_class num = value_.get_num();
      mpz_class den = value_.get_den();
      if (den != 1) {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0) {
          throw DomainMismatch("denominator " + den.get_str() +
                               " not invertible in " + ring_.to_string());
        }
        num *= inv;
      }
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
      value_ = mpq_class(r);
      return;
    }
  }
}

void Scalar::check_same_ring(const Scalar& o) const {
  if (!(ring_ == o.ring_)) {
    throw DomainMismatch("mixing " + ring_.to_string() + " and " +
                         o.ring_.to_string());
  }
}

Scalar Scalar::inverse() const {
  if (!ring_.is_field()) throw NotAField(ring_.to_string());
  if (is_zero()) throw ZeroInverse();
  return Scalar(ring_, mpq_class(1) / value_);
}

Scalar Scalar::operator-() const { return Scalar(ring_, -value_); }

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_ring(o);
  value_ += o.value_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_ring(o);
  value_ -= o.value_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_ring(o);
  value_ *= o.value_;
  canonicalize();
  return *this;
}

std::string Scalar::to_string() const { return value_.get_str(); }

}  // namespace embedlab
