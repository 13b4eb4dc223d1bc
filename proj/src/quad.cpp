#include "embedlab/quad.hpp"

#include <cctype>

#include "embedlab/errors.hpp"
#include "embedlab/scalars.hpp"

namespace embedlab {

QuadImaginary::QuadImaginary(mpq_class re, mpq_class im, int d)
    : re_(std::move(re)), im_(std::move(im)), d_(d) {
  check_d();
}

void QuadImaginary::check_d() const {
  if (d_ != 1 && d_ != 3) {
    throw DomainMismatch("Q(sqrt(-d)) supports d = 1 or 3, got " +
                         std::to_string(d_));
  }
}

QuadImaginary QuadImaginary::omega() {
  return QuadImaginary(mpq_class(-1, 2), mpq_class(1, 2), 3);
}

QuadImaginary QuadImaginary::basis_symbol(int d) {
  if (d == 3) return omega();
  return QuadImaginary(0, 1, 1);
}

QuadImaginary QuadImaginary::from_basis(const mpq_class& a, const mpq_class& b,
                                        int d) {
  return QuadImaginary::rational(a, d) +
         QuadImaginary::rational(b, d) * basis_symbol(d);
}

std::pair<mpq_class, mpq_class> QuadImaginary::basis_coords() const {
  if (d_ == 3) {
    mpq_class b = 2 * im_;
    mpq_class a = re_ + im_;
    return {a, b};
  }
  return {re_, im_};
}

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

bool split_pair(std::string_view text, std::string_view name,
                std::string_view& first, std::string_view& second) {
  if (text.substr(0, name.size()) != name) return false;
  auto rest = trim(text.substr(name.size()));
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
    return false;
  }
  rest = rest.substr(1, rest.size() - 2);
  auto comma = rest.find(',');
  if (comma == std::string_view::npos) return false;
  first = rest.substr(0, comma);
  second = rest.substr(comma + 1);
  return true;
}

}  // namespace

QuadImaginary QuadImaginary::parse_constant(std::string_view text) {
  text = trim(text);
  if (text == "i") return QuadImaginary(0, 1, 1);
  if (text == "zeta3") return omega();
  if (text == "zeta6") {
    return QuadImaginary(mpq_class(1, 2), mpq_class(1, 2), 3);
  }
  std::string_view a;
  std::string_view b;
  if (split_pair(text, "gauss", a, b)) {
    return QuadImaginary(parse_rational(a), parse_rational(b), 1);
  }
  if (split_pair(text, "eisen", a, b)) {
    return from_basis(parse_rational(a), parse_rational(b), 3);
  }
  return rational(parse_rational(text), 1);
}

void QuadImaginary::align(const QuadImaginary& o) {
  if (d_ == o.d_) return;
  if (o.im_ == 0) return;
  if (im_ == 0) {
    d_ = o.d_;
    return;
  }
  throw DomainMismatch("mixing Q(sqrt(-1)) and Q(sqrt(-3)) elements");
}

QuadImaginary& QuadImaginary::operator+=(const QuadImaginary& o) {
  align(o);
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

QuadImaginary& QuadImaginary::operator-=(const QuadImaginary& o) {
  align(o);
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

QuadImaginary& QuadImaginary::operator*=(const QuadImaginary& o) {
  align(o);
  mpq_class re = re_ * o.re_ - d_ * im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

QuadImaginary QuadImaginary::inverse() const {
  if (is_zero()) throw ZeroInverse();
  mpq_class n = norm();
  return QuadImaginary(re_ / n, -im_ / n, d_);
}

QuadImaginary QuadImaginary::pow(long e) const {
  QuadImaginary base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e)
                          : static_cast<unsigned long>(e);
  QuadImaginary result = rational(1, d_);
  while (k != 0) {
    if (k & 1UL) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

std::string QuadImaginary::to_string() const {
  auto [a, b] = basis_coords();
  if (b == 0) return a.get_str();
  std::string out;
  if (a != 0) out = a.get_str();
  if (b == 1) {
    out += a != 0 ? "+w" : "w";
  } else if (b == -1) {
    out += "-w";
  } else {
    if (a != 0 && b > 0) out += "+";
    out += b.get_str() + "*w";
  }
  return out;
}

}  // namespace embedlab
