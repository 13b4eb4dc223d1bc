#include "embedlab/ogroup.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "embedlab/errors.hpp"
#include "embedlab/scalars.hpp"

namespace embedlab {

namespace {

constexpr long kPowCache = 64;

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

// Parses a + b*w style expressions in the basis {1, w}.
QuadImaginary parse_basis_expr(std::string_view text, int d) {
  if (text.empty()) throw ParseError("empty exponent");
  mpq_class a = 0;
  mpq_class b = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = pos + 1;
    while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
    std::string_view term = text.substr(pos, end - pos);
    pos = end;
    int sign = 1;
    while (!term.empty() && (term.front() == '+' || term.front() == '-')) {
      if (term.front() == '-') sign = -sign;
      term.remove_prefix(1);
    }
    if (term.empty()) throw ParseError("dangling sign in exponent");
    if (term.back() == 'w') {
      term.remove_suffix(1);
      if (!term.empty() && term.back() == '*') term.remove_suffix(1);
      mpq_class coef = term.empty() ? mpq_class(1) : parse_rational(term);
      b += sign * coef;
    } else {
      a += sign * parse_rational(term);
    }
  }
  return QuadImaginary::from_basis(a, b, d);
}

long parse_long(std::string_view s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad integer exponent '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
  std::string s = strip(text);
  if (s.rfind("c=", 0) == 0) s.erase(0, 2);
  GroupDescriptor g{QuadImaginary::parse_constant(s)};
  if (g.c.is_zero()) throw ParseError("c must be nonzero");
  return g;
}

std::string GroupDescriptor::to_string() const { return "c=" + c.to_string(); }

int GroupElement::compare_right(const GroupElement& a, const GroupElement& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
  int r = cmp(a.h_.re(), b.h_.re());
  if (r != 0) return r < 0 ? -1 : 1;
  int i = cmp(a.h_.im(), b.h_.im());
  return i < 0 ? -1 : (i > 0 ? 1 : 0);
}

Group::Group(GroupDescriptor desc) : desc_(std::move(desc)) {
  if (desc_.c.is_zero()) throw DomainMismatch("c must be nonzero");
  c_inv_ = desc_.c.inverse();
  pos_pows_.push_back(QuadImaginary::rational(1, desc_.d()));
  neg_pows_.push_back(QuadImaginary::rational(1, desc_.d()));
  for (long k = 1; k <= kPowCache; ++k) {
    pos_pows_.push_back(pos_pows_.back() * desc_.c);
    neg_pows_.push_back(neg_pows_.back() * c_inv_);
  }
}

QuadImaginary Group::c_pow(long e) const {
  if (e >= 0 && e <= kPowCache) return pos_pows_[static_cast<std::size_t>(e)];
  if (e < 0 && -e <= kPowCache) return neg_pows_[static_cast<std::size_t>(-e)];
  return desc_.c.pow(e);
}

GroupElement Group::identity() const {
  return {QuadImaginary(desc_.d()), 0};
}

GroupElement Group::y_rational(const mpq_class& q) const {
  return {QuadImaginary::rational(q, desc_.d()), 0};
}

GroupElement Group::x(long n) const { return {QuadImaginary(desc_.d()), n}; }

GroupElement Group::make(const mpq_class& a, const mpq_class& b, long n) const {
  return {QuadImaginary::from_basis(a, b, desc_.d()), n};
}

GroupElement Group::mul(const GroupElement& a, const GroupElement& b) const {
  if (b.h().is_zero()) return {a.h(), a.n() + b.n()};
  return {a.h() + c_pow(-a.n()) * b.h(), a.n() + b.n()};
}

GroupElement Group::inv(const GroupElement& a) const {
  if (a.h().is_zero()) return {a.h(), -a.n()};
  return {-(c_pow(a.n()) * a.h()), -a.n()};
}

GroupElement Group::pow(const GroupElement& a, long e) const {
  GroupElement base = e < 0 ? inv(a) : a;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e)
                          : static_cast<unsigned long>(e);
  GroupElement result = identity();
  while (k != 0) {
    if (k & 1UL) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

GroupElement Group::conjugate(const GroupElement& g,
                              const GroupElement& a) const {
  return mul(mul(g, a), inv(g));
}

int Group::compare(const GroupElement& a, const GroupElement& b,
                   const OrderTag& tag) const {
  switch (tag.kind) {
    case OrderTag::Kind::Right:
      return GroupElement::compare_right(a, b);
    case OrderTag::Kind::DualLeft:
      // a <=* b  iff  a^{-1} >= b^{-1}
      return GroupElement::compare_right(inv(b), inv(a));
    case OrderTag::Kind::ConjugatedBy:
      return GroupElement::compare_right(mul(tag.by, a), mul(tag.by, b));
  }
  return 0;
}

std::vector<GroupElement> Group::local_order_class(
    const GroupElement& g, const std::vector<GroupElement>& s) const {
  std::vector<GroupElement> out = s;
  auto tag = OrderTag::conjugated_by(g);
  std::stable_sort(out.begin(), out.end(),
                   [&](const GroupElement& a, const GroupElement& b) {
                     return less(a, b, tag);
                   });
  return out;
}

GroupElement Group::parse_element(std::string_view text) const {
  std::string s = strip(text);
  if (s.empty()) throw ParseError("empty group element");
  const bool klein = desc_.is_klein();
  GroupElement result = identity();
  std::size_t pos = 0;
  auto read_int_exponent = [&]() -> long {
    if (pos >= s.size() || s[pos] != '^') return 1;
    ++pos;
    if (pos < s.size() && s[pos] == '(') {
      std::size_t close = s.find(')', pos);
      if (close == std::string::npos) throw ParseError("unbalanced ( in '" + s + "'");
      long v = parse_long(std::string_view(s).substr(pos + 1, close - pos - 1));
      pos = close + 1;
      return v;
    }
    std::size_t end = pos;
    if (end < s.size() && (s[end] == '-' || s[end] == '+')) ++end;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    std::string_view digits = std::string_view(s).substr(pos, end - pos);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    long v = parse_long(digits);
    pos = end;
    return v;
  };
  while (pos < s.size()) {
    char ch = s[pos];
    if (ch == '*') {
      ++pos;
      continue;
    }
    if (ch == '1') {
      ++pos;
      continue;
    }
    if (ch == 'y' || (klein && ch == 't')) {
      ++pos;
      QuadImaginary h = QuadImaginary::rational(1, desc_.d());
      if (pos < s.size() && s[pos] == '^') {
        if (pos + 1 < s.size() && s[pos + 1] == '(' && ch == 'y') {
          std::size_t close = s.find(')', pos + 1);
          if (close == std::string::npos) {
            throw ParseError("unbalanced ( in '" + s + "'");
          }
          h = parse_basis_expr(std::string_view(s).substr(pos + 2, close - pos - 2),
                               desc_.d());
          pos = close + 1;
        } else {
          h = QuadImaginary::rational(read_int_exponent(), desc_.d());
        }
      }
      result = mul(result, GroupElement(h, 0));
      continue;
    }
    if (ch == 'x' || (klein && ch == 's')) {
      ++pos;
      result = mul(result, x(read_int_exponent()));
      continue;
    }
    throw ParseError("unexpected '" + std::string(1, ch) + "' in element '" + s +
                     "'");
  }
  return result;
}

std::string Group::format(const GroupElement& g) const {
  if (g.is_identity()) return "1";
  const auto& h = g.h();
  if (desc_.is_klein() && h.im() == 0 && h.re().get_den() == 1) {
    std::string out;
    const mpz_class& i = h.re().get_num();
    if (i == 1) {
      out += "t";
    } else if (i != 0) {
      out += "t^" + i.get_str();
    }
    if (g.n() == 1) {
      out += "s";
    } else if (g.n() != 0) {
      out += "s^" + std::to_string(g.n());
    }
    return out;
  }
  std::string out = h.is_zero() ? "" : "y^(" + h.to_string() + ")";
  if (g.n() == 1) {
    out += "x";
  } else if (g.n() != 0) {
    out += "x^" + std::to_string(g.n());
  }
  return out;
}

PeriodicityReport positivity_periodicity_probe(const Group& group,
                                               const std::vector<GroupElement>& s,
                                               long window) {
  if (window < 1) throw DomainMismatch("window must be >= 1");
  PeriodicityReport rep;
  rep.window = window;
  for (long n = -window; n <= window; ++n) {
    auto sorted = group.local_order_class(group.x(n), s);
    std::vector<std::size_t> perm;
    for (const auto& e : sorted) {
      perm.push_back(static_cast<std::size_t>(
          std::find(s.begin(), s.end(), e) - s.begin()));
    }
    rep.classes.push_back(std::move(perm));
  }
  const long len = static_cast<long>(rep.classes.size());
  for (long p = 1; p <= window; ++p) {
    bool ok = true;
    for (long i = 0; i + p < len && ok; ++i) {
      ok = rep.classes[static_cast<std::size_t>(i)] ==
           rep.classes[static_cast<std::size_t>(i + p)];
    }
    if (ok) {
      rep.period = p;
      break;
    }
  }
  return rep;
}

}  // namespace embedlab
