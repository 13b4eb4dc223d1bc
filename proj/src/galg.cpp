#include "embedlab/galg.hpp"

#include <cctype>

namespace embedlab {

AlgebraElement::AlgebraElement(RingDescriptor field) : field_(field) {
  if (!field_.is_field()) throw NotAField(field_.to_string());
}

AlgebraElement AlgebraElement::monomial(RingDescriptor field,
                                        const GroupElement& g,
                                        const Scalar& coeff) {
  AlgebraElement u(field);
  u.add_term(g, coeff);
  return u;
}

void AlgebraElement::add_term(const GroupElement& g, const Scalar& coeff) {
  if (!(coeff.ring() == field_)) {
    throw DomainMismatch("coefficient in " + coeff.ring().to_string() +
                         ", algebra over " + field_.to_string());
  }
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(g, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar AlgebraElement::coeff(const GroupElement& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

std::vector<GroupElement> AlgebraElement::support() const {
  std::vector<GroupElement> out;
  out.reserve(terms_.size());
  for (const auto& [g, c] : terms_) out.push_back(g);
  return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [g, c] : o.terms_) add_term(g, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [g, c] : o.terms_) add_term(g, -c);
  return *this;
}

AlgebraElement AlgebraElement::scaled(const Scalar& s) const {
  AlgebraElement out(field_);
  if (s.is_zero()) return out;
  for (const auto& [g, c] : terms_) out.terms_.emplace(g, c * s);
  return out;
}

AlgebraElement algebra_mul(const Group& group, const AlgebraElement& u,
                           const AlgebraElement& v) {
  if (!(u.field() == v.field())) throw DomainMismatch("algebras over different fields");
  AlgebraElement out(u.field());
  for (const auto& [g, a] : u.terms()) {
    for (const auto& [h, b] : v.terms()) out.add_term(group.mul(g, h), a * b);
  }
  return out;
}

AlgebraElement right_translate(const Group& group, const AlgebraElement& u,
                               const GroupElement& g) {
  AlgebraElement out(u.field());
  for (const auto& [h, a] : u.terms()) out.add_term(group.mul(h, g), a);
  return out;
}

namespace {

bool is_rational_char(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) || c == '/';
}

}  // namespace

AlgebraElement parse_algebra(const Group& group, RingDescriptor field,
                             std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  AlgebraElement out(field);
  if (s.empty()) throw ParseError("empty algebra literal");
  if (s == "0") return out;

  // Split at top-level signs that start a new term.
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    bool sign = (c == '+' || c == '-');
    if (sign && depth == 0 && !cur.empty()) {
      char prev = cur.back();
      if (prev != '^' && prev != '*' && prev != '+' && prev != '-') {
        terms.push_back(cur);
        cur.clear();
      }
    }
    cur.push_back(c);
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + s + "'");
  terms.push_back(cur);

  for (std::string t : terms) {
    int sign = 1;
    std::size_t p = 0;
    if (p < t.size() && (t[p] == '+' || t[p] == '-')) {
      if (t[p] == '-') sign = -1;
      ++p;
    }
    if (p < t.size() && (t[p] == '+' || t[p] == '-')) {
      throw ParseError("repeated sign in '" + s + "'");
    }
    t.erase(0, p);
    if (t.empty()) throw ParseError("dangling sign in '" + s + "'");
    std::size_t q = 0;
    while (q < t.size() && is_rational_char(t[q])) ++q;
    Scalar coeff = Scalar::one(field);
    std::string word = t;
    if (q == t.size()) {
      coeff = Scalar::parse(field, t);
      word = "1";
    } else if (q > 0 && (t[q] == '*' || std::isalpha(static_cast<unsigned char>(t[q])))) {
      coeff = Scalar::parse(field, t.substr(0, q));
      word = t.substr(t[q] == '*' ? q + 1 : q);
    }
    if (sign < 0) coeff = -coeff;
    out.add_term(group.parse_element(word), coeff);
  }
  return out;
}

std::string format_term(const Group& group, const GroupElement& g,
                        const Scalar& c) {
  std::string elem = group.format(g);
  if (c.is_one()) return elem;
  if ((-c).is_one() && c.ring().kind == RingKind::Rationals) return "-" + elem;
  return c.to_string() + "*" + elem;
}

std::string format_algebra(const Group& group, const AlgebraElement& u) {
  if (u.is_zero()) return "0";
  std::string out;
  for (const auto& [g, c] : u.terms()) {
    std::string t = format_term(group, g, c);
    if (out.empty()) {
      out = t;
    } else if (t.front() == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

}  // namespace embedlab
