#include "embedlab/module.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace embedlab {

namespace {

constexpr std::uint64_t kAddTableLimit = 4096;

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

}  // namespace

ModulePresentation ModulePresentation::rational_backend(RingDescriptor ring) {
  if (ring.kind != RingKind::Integers && ring.kind != RingKind::Rationals) {
    throw DomainMismatch("the Q backend needs R = Z or Q, got " +
                         ring.to_string());
  }
  ModulePresentation m;
  m.ring_ = ring;
  m.rational_ = true;
  return m;
}

ModulePresentation ModulePresentation::cyclic_product(
    RingDescriptor ring, std::vector<std::int64_t> factors) {
  if (!ring.is_finite() && ring.kind != RingKind::Integers) {
    throw DomainMismatch("finite modules need R = Z, Z/m or F_p");
  }
  std::uint64_t size = 1;
  for (auto d : factors) {
    if (d < 2) throw DomainMismatch("cyclic factors must have order >= 2");
    if (ring.is_finite() && ring.modulus % d != 0) {
      throw DomainMismatch("Z/" + std::to_string(d) + " is not a module over " +
                           ring.to_string());
    }
    if (size > std::numeric_limits<std::uint32_t>::max() /
                   static_cast<std::uint64_t>(d)) {
      throw SearchSpaceTooLarge("module too large to enumerate");
    }
    size *= static_cast<std::uint64_t>(d);
  }
  ModulePresentation m;
  m.ring_ = ring;
  m.factors_ = std::move(factors);
  if (size <= kAddTableLimit) {
    m.add_table_.resize(size * size);
    for (ModElem a = 0; a < size; ++a) {
      auto ca = m.coords(a);
      for (ModElem b = 0; b < size; ++b) {
        auto cb = m.coords(b);
        for (std::size_t i = 0; i < ca.size(); ++i) {
          cb[i] = (ca[i] + cb[i]) % m.factors_[i];
        }
        m.add_table_[a * size + b] = m.from_coords(cb);
      }
    }
  }
  return m;
}

ModulePresentation ModulePresentation::parse(RingDescriptor ring,
                                             std::string_view text) {
  std::string s = strip_spaces(text);
  if (s == "Q") return rational_backend(ring);
  std::vector<std::int64_t> factors;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t close = s.find(')', pos);
    if (close == std::string::npos) {
      throw ParseError("bad module '" + s + "'");
    }
    auto one = RingDescriptor::parse(std::string_view(s).substr(pos, close + 1 - pos));
    if (!one.is_finite()) {
      throw ParseError("module factors must be Zmod(d) or Fp(p)");
    }
    pos = close + 1;
    std::int64_t power = 1;
    if (pos < s.size() && s[pos] == '^') {
      std::size_t end = pos + 1;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) {
        ++end;
      }
      auto [ptr, ec] = std::from_chars(s.data() + pos + 1, s.data() + end, power);
      if (ec != std::errc() || power < 1) {
        throw ParseError("bad exponent in module '" + s + "'");
      }
      pos = end;
    }
    for (std::int64_t k = 0; k < power; ++k) factors.push_back(one.modulus);
    if (pos < s.size()) {
      if (s[pos] != 'x') throw ParseError("bad module '" + s + "'");
      ++pos;
    }
  }
  if (factors.empty()) throw ParseError("empty module");
  return cyclic_product(ring, std::move(factors));
}

std::uint64_t ModulePresentation::size() const {
  if (rational_) throw InfiniteCarrier("Q as a module");
  std::uint64_t n = 1;
  for (auto d : factors_) n *= static_cast<std::uint64_t>(d);
  return n;
}

std::vector<std::int64_t> ModulePresentation::coords(ModElem a) const {
  std::vector<std::int64_t> c(factors_.size());
  std::uint64_t v = a;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    auto d = static_cast<std::uint64_t>(factors_[i]);
    c[i] = static_cast<std::int64_t>(v % d);
    v /= d;
  }
  return c;
}

ModElem ModulePresentation::from_coords(const std::vector<std::int64_t>& c) const {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::int64_t d = factors_[i];
    std::int64_t r = c[i] % d;
    if (r < 0) r += d;
    v = v * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(r);
  }
  return static_cast<ModElem>(v);
}

ModElem ModulePresentation::add(ModElem a, ModElem b) const {
  if (!add_table_.empty()) return add_table_[a * size() + b];
  auto ca = coords(a);
  auto cb = coords(b);
  for (std::size_t i = 0; i < ca.size(); ++i) ca[i] += cb[i];
  return from_coords(ca);
}

ModElem ModulePresentation::neg(ModElem a) const {
  auto c = coords(a);
  for (auto& x : c) x = -x;
  return from_coords(c);
}

ModElem ModulePresentation::act(ModElem a, std::int64_t r) const {
  if (a == 0) return 0;
  auto c = coords(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::int64_t rr = ((r % factors_[i]) + factors_[i]) % factors_[i];
    c[i] = (c[i] * rr) % factors_[i];
  }
  return from_coords(c);
}

std::string ModulePresentation::element_to_string(ModElem a) const {
  auto c = coords(a);
  if (c.size() == 1) return std::to_string(c[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c[i]);
  }
  return out + ")";
}

std::string ModulePresentation::to_string() const {
  if (rational_) return "Q";
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += "x";
    out += "Zmod(" + std::to_string(factors_[i]) + ")";
  }
  return out;
}

MixedRadixCounter::MixedRadixCounter(std::uint64_t radix, std::size_t length)
    : radix_(radix), digits_(length, 0), done_(radix == 0 && length > 0) {}

void MixedRadixCounter::advance() {
  for (std::size_t i = digits_.size(); i-- > 0;) {
    if (++digits_[i] < radix_) return;
    digits_[i] = 0;
  }
  done_ = true;
}

std::uint64_t tuple_count(const ModulePresentation& m, std::size_t n,
                          std::uint64_t ceiling) {
  std::uint64_t size = m.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > ceiling / size) {
      throw SearchSpaceTooLarge("|M|^n exceeds " + std::to_string(ceiling));
    }
    total *= size;
  }
  return total;
}

void for_each_tuple(const ModulePresentation& m, std::size_t n,
                    const std::function<bool(const std::vector<ModElem>&)>& f) {
  std::uint64_t size = m.size();
  std::vector<ModElem> tuple(n);
  for (MixedRadixCounter ctr(size, n); !ctr.done(); ctr.advance()) {
    for (std::size_t i = 0; i < n; ++i) {
      tuple[i] = static_cast<ModElem>(ctr.digits()[i]);
    }
    if (!f(tuple)) return;
  }
}

std::vector<std::vector<ModElem>> enumerate_module(const ModulePresentation& m,
                                                   std::size_t n) {
  std::vector<std::vector<ModElem>> out;
  out.reserve(tuple_count(m, n, std::uint64_t{1} << 26));
  for_each_tuple(m, n, [&](const std::vector<ModElem>& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

}  // namespace embedlab
