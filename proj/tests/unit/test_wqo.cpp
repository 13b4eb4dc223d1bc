#include <doctest.h>

#include <algorithm>
#include <set>

#include "embedlab/galg.hpp"
#include "embedlab/series.hpp"
#include "embedlab/wqo.hpp"
#include "gen.hpp"

using namespace embedlab;
using wqo::ClosureBudget;
using wqo::PartialOpFamily;

namespace {

PartialOpFamily<long> seeds(std::vector<long> v) {
  return {0, v.size(), [v](const std::vector<long>&, std::size_t i) {
            return std::optional<long>(v[i]);
          }};
}

PartialOpFamily<long> plus(long k, bool even_only = false) {
  return {1, 1, [k, even_only](const std::vector<long>& x, std::size_t) {
            if (even_only && x[0] % 2 != 0) return std::optional<long>();
            return std::optional<long>(x[0] + k);
          }};
}

// x + y, defined when the result stays below a cap
PartialOpFamily<long> capped_sum(long cap) {
  return {2, 1, [cap](const std::vector<long>& x, std::size_t) {
            long s = x[0] + x[1];
            return s < cap ? std::optional<long>(s) : std::nullopt;
          }};
}

std::vector<GroupElement> dubrovin_y(const Group& g, const AlgebraElement& a,
                                     const AlgebraElement& x, std::size_t budget) {
  auto sx = x.support();
  std::vector<PartialOpFamily<GroupElement>> fams;
  std::vector<GroupElement> seed;
  for (const auto& e : a.support()) seed.push_back(rho_inverse(g, sx, e));
  fams.push_back({0, seed.size(), [seed](const std::vector<GroupElement>&, std::size_t i) {
                    return std::optional<GroupElement>(seed[i]);
                  }});
  fams.push_back({1, sx.size(), [&g, sx](const std::vector<GroupElement>& v, std::size_t j) {
                    auto t = g.mul(v[0], sx[j]);
                    if (t == rho(g, sx, v[0])) return std::optional<GroupElement>();
                    return std::optional<GroupElement>(rho_inverse(g, sx, t));
                  }});
  return wqo::ordered_close(fams, ClosureBudget{budget, 100000}).elements;
}

}  // namespace

TEST_CASE("close examples") {
  CHECK(wqo::close<long>({plus(1)}, ClosureBudget{}).elements.empty());

  auto r = wqo::close<long>({seeds({0}), plus(2, true)}, ClosureBudget{10, 100000});
  CHECK(r.elements == std::vector<long>{0, 2, 4, 6, 8, 10, 12, 14, 16, 18});
  CHECK(r.truncated);

  auto odd = wqo::close<long>({seeds({1}), plus(2, true)}, ClosureBudget{10, 100000});
  CHECK(odd.elements == std::vector<long>{1});
  CHECK_FALSE(odd.truncated);
}

TEST_CASE("ordered_close examples") {
  auto one = wqo::ordered_close<long>({seeds({5})}, ClosureBudget{});
  CHECK(one.elements == std::vector<long>{5});
  CHECK_FALSE(one.truncated);

  auto r = wqo::ordered_close<long>({seeds({1, 4}), plus(2)}, ClosureBudget{6, 100000});
  CHECK(r.elements == std::vector<long>{1, 3, 4, 5, 6, 7});
  CHECK(r.truncated);

  CHECK_THROWS_AS(wqo::ordered_close<long>({seeds({3}), plus(-1)}, ClosureBudget{}),
                  OrderViolation);
}

TEST_CASE("Dubrovin data for a = s, x = 1 - t") {
  Group kb(GroupDescriptor::klein());
  auto q = RingDescriptor::rationals();
  auto y = dubrovin_y(kb, parse_algebra(kb, q, "s"), parse_algebra(kb, q, "1-t"), 8);
  std::vector<std::string> got;
  for (const auto& e : y) got.push_back(kb.format(e));
  CHECK(got == std::vector<std::string>{"ts", "t^2s", "t^3s", "t^4s", "t^5s", "t^6s", "t^7s",
                                        "t^8s"});
  auto rep = wqo::wpo_probe(y, [&](auto& a, auto& b) { return kb.less(a, b); },
                            [](auto& a, auto& b) { return a == b; });
  CHECK_FALSE(rep.descending_pair_found());
  CHECK(rep.max_antichain == 1);
}

TEST_CASE("wpo_probe examples") {
  std::vector<long> chain = {1, 2, 5, 9};
  auto r = wqo::wpo_probe(chain, std::less<long>(), std::equal_to<long>());
  CHECK(r.max_antichain == 1);
  CHECK(r.longest_descending == 1);

  using P = std::pair<int, int>;
  std::vector<P> pts = {{0, 1}, {1, 0}};
  auto prod = [](const P& a, const P& b) {
    return a != b && a.first <= b.first && a.second <= b.second;
  };
  auto r2 = wqo::wpo_probe(pts, prod, std::equal_to<P>());
  CHECK(r2.max_antichain == 2);

  std::vector<long> down = {5, 3, 1};
  CHECK(wqo::wpo_probe(down, std::less<long>(), std::equal_to<long>()).longest_descending == 3);
}

TEST_CASE("closure properties on random instances") {
  gen::Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<long> s;
    for (long k = gen::range(rng, 1, 3); k > 0; --k) s.push_back(gen::range(rng, 1, 10));
    std::sort(s.begin(), s.end());
    long step = gen::range(rng, 1, 5);
    long cap = gen::range(rng, 15, 40);
    PartialOpFamily<long> bounded_step{1, 1, [step, cap](const std::vector<long>& x, std::size_t) {
                                         return x[0] + step < cap ? std::optional<long>(x[0] + step)
                                                                  : std::nullopt;
                                       }};
    std::vector<PartialOpFamily<long>> fams = {seeds(s), bounded_step, capped_sum(cap)};
    auto a = wqo::close(fams, ClosureBudget{1000, 1000000});
    auto b = wqo::ordered_close(fams, ClosureBudget{1000, 1000000});
    REQUIRE_FALSE(a.truncated);
    REQUIRE_FALSE(b.truncated);
    CHECK(std::set<long>(a.elements.begin(), a.elements.end()) ==
          std::set<long>(b.elements.begin(), b.elements.end()));
    CHECK(std::is_sorted(b.elements.begin(), b.elements.end()));
    CHECK(std::adjacent_find(b.elements.begin(), b.elements.end()) == b.elements.end());

    // idempotent: reseeding with the output adds nothing
    auto again = wqo::close<long>({seeds(a.elements), fams[1], fams[2]},
                                  ClosureBudget{1000, 1000000});
    CHECK(std::set<long>(again.elements.begin(), again.elements.end()) ==
          std::set<long>(a.elements.begin(), a.elements.end()));

    // least: dropping a generated element breaks closure
    std::set<long> y(a.elements.begin(), a.elements.end());
    for (long e : a.elements) {
      if (std::find(s.begin(), s.end(), e) != s.end()) continue;
      std::set<long> smaller = y;
      smaller.erase(e);
      bool closed = true;
      for (long u : smaller) {
        if (u + step < cap && !smaller.count(u + step)) closed = false;
        for (long v : smaller) {
          if (u + v < cap && !smaller.count(u + v)) closed = false;
        }
      }
      CHECK_FALSE(closed);
      break;
    }
  }
}
