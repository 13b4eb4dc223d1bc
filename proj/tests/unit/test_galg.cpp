#include <doctest.h>

#include <set>

#include "embedlab/errors.hpp"
#include "embedlab/galg.hpp"
#include "embedlab/series.hpp"
#include "gen.hpp"

using namespace embedlab;

namespace {

struct Kb {
  Group g{GroupDescriptor::klein()};
  RingDescriptor q = RingDescriptor::rationals();
  AlgebraElement operator()(const char* text) const { return parse_algebra(g, q, text); }
};

}  // namespace

TEST_CASE("products in the Klein bottle group algebra") {
  Kb kb;
  CHECK(algebra_mul(kb.g, kb("1"), kb("1-t")) == kb("1-t"));
  CHECK(algebra_mul(kb.g, kb("t"), kb("s")) == kb("ts"));
  CHECK(algebra_mul(kb.g, kb("1-t"), kb("1+t")) == kb("1-t^2"));
  CHECK(algebra_mul(kb.g, kb("s"), kb("t")) == kb("t^-1s"));
}

TEST_CASE("support is sorted by the right order") {
  Kb kb;
  CHECK(AlgebraElement(kb.q).support().empty());
  CHECK(kb("1-t").support() ==
        std::vector<GroupElement>{kb.g.identity(), kb.g.parse_element("t")});
  CHECK(kb("ts+s").support() ==
        std::vector<GroupElement>{kb.g.parse_element("s"), kb.g.parse_element("ts")});
}

TEST_CASE("cancellation drops terms") {
  Kb kb;
  auto u = kb("1-t") + kb("t");
  CHECK(u == kb("1"));
  CHECK((kb("s") - kb("s")).is_zero());
  CHECK(kb("2*t - 2*t").is_zero());
}

TEST_CASE("parse and format round trip") {
  Kb kb;
  for (const char* e : {"1 - t", "-ts - t^2s", "3/2*s + 1", "2*x - 1/3"}) {
    auto u = kb(e);
    CHECK(kb(format_algebra(kb.g, u).c_str()) == u);
  }
  CHECK_THROWS_AS(kb("1 + + t"), ParseError);
}

TEST_CASE("ring axioms and support bounds on samples") {
  gen::Rng rng(21);
  for (const auto& name : gen::group_names()) {
    CAPTURE(name);
    Group g(GroupDescriptor::parse(name));
    for (auto field : {RingDescriptor::rationals(), RingDescriptor::prime_field(5)}) {
      for (int i = 0; i < 60; ++i) {
        auto u = random_algebra_element(g, field, 3, 2, rng);
        auto v = random_algebra_element(g, field, 3, 2, rng);
        auto w = random_algebra_element(g, field, 3, 2, rng);
        CHECK(algebra_mul(g, algebra_mul(g, u, v), w) == algebra_mul(g, u, algebra_mul(g, v, w)));
        CHECK(algebra_mul(g, u, v + w) == algebra_mul(g, u, v) + algebra_mul(g, u, w));
        CHECK(algebra_mul(g, u + v, w) == algebra_mul(g, u, w) + algebra_mul(g, v, w));
        auto one = AlgebraElement::monomial(field, g.identity(), Scalar::one(field));
        CHECK(algebra_mul(g, one, u) == u);

        std::set<GroupElement> products;
        for (const auto& a : u.support()) {
          for (const auto& b : v.support()) products.insert(g.mul(a, b));
        }
        for (const auto& e : algebra_mul(g, u, v).support()) CHECK(products.count(e) == 1);

        auto h = gen::element(g, rng);
        auto shifted = right_translate(g, u, h);
        CHECK(shifted.support().front() == g.mul(u.support().front(), h));
      }
    }
  }
}
