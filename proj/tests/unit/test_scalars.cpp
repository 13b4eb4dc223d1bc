#include <doctest.h>

#include <set>

#include "embedlab/errors.hpp"
#include "embedlab/module.hpp"
#include "embedlab/quad.hpp"
#include "embedlab/rational_linalg.hpp"
#include "embedlab/scalars.hpp"
#include "gen.hpp"

using namespace embedlab;

namespace {

QMatrix qm(const std::vector<std::vector<long>>& rows) {
  std::vector<QVector> r;
  for (const auto& row : rows) {
    QVector v;
    for (long x : row) v.push_back(mpq_class(x));
    r.push_back(v);
  }
  return QMatrix::from_rows(r, rows.empty() ? 0 : rows[0].size());
}

bool times_is_zero(const QVector& v, const QMatrix& a) {
  for (const auto& x : row_times(v, a)) {
    if (x != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("scalar inverse examples") {
  auto q = RingDescriptor::rationals();
  CHECK(Scalar::one(q).inverse() == Scalar::one(q));
  CHECK(Scalar::parse(q, "2/3").inverse() == Scalar::parse(q, "3/2"));
  auto f5 = RingDescriptor::prime_field(5);
  CHECK(Scalar(f5, 3).inverse() == Scalar(f5, 2));
  CHECK_THROWS_AS(Scalar::zero(q).inverse(), ZeroInverse);
  CHECK_THROWS_AS(Scalar(RingDescriptor::integers_mod(4), 3).inverse(), NotAField);
}

TEST_CASE("canonical forms") {
  auto q = RingDescriptor::rationals();
  CHECK(Scalar::parse(q, "4/6") == Scalar::parse(q, "2/3"));
  CHECK(Scalar::parse(q, "-4/6").to_string() == "-2/3");
  auto z7 = RingDescriptor::integers_mod(7);
  CHECK(Scalar(z7, -1).value() == 6);
  CHECK(Scalar(z7, 15) == Scalar(z7, 1));
  CHECK(RingDescriptor::parse("Zmod(4)").to_string() == "Zmod(4)");
  CHECK_THROWS_AS(RingDescriptor::parse("Fp(4)"), Error);
  CHECK_THROWS_AS(RingDescriptor::parse("banana"), ParseError);
}

TEST_CASE("field axioms on samples") {
  gen::Rng rng(11);
  for (auto field : {RingDescriptor::rationals(), RingDescriptor::prime_field(5),
                     RingDescriptor::prime_field(7)}) {
    for (int i = 0; i < 300; ++i) {
      auto a = gen::scalar(field, rng), b = gen::scalar(field, rng), c = gen::scalar(field, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == Scalar::zero(field));
      if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(field));
    }
  }
}

TEST_CASE("quadratic constants") {
  auto w = QuadImaginary::omega();
  CHECK(w * w * w == QuadImaginary::rational(1, 3));
  auto c = QuadImaginary::parse_constant("gauss(3/5,4/5)");
  CHECK(c.norm() == 1);
  CHECK(c.sign_re() == 1);
  CHECK(c * c.inverse() == QuadImaginary::rational(1, 1));
  auto i = QuadImaginary::parse_constant("i");
  CHECK(i * i == QuadImaginary::rational(-1, 1));
}

TEST_CASE("rational kernel basis examples") {
  CHECK(rational_kernel_basis(qm({{1, 0}, {0, 1}})).empty());

  auto k = rational_kernel_basis(qm({{1}, {1}}));
  REQUIRE(k.size() == 1);
  CHECK(in_span(k, QVector{1, -1}, 2));

  auto a = qm({{1, 2}, {2, 4}});
  auto k2 = rational_kernel_basis(a);
  REQUIRE(k2.size() == 1);
  CHECK(times_is_zero(k2[0], a));
  CHECK(in_span(k2, QVector{-2, 1}, 2));
}

TEST_CASE("rational kernel basis properties") {
  gen::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = gen::range(rng, 1, 4), c = gen::range(rng, 1, 4);
    std::vector<std::vector<long>> rows(r, std::vector<long>(c));
    for (auto& row : rows) {
      for (auto& x : row) x = gen::range(rng, -2, 2);
    }
    auto a = qm(rows);
    auto k = rational_kernel_basis(a);
    CHECK(k.size() == r - rank(a));
    for (const auto& v : k) CHECK(times_is_zero(v, a));
    // a standard basis vector outside the span raises the rank
    for (std::size_t i = 0; i < r; ++i) {
      QVector e(r, 0);
      e[i] = 1;
      if (in_span(k, e, r)) continue;
      auto ext = k;
      ext.push_back(e);
      CHECK(rank(QMatrix::from_rows(ext, r)) == k.size() + 1);
    }
  }
}

TEST_CASE("module enumeration") {
  auto z = RingDescriptor::integers();
  auto m2 = ModulePresentation::parse(z, "Zmod(2)");
  CHECK(enumerate_module(m2, 1).size() == 2);
  auto m4 = ModulePresentation::parse(z, "Zmod(4)");
  auto e4 = enumerate_module(m4, 1);
  REQUIRE(e4.size() == 4);
  for (ModElem i = 0; i < 4; ++i) CHECK(e4[i] == std::vector<ModElem>{i});
  auto v4 = ModulePresentation::parse(z, "Zmod(2)xZmod(2)");
  auto all = enumerate_module(v4, 2);
  CHECK(all.size() == 16);
  CHECK(std::set<std::vector<ModElem>>(all.begin(), all.end()).size() == 16);
  CHECK(tuple_count(ModulePresentation::parse(z, "Zmod(3)^2"), 3, 1000000) == 729);
  CHECK_THROWS_AS(enumerate_module(ModulePresentation::parse(z, "Q"), 1), InfiniteCarrier);
}

TEST_CASE("module action is additive and associative") {
  auto z = RingDescriptor::integers();
  auto m = ModulePresentation::parse(z, "Zmod(4)xZmod(6)");
  gen::Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    ModElem a = gen::range(rng, 0, m.size() - 1), b = gen::range(rng, 0, m.size() - 1);
    long r = gen::range(rng, -7, 7), s = gen::range(rng, -7, 7);
    CHECK(m.act(m.add(a, b), r) == m.add(m.act(a, r), m.act(b, r)));
    CHECK(m.act(a, r + s) == m.add(m.act(a, r), m.act(a, s)));
    CHECK(m.act(m.act(a, r), s) == m.act(a, r * s));
    CHECK(m.add(a, m.neg(a)) == m.zero());
  }
}
