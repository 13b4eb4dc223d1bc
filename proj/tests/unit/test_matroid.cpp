#include <doctest.h>

#include "embedlab/errors.hpp"
#include "embedlab/matroid.hpp"
#include "embedlab/rational_linalg.hpp"
#include "gen.hpp"

using namespace embedlab;

namespace {

ClosureContext ctx(const char* ring, const char* module,
                   ClosureSide side = ClosureSide::FromRightModule) {
  auto r = RingDescriptor::parse(ring);
  return ClosureContext(r, ModulePresentation::parse(r, module), side);
}

SampleSpec exhaustive(std::int64_t bound = 2) {
  SampleSpec s;
  s.exhaustive = true;
  s.bound = bound;
  return s;
}

// rank of columns over F_p by elimination, independent of the annihilator code
std::size_t rank_fp(std::vector<IntVec> cols, std::int64_t p) {
  if (cols.empty()) return 0;
  std::size_t n = cols[0].size(), r = 0;
  for (std::size_t row = 0; row < n && r < cols.size(); ++row) {
    std::size_t piv = r;
    while (piv < cols.size() && ((cols[piv][row] % p) + p) % p == 0) ++piv;
    if (piv == cols.size()) continue;
    std::swap(cols[piv], cols[r]);
    std::int64_t inv = 1;
    std::int64_t v = ((cols[r][row] % p) + p) % p;
    while (v * inv % p != 1) ++inv;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c == r) continue;
      std::int64_t f = ((cols[c][row] % p) + p) % p * inv % p;
      for (std::size_t i = 0; i < n; ++i) cols[c][i] = ((cols[c][i] - f * cols[r][i]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("annihilator examples") {
  auto z4 = ctx("Zmod(4)", "Zmod(4)");
  CHECK(z4.annihilator(1, {}).count() == 4);
  auto a2 = z4.annihilator(1, {{2}});
  CHECK(a2.count() == 2);
  CHECK(z4.subset_to_string(a2) == "{0,2}");
  auto q = ctx("Z", "Q");
  CHECK(q.annihilator(IntMatrix::identity(2)).is_zero());
}

TEST_CASE("closure membership examples") {
  auto q = ctx("Z", "Q");
  CHECK(q.in_closure({3}, std::vector<IntVec>{{2}}, 1));
  CHECK(q.in_closure({2}, std::vector<IntVec>{{2}}, 1));
  CHECK_FALSE(q.in_closure({1, 0}, std::vector<IntVec>{{0, 5}}, 2));
  auto z4 = ctx("Zmod(4)", "Zmod(4)");
  CHECK_FALSE(z4.in_closure({1}, std::vector<IntVec>{{2}}, 1));
  CHECK(z4.in_closure({2}, std::vector<IntVec>{{2}}, 1));
  CHECK(z4.in_closure({0}, std::vector<IntVec>{}, 1));
}

TEST_CASE("closure axioms") {
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(closure_axioms_audit(ctx("Fp(2)", "Zmod(2)"), n, exhaustive()).passed());
  }
  for (std::size_t n = 1; n <= 2; ++n) {
    CHECK(closure_axioms_audit(ctx("Zmod(4)", "Zmod(4)"), n, exhaustive()).passed());
  }
  SampleSpec sampled;
  sampled.trials = 200;
  sampled.bound = 3;
  CHECK(closure_axioms_audit(ctx("Z", "Q"), 2, sampled).passed());
  CHECK(closure_axioms_audit(ctx("Zmod(4)", "Zmod(4)", ClosureSide::FromLeftModule), 2,
                             exhaustive())
            .passed());
}

TEST_CASE("exchange audits") {
  auto f2 = ctx("Fp(2)", "Zmod(2)");
  CHECK_FALSE(exchange_audit(f2, 1, 1).found());
  CHECK_FALSE(exchange_audit(f2, 2, 1).found());

  auto z4 = exchange_audit(ctx("Zmod(4)", "Zmod(4)"), 1, 3);
  REQUIRE(z4.found());
  const auto& v = z4.violations.front();
  CHECK(v.u == IntVec{2});
  CHECK(v.t == IntVec{1});
  CHECK(v.ann_h == "{0,1,2,3}");
  CHECK(v.ann_hu == "{0,2}");
  CHECK(v.ann_ht == "{0}");

  CHECK_FALSE(exchange_audit(ctx("Z", "Q"), 2, 2).found());
  CHECK(exchange_audit(ctx("Zmod(4)", "Zmod(4)", ClosureSide::FromLeftModule), 1, 3).found());
  CHECK_THROWS_AS(exchange_audit(ctx("Zmod(4)", "Zmod(4)"), 3, 3, 1000), SearchSpaceTooLarge);
}

TEST_CASE("strong matrix examples") {
  auto f3 = ctx("Fp(3)", "Zmod(3)");
  CHECK(f3.is_right_strong(IntMatrix::identity(3)));
  CHECK(f3.is_left_strong(IntMatrix::identity(3)));
  auto f2 = ctx("Fp(2)", "Zmod(2)");
  auto e1 = IntMatrix::parse("[[1],[0]]");
  CHECK(f2.is_left_strong(e1));
  CHECK_FALSE(f2.is_right_strong(e1));
  CHECK_FALSE(f2.is_left_strong(IntMatrix::parse("[[0],[0]]")));
}

TEST_CASE("strong lemma suites") {
  CHECK(strong_lemmas_audit(ctx("Fp(2)", "Zmod(2)"), 4, 100, 3).passed());
  CHECK(strong_lemmas_audit(ctx("Fp(3)", "Zmod(3)"), 4, 100, 4).passed());
}

TEST_CASE("either/or audits") {
  auto z4 = either_or_audit(ctx("Zmod(4)", "Zmod(4)"), 1, 3);
  CHECK_FALSE(z4.passed());
  CHECK(either_or_audit(ctx("Fp(5)", "Zmod(5)"), 1, 3).passed());
  CHECK(either_or_audit(ctx("Fp(2)", "Zmod(2)"), 2, 1).passed());
}

TEST_CASE("either/or implies exchange on small windows") {
  for (const char* r : {"Fp(2)", "Fp(3)", "Zmod(4)", "Zmod(6)"}) {
    CAPTURE(r);
    auto c = ctx(r, r);
    for (std::size_t n = 1; n <= 2; ++n) {
      if (either_or_audit(c, n, 2).passed()) CHECK_FALSE(exchange_audit(c, n, 2).found());
    }
  }
}

TEST_CASE("restricted exchange and field oracle") {
  CHECK(restricted_exchange_audit(ctx("Fp(2)", "Zmod(2)"), 2, exhaustive()).passed());
  CHECK(restricted_exchange_audit(ctx("Fp(3)", "Zmod(3)"), 1, exhaustive()).passed());
  SampleSpec s;
  s.trials = 100;
  CHECK(restricted_exchange_audit(ctx("Fp(2)", "Zmod(2)"), 3, s).passed());
  CHECK(field_oracle_audit(ctx("Fp(3)", "Zmod(3)"), 2, exhaustive()).passed());
}

TEST_CASE("closure over a prime field is linear span") {
  gen::Rng rng(23);
  for (std::int64_t p : {2, 3, 5}) {
    auto r = RingDescriptor::prime_field(p);
    ClosureContext c(r, ModulePresentation::parse(r, "Zmod(" + std::to_string(p) + ")"));
    for (int i = 0; i < 150; ++i) {
      std::size_t n = gen::range(rng, 1, 3);
      std::vector<IntVec> s(gen::range(rng, 0, 3));
      for (auto& v : s) {
        v.resize(n);
        for (auto& e : v) e = gen::range(rng, 0, p - 1);
      }
      IntVec x(n);
      for (auto& e : x) e = gen::range(rng, 0, p - 1);
      auto with = s;
      with.push_back(x);
      bool in_span = rank_fp(with, p) == rank_fp(s, p);
      CHECK(c.in_closure(x, s, n) == in_span);
    }
  }
}

TEST_CASE("Q backend closure is rational span") {
  gen::Rng rng(29);
  auto c = ctx("Z", "Q");
  for (int i = 0; i < 150; ++i) {
    std::size_t n = gen::range(rng, 1, 3);
    std::vector<IntVec> s(gen::range(rng, 0, 3));
    std::vector<QVector> qs;
    for (auto& v : s) {
      v.resize(n);
      QVector qv;
      for (auto& e : v) {
        e = gen::range(rng, -3, 3);
        qv.push_back(e);
      }
      qs.push_back(qv);
    }
    IntVec x(n);
    QVector qx;
    for (auto& e : x) {
      e = gen::range(rng, -3, 3);
      qx.push_back(e);
    }
    CHECK(c.in_closure(x, s, n) == in_span(qs, qx, n));
  }
}
