// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "embedlab/errors.hpp"
#include "embedlab/galg.hpp"
#include "embedlab/matideal.hpp"
#include "embedlab/matroid.hpp"
#include "embedlab/ogroup.hpp"
#include "embedlab/series.hpp"

using namespace embedlab;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_s,
               const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_time = secs <= limit_s;
  bool ok = r.ok && in_time;
  if (!ok) ++failures;
  std::printf("%s %-3s %-58s %7.2fs (limit %gs)%s%s\n", ok ? "PASS" : "FAIL", id, title, secs,
              limit_s, r.detail.empty() ? "" : "  ", r.detail.c_str());
  if (!in_time) std::printf("         time limit exceeded\n");
  std::fflush(stdout);
}

const std::vector<std::string> kGroups = {"c=-1", "c=1", "c=zeta3", "c=gauss(3/5,4/5)"};

std::string terms_text(const Group& g, const std::vector<Term>& ts) {
  std::string out;
  for (const auto& t : ts) out += (out.empty() ? "" : " ") + format_term(g, t.g, t.c);
  return out;
}

const AuditCheck* find_check(const AuditReport& rep, const std::string& prefix) {
  for (const auto& c : rep.checks) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

// every check named with one of the prefixes ran and had no failures
bool all_pass(const AuditReport& rep, const std::vector<std::string>& prefixes,
              std::string& detail) {
  bool ok = true;
  for (const auto& p : prefixes) {
    bool seen = false;
    for (const auto& c : rep.checks) {
      if (c.name.rfind(p, 0) != 0) continue;
      seen = true;
      if (c.failures || !c.checked) {
        ok = false;
        detail += " " + c.name + " failed";
      }
    }
    if (!seen) {
      ok = false;
      detail += " missing " + p;
    }
  }
  return ok;
}

GroupElement random_element(const Group& g, std::mt19937_64& rng) {
  auto r = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  mpq_class a(r(-8, 8), r(1, 3));
  a.canonicalize();
  mpq_class b = g.c().im() != 0 ? mpq_class(r(-4, 4)) : mpq_class(0);
  return g.make(a, b, r(-6, 6));
}

std::size_t round_trip_failures = 0;
std::size_t containment_failures = 0;
std::size_t containment_checks = 0;

}  // namespace

int main() {
  auto kb = std::make_shared<const Group>(GroupDescriptor::klein());
  const auto q = RingDescriptor::rationals();
  const auto z = RingDescriptor::integers();

  criterion("1", "(1-t)^-1 * 1 and (1-t)^-1 * s, 20 terms exact", 1.0, [&] {
    auto x = parse_algebra(*kb, q, "1-t");
    std::string e1, e2;
    for (int i = 0; i < 20; ++i) {
      std::string p = i == 0 ? "" : i == 1 ? "t" : "t^" + std::to_string(i);
      e1 += (i ? " " : "") + (i == 0 ? std::string("1") : p);
      std::string ps = i + 1 == 1 ? "t" : "t^" + std::to_string(i + 1);
      e2 += (i ? " " : "") + std::string("-") + ps + "s";
    }
    auto b1 = dubrovin_invert(SeriesStream::finite(kb, parse_algebra(*kb, q, "1")), x).take(20);
    auto b2 = dubrovin_invert(SeriesStream::finite(kb, parse_algebra(*kb, q, "s")), x).take(20);
    auto g1 = terms_text(*kb, b1), g2 = terms_text(*kb, b2);
    Outcome o{g1 == e1 && g2 == e2, ""};
    if (g1 != e1) o.detail += "got " + g1;
    if (g2 != e2) o.detail += " got " + g2;
    return o;
  });

  criterion("2", "round trip (a x^-1) x = a, 200 samples/group, prefix 50", 30.0, [&] {
    std::mt19937_64 rng(2024);
    std::size_t samples = 0;
    for (const auto& name : kGroups) {
      Group g(GroupDescriptor::parse(name));
      for (int i = 0; i < 200; ++i) {
        auto field = i % 2 ? RingDescriptor::prime_field(5) : q;
        auto a = random_algebra_element(g, field, 5, 2, rng);
        auto x = random_algebra_element(g, field, 3, 2, rng);
        if (x.is_zero()) continue;
        InversionOptions opt;
        opt.audit = true;
        opt.stats = std::make_shared<InversionStats>();
        auto rt = round_trip_check(g, a, x, 50, opt);
        ++samples;
        if (!rt.ok()) ++round_trip_failures;
        containment_failures += opt.stats->containment_failures + opt.stats->resolution_failures;
        containment_checks += opt.stats->containment_checks;
      }
    }
    return Outcome{round_trip_failures == 0,
                   std::to_string(samples) + " samples, " + std::to_string(round_trip_failures) +
                       " mismatches"};
  });

  criterion("3", "rho bijective and strictly monotone, 10^4 samples/group", 5.0, [&] {
    std::mt19937_64 rng(3);
    std::size_t bad = 0;
    for (const auto& name : kGroups) {
      Group g(GroupDescriptor::parse(name));
      std::vector<GroupElement> s;
      for (int i = 0; i < 10000; ++i) {
        if (i % 100 == 0) s = random_algebra_element(g, q, 4, 2, rng).support();
        if (s.empty()) s = {g.identity()};
        auto a = random_element(g, rng), c = random_element(g, rng);
        auto ra = rho(g, s, a), rc = rho(g, s, c);
        if (rho(g, s, rho_inverse(g, s, a)) != a) ++bad;
        if (rho_inverse(g, s, ra) != a) ++bad;
        int before = g.compare(a, c), after = g.compare(ra, rc);
        if (before != after) ++bad;
      }
    }
    return Outcome{bad == 0, std::to_string(bad) + " failures"};
  });

  criterion("4", "support containment audit during criterion 2", 1.0, [&] {
    return Outcome{containment_checks > 0 && containment_failures == 0,
                   std::to_string(containment_checks) + " checks, " +
                       std::to_string(containment_failures) + " failures"};
  });

  criterion("5a", "exchange over F_2, n <= 2: no violation", 60.0, [&] {
    auto f2 = RingDescriptor::prime_field(2);
    ClosureContext ctx(f2, ModulePresentation::parse(f2, "Zmod(2)"));
    std::uint64_t found = 0, triples = 0;
    for (std::size_t n = 1; n <= 2; ++n) {
      auto rep = exchange_audit(ctx, n, 2);
      found += rep.violation_count;
      triples += rep.triples_checked;
    }
    return Outcome{found == 0, std::to_string(triples) + " triples"};
  });

  criterion("5b", "exchange over Z/4, n = 1: chain M > {0,2} > {0}", 60.0, [&] {
    auto z4 = RingDescriptor::integers_mod(4);
    ClosureContext ctx(z4, ModulePresentation::parse(z4, "Zmod(4)"));
    auto rep = exchange_audit(ctx, 1, 2);
    for (const auto& v : rep.violations) {
      if (v.ann_h == "{0,1,2,3}" && v.ann_hu == "{0,2}" && v.ann_ht == "{0}") {
        return Outcome{true, "u=" + vec_to_string(v.u) + " t=" + vec_to_string(v.t)};
      }
    }
    return Outcome{false, std::to_string(rep.violation_count) + " violations, none of the shape"};
  });

  criterion("5c", "exchange over Z (Q backend), n = 2, entries [-2,2]", 60.0, [&] {
    ClosureContext ctx(z, ModulePresentation::parse(z, "Q"));
    auto rep = exchange_audit(ctx, 2, 2);
    auto rep1 = exchange_audit(ctx, 1, 2);
    return Outcome{!rep.found() && !rep1.found(),
                   std::to_string(rep.triples_checked + rep1.triples_checked) + " triples"};
  });

  criterion("6", "strong-matrix lemmas, 500 trials/clause, F_2 and F_3, n <= 4", 60.0, [&] {
    std::string detail;
    bool ok = true;
    for (std::int64_t p : {2, 3}) {
      auto r = RingDescriptor::prime_field(p);
      ClosureContext ctx(r, ModulePresentation::parse(r, "Zmod(" + std::to_string(p) + ")"));
      auto rep = strong_lemmas_audit(ctx, 4, 500, 6);
      std::size_t min_checked = SIZE_MAX;
      for (const auto& c : rep.checks) min_checked = std::min(min_checked, c.checked);
      ok = ok && rep.passed() && !rep.checks.empty() && min_checked >= 500;
      detail += "F_" + std::to_string(p) + ": " + std::to_string(rep.checks.size()) +
                " clauses, " + std::to_string(rep.failures()) + " counterexamples; ";
    }
    return Outcome{ok, detail};
  });

  criterion("7", "either/or over F_2, n <= 2, consistent with exchange", 60.0, [&] {
    auto f2 = RingDescriptor::prime_field(2);
    ClosureContext ctx(f2, ModulePresentation::parse(f2, "Zmod(2)"));
    bool ok = true;
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 2; ++n) {
      auto rep = either_or_audit(ctx, n, 2);
      for (const auto& c : rep.checks) checked += c.checked;
      ok = ok && rep.passed() && !exchange_audit(ctx, n, 2).found();
    }
    return Outcome{ok, std::to_string(checked) + " instances"};
  });

  auto induced4 = MatrixIdealSpec::induced_non_injective(z, ModulePresentation::parse(z, "Zmod(4)"));

  criterion("8a", "InducedNonInjective(Z/4) = {det even}, 2x2 in [-2,2]", 60.0, [&] {
    auto rep = det_agreement_audit(induced4, 2, {2, 2});
    std::size_t n = rep.checks.empty() ? 0 : rep.checks.front().checked;
    return Outcome{rep.passed() && n >= 625, std::to_string(n) + " matrices"};
  });

  criterion("8b", "kernel dichotomy fails for Z/p^2 (p = 2, 3)", 60.0, [&] {
    bool ok = true;
    std::string detail;
    struct Case {
      RingDescriptor ring;
      const char* module;
      std::int64_t p;
    };
    for (const auto& c : {Case{z, "Zmod(4)", 2}, Case{RingDescriptor::integers_mod(9), "Zmod(9)", 3}}) {
      ClosureContext ctx(c.ring, ModulePresentation::parse(c.ring, c.module));
      auto rep = module_conditions_audit(ctx, ModuleMode::Injective, {2, 1});
      auto kd = find_check(rep, "kernel_dichotomy");
      auto w = dichotomy_witness(ctx, IntMatrix::parse("[[1],[0]]"), ModuleMode::Injective,
                                 ctx.ring_values(2));
      bool shape = w && w->good == IntVec{0, 1} && w->bad == IntVec{0, c.p};
      ok = ok && kd && kd->failures > 0 && shape;
      detail += std::string(c.module) + ": " +
                (w ? "good=" + vec_to_string(w->good) + " bad=" + vec_to_string(w->bad)
                   : std::string("no witness")) +
                "; ";
    }
    return Outcome{ok, detail};
  });

  criterion("8c", "ideal axioms for InducedNonInjective(Z/4)", 120.0, [&] {
    auto rep = ideal_axioms_audit(induced4, {2, 2});
    std::string detail;
    bool ok = all_pass(rep,
                       {"diag_sum", "cancel_one", "one_excluded", "prime", "elementary_left",
                        "elementary_right"},
                       detail);
    return Outcome{ok, detail};
  });

  criterion("9", "Malcolmson bridge for DetDivisibleBy(2), n = 2, [-2,2]", 60.0, [&] {
    auto rep = malcolmson_audit(MatrixIdealSpec::det_divisible_by(2), {2, 2});
    std::string detail;
    bool ok = all_pass(rep, {"row_sum", "elementary_left", "signed swap identity"}, detail);
    return Outcome{ok, detail};
  });

  criterion("10", "pairing <a r, b> = <a, r b> (500 triples), <g, g^-1> = 1", 5.0, [&] {
    std::mt19937_64 rng(10);
    std::size_t bad = 0;
    for (int i = 0; i < 500; ++i) {
      auto a = random_algebra_element(*kb, q, 4, 3, rng);
      auto r = random_algebra_element(*kb, q, 3, 2, rng);
      auto b = random_algebra_element(*kb, q, 4, 3, rng);
      auto lhs = pair(SeriesStream::finite(kb, algebra_mul(*kb, a, r)),
                      SeriesStream::finite(kb, b, Side::Left), 100000);
      auto rhs = pair(SeriesStream::finite(kb, a),
                      SeriesStream::finite(kb, algebra_mul(*kb, r, b), Side::Left), 100000);
      if (!(lhs == rhs)) ++bad;
      auto g = random_element(*kb, rng);
      auto one = Scalar::one(q);
      auto lg = pair(SeriesStream::finite(kb, AlgebraElement::monomial(q, g, one)),
                     SeriesStream::finite(kb, AlgebraElement::monomial(q, kb->inv(g), one),
                                          Side::Left),
                     100);
      if (!(lg == one)) ++bad;
    }
    return Outcome{bad == 0, std::to_string(bad) + " failures"};
  });

  criterion("11", "local-order partition and periodicity probe", 5.0, [&] {
    Group z3(GroupDescriptor::parse("c=zeta3"));
    std::vector<GroupElement> s = {z3.identity(), z3.parse_element("y^(-1-w)")};
    auto o1 = z3.local_order_class(z3.identity(), s);
    auto ox = z3.local_order_class(z3.x(1), s);
    auto ox2 = z3.local_order_class(z3.x(2), s);
    bool fixture = o1 == ox && ox2 != o1;
    auto p3 = positivity_periodicity_probe(z3, s, 50);
    Group gauss(GroupDescriptor::parse("c=gauss(3/5,4/5)"));
    std::vector<GroupElement> sg = {gauss.identity(), gauss.make(0, 1, 0)};
    auto pg = positivity_periodicity_probe(gauss, sg, 50);
    bool gauss_ok = !pg.period || *pg.period > 25;
    std::string detail = std::string("fixture ") + (fixture ? "ok" : "wrong") + ", zeta3 period " +
                         (p3.period ? std::to_string(*p3.period) : "none") + ", gauss period " +
                         (pg.period ? std::to_string(*pg.period) : "none");
    return Outcome{fixture && p3.period == 3 && gauss_ok, detail};
  });

  std::printf("%s\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED");
  return failures ? 1 : 0;
}
