#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cli/golden.hpp"
#include "embedlab/errors.hpp"
#include "embedlab/galg.hpp"
#include "embedlab/matideal.hpp"
#include "embedlab/matroid.hpp"
#include "embedlab/ogroup.hpp"
#include "embedlab/series.hpp"
#include "embedlab/wqo.hpp"

namespace embedlab::cli {

namespace {

const ParamSpec kGroup{"group", "c=-1", "group descriptor, e.g. c=-1, c=zeta3, c=gauss(3/5,4/5)"};
const ParamSpec kField{"field", "Q", "coefficient field: Q or Fp(p)"};
const ParamSpec kRing{"ring", "Fp(2)", "ring: Z, Q, Fp(p) or Zmod(m)"};
const ParamSpec kModule{"module", "", "module: Q, Zmod(d), Zmod(d)^k, Zmod(a)xZmod(b); empty = ring"};
const ParamSpec kSideMod{"side", "right", "closure from right or left module: right|left"};
const ParamSpec kSeed{"seed", "1", "sampling seed"};

}  // namespace

const std::vector<CommandSpec>& command_table() {
  static const std::vector<CommandSpec> table = {
      {"invert",
       "invert a finite a by x: the series b with b*x = a (right) or x*b = a (left)",
       {kGroup, kField,
        {"x", "1-t", "divisor x, a nonzero element of kG"},
        {"a", "1", "finite element a of kG"},
        {"terms", "20", "number of leading terms to print"},
        {"side", "right", "right|left"},
        {"budget", "200000", "step budget"},
        {"audit", "false", "track the remainder and check support containment"}}},
      {"rho",
       "least element of g.S and its inverse map",
       {kGroup,
        {"s", "1;t", "finite support S, elements separated by ;"},
        {"g", "s", "group element"},
        {"side", "right", "right|left"}}},
      {"pair",
       "pairing <a, b> of a right series a and a left series b",
       {kGroup, kField,
        {"a", "1+t", "finite right element"},
        {"b", "2", "finite left element"},
        {"max-terms", "10000", "pull limit per stream"}}},
      {"wqo-demo",
       "closure generation examples",
       {kGroup, kField,
        {"example", "evens", "evens|empty|dubrovin"},
        {"budget", "10", "maximum number of elements"},
        {"x", "1-t", "divisor for the dubrovin example"},
        {"a", "s", "numerator for the dubrovin example"}}},
      {"closure-audit",
       "closure operator axioms on a finite window",
       {kRing, kModule, kSideMod,
        {"check", "axioms", "axioms|restricted-exchange|field-oracle"},
        {"n", "2", "height"},
        {"bound", "2", "integer entries in [-bound, bound] for infinite rings"},
        {"trials", "200", "sampled instances"},
        {"exhaustive", "false", "enumerate instead of sampling"},
        kSeed}},
      {"exchange-audit",
       "search for exchange-property violations at heights 1..n",
       {kRing, kModule, kSideMod,
        {"n", "2", "largest height"},
        {"bound", "2", "integer entries in [-bound, bound] for infinite rings"},
        {"ceiling", "50000000", "largest search space"}}},
      {"strong-audit",
       "random instances of the strong-matrix lemmas",
       {kRing, kModule,
        {"max-n", "4", "largest size"},
        {"trials", "500", "instances per clause"},
        kSeed}},
      {"eitheror-audit",
       "either/or condition at heights 1..n, cross-checked against exchange",
       {kRing, kModule, kSideMod,
        {"n", "2", "largest height"},
        {"bound", "2", "integer entries in [-bound, bound] for infinite rings"},
        {"ceiling", "5000000", "largest search space"}}},
      {"matideal-audit",
       "matrix ideal axioms, determinant agreement or module conditions",
       {{"ring", "Z", "ring"},
        {"module", "Zmod(4)", "module for induced ideals and module conditions"},
        {"spec", "induced-noninjective",
         "induced-noninjective|induced-nonsurjective|det|list"},
        {"check", "axioms", "axioms|det-agreement|module-conditions"},
        {"mode", "injective", "injective|surjective (module-conditions)"},
        {"n", "2", "largest matrix size"},
        {"window", "2", "integer entries in [-window, window] for infinite rings"},
        {"p", "0", "prime for det specs; 0 = least prime of the module exponent"},
        {"list", "", "explicit members, matrices separated by ;"}}},
      {"malcolmson-audit",
       "row determinantal sums against elementary row operations",
       {{"ring", "Z", "ring"},
        {"module", "Zmod(4)", "module for induced ideals"},
        {"spec", "det", "induced-noninjective|induced-nonsurjective|det|list"},
        {"n", "2", "largest matrix size"},
        {"window", "2", "integer entries in [-window, window]"},
        {"p", "2", "prime for det specs"},
        {"list", "", "explicit members, matrices separated by ;"}}},
      {"partition",
       "local orders of group elements on a finite set, and their periodicity in x^n",
       {{"group", "c=zeta3", "group descriptor"},
        {"s", "1;y^(-1-w)", "the finite set S, elements separated by ;"},
        {"g", "1;x;x^2", "elements whose local order is shown"},
        {"window", "50", "probe x^n for |n| <= window"}}},
      {"probe-q2",
       "sample a -> a*y1 - ((a*x1)*x2^-1)*y2 for a zero output",
       {kGroup, kField,
        {"x1", "1-t", ""},
        {"x2", "1+t", ""},
        {"y1", "1", ""},
        {"y2", "1", ""},
        {"trials", "20", "sampled a"},
        {"budget", "5000", "step budget per sample"},
        kSeed}},
      {"golden",
       "run the fixed examples with known answers",
       {kSeed, {"mutate", "false", "corrupt one inverter coefficient (suite must fail)"}}},
  };
  return table;
}

const CommandSpec& find_command(const std::string& name) {
  for (const auto& c : command_table()) {
    if (c.name == name) return c;
  }
  throw ParseError("unknown subcommand '" + name + "'");
}

ExperimentConfig complete(ExperimentConfig cfg) {
  const auto& spec = find_command(cfg.subcommand);
  for (const auto& [k, v] : cfg.params) {
    bool known = std::any_of(spec.params.begin(), spec.params.end(),
                             [&](const ParamSpec& p) { return p.name == k; });
    if (!known) throw ParseError("unknown parameter '" + k + "' for " + cfg.subcommand);
  }
  for (const auto& p : spec.params) cfg.params.emplace(p.name, p.default_value);
  if (cfg.format != "text" && cfg.format != "json") {
    throw ParseError("format must be text or json");
  }
  return cfg;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const std::string& s) {
                             return s.find_first_not_of(" \t") == std::string::npos;
                           }),
            out.end());
  return out;
}

namespace {

using nlohmann::json;

std::shared_ptr<const Group> group_of(const ExperimentConfig& cfg) {
  return std::make_shared<const Group>(GroupDescriptor::parse(cfg.get("group")));
}

Side side_of(const ExperimentConfig& cfg) {
  const auto& s = cfg.get("side");
  if (s == "right") return Side::Right;
  if (s == "left") return Side::Left;
  throw ParseError("side must be right or left");
}

ClosureContext context_of(const ExperimentConfig& cfg) {
  auto ring = RingDescriptor::parse(cfg.get("ring"));
  std::string module = cfg.get("module");
  if (module.empty()) module = ring.is_finite() ? ring.to_string() : "Q";
  ClosureSide side = ClosureSide::FromRightModule;
  if (cfg.params.count("side")) {
    const auto& s = cfg.get("side");
    if (s == "left") {
      side = ClosureSide::FromLeftModule;
    } else if (s != "right") {
      throw ParseError("side must be right or left");
    }
  }
  return ClosureContext(ring, ModulePresentation::parse(ring, module), side);
}

std::vector<GroupElement> elements_of(const Group& g, const std::string& list) {
  std::vector<GroupElement> out;
  for (const auto& s : split_list(list)) out.push_back(g.parse_element(s));
  if (out.empty()) throw ParseError("empty element list");
  return out;
}

RunResult from_audit(const AuditReport& rep) {
  return {rep.passed() ? kPass : kViolations, rep.to_text(), rep.to_json()};
}

RunResult from_audits(const std::vector<AuditReport>& reps) {
  RunResult r;
  r.json = json::array();
  for (const auto& rep : reps) {
    r.text += rep.to_text();
    r.json.push_back(rep.to_json());
    if (!rep.passed()) r.exit_code = kViolations;
  }
  return r;
}

std::int64_t least_prime_factor(std::int64_t m) {
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) return p;
  }
  return m;
}

// ---------------------------------------------------------------------------

RunResult cmd_invert(const ExperimentConfig& cfg) {
  auto g = group_of(cfg);
  auto field = RingDescriptor::parse(cfg.get("field"));
  const Side side = side_of(cfg);
  auto x = parse_algebra(*g, field, cfg.get("x"));
  auto a = parse_algebra(*g, field, cfg.get("a"));
  if (x.is_zero()) throw DomainMismatch("x must be nonzero");
  InversionOptions opt;
  opt.budget = cfg.get_uint("budget");
  opt.audit = cfg.get_bool("audit");
  opt.stats = std::make_shared<InversionStats>();
  auto b = dubrovin_invert(SeriesStream::finite(g, a, side), x, opt);
  auto terms = b.take(cfg.get_uint("terms"));

  RunResult r;
  std::ostringstream out;
  out << (side == Side::Right ? "b with b*x = a" : "b with x*b = a") << ", "
      << terms.size() << " leading terms\n";
  r.json["terms"] = json::array();
  for (const auto& t : terms) {
    out << "  " << g->format(t.g) << ": " << t.c.to_string() << "\n";
    r.json["terms"].push_back({{"g", g->format(t.g)}, {"c", t.c.to_string()}});
  }
  const bool ended = b.ended();
  if (ended) out << "  (series ends here)\n";
  r.json["ended"] = ended;
  if (opt.audit) {
    const auto& s = *opt.stats;
    out << "audit: " << s.y_elements << " Y elements, " << s.containment_checks
        << " remainder terms checked, " << s.containment_failures
        << " containment failures, " << s.resolution_failures << " resolution failures\n";
    r.json["audit"] = {{"y_elements", s.y_elements},
                       {"containment_checks", s.containment_checks},
                       {"containment_failures", s.containment_failures},
                       {"resolution_failures", s.resolution_failures}};
    if (s.containment_failures + s.resolution_failures > 0) r.exit_code = kViolations;
  }
  r.text = out.str();
  return r;
}

RunResult cmd_rho(const ExperimentConfig& cfg) {
  auto g = group_of(cfg);
  Frame frame(g, side_of(cfg));
  auto s = elements_of(*g, cfg.get("s"));
  auto e = g->parse_element(cfg.get("g"));
  auto r = rho(frame, s, e);
  auto ri = rho_inverse(frame, s, e);
  const bool ok = rho(frame, s, ri) == e && rho_inverse(frame, s, r) == e;
  RunResult out;
  out.text = "rho(" + g->format(e) + ") = " + g->format(r) + "\nrho_inverse(" +
             g->format(e) + ") = " + g->format(ri) + "\nround trip: " +
             (ok ? "ok" : "FAILED") + "\n";
  out.json = {{"rho", g->format(r)}, {"rho_inverse", g->format(ri)}, {"round_trip", ok}};
  out.exit_code = ok ? kPass : kViolations;
  return out;
}

RunResult cmd_pair(const ExperimentConfig& cfg) {
  auto g = group_of(cfg);
  auto field = RingDescriptor::parse(cfg.get("field"));
  auto a = SeriesStream::finite(g, parse_algebra(*g, field, cfg.get("a")), Side::Right);
  auto b = SeriesStream::finite(g, parse_algebra(*g, field, cfg.get("b")), Side::Left);
  auto v = pair(a, b, cfg.get_uint("max-terms"));
  return {kPass, "<a, b> = " + v.to_string() + "\n", {{"value", v.to_string()}}};
}

RunResult cmd_wqo(const ExperimentConfig& cfg) {
  const auto& ex = cfg.get("example");
  const std::size_t budget = cfg.get_uint("budget");
  RunResult r;
  std::vector<std::string> elems;
  bool truncated = false;
  if (ex == "evens" || ex == "empty") {
    wqo::PartialOpFamily<long> seed{0, 1, [](const std::vector<long>&, std::size_t) {
                                      return std::optional<long>(0);
                                    }};
    wqo::PartialOpFamily<long> step{1, 1, [](const std::vector<long>& v, std::size_t) {
                                      return v[0] % 2 == 0 ? std::optional<long>(v[0] + 2)
                                                           : std::nullopt;
                                    }};
    std::vector<wqo::PartialOpFamily<long>> fams;
    if (ex == "evens") fams.push_back(seed);
    fams.push_back(step);
    auto res = wqo::close(fams, wqo::ClosureBudget{budget, 1000000});
    for (auto v : res.elements) elems.push_back(std::to_string(v));
    truncated = res.truncated;
  } else if (ex == "dubrovin") {
    auto g = group_of(cfg);
    auto field = RingDescriptor::parse(cfg.get("field"));
    auto x = parse_algebra(*g, field, cfg.get("x"));
    auto a = parse_algebra(*g, field, cfg.get("a"));
    if (x.is_zero()) throw DomainMismatch("x must be nonzero");
    auto sx = x.support();
    std::vector<GroupElement> seeds;
    for (const auto& e : a.support()) seeds.push_back(rho_inverse(*g, sx, e));
    std::sort(seeds.begin(), seeds.end());
    std::size_t pos = 0;
    wqo::PartialOpFamily<GroupElement> succ{
        1, sx.size(), [&](const std::vector<GroupElement>& v, std::size_t j) {
          auto t = g->mul(v[0], sx[j]);
          if (t == rho(*g, sx, v[0])) return std::optional<GroupElement>();
          return std::optional<GroupElement>(rho_inverse(*g, sx, t));
        }};
    wqo::OrderedCloser<GroupElement> closer(
        {succ},
        [&]() -> std::optional<GroupElement> {
          if (pos >= seeds.size()) return std::nullopt;
          return seeds[pos++];
        },
        wqo::ClosureBudget{budget, 1000000});
    while (auto v = closer.next()) elems.push_back(g->format(*v));
    truncated = closer.truncated();
  } else {
    throw ParseError("example must be evens, empty or dubrovin");
  }
  std::string list;
  for (std::size_t i = 0; i < elems.size(); ++i) list += (i ? ", " : "") + elems[i];
  r.text = "Y = {" + list + "}" + (truncated ? " (truncated)" : "") + "\n";
  r.json = {{"elements", elems}, {"truncated", truncated}};
  return r;
}

RunResult cmd_closure(const ExperimentConfig& cfg) {
  auto ctx = context_of(cfg);
  SampleSpec spec{cfg.get_uint("trials"), cfg.get_int("bound"), cfg.get_uint("seed"),
                  cfg.get_bool("exhaustive")};
  const std::size_t n = cfg.get_uint("n");
  const auto& check = cfg.get("check");
  if (check == "axioms") return from_audit(closure_axioms_audit(ctx, n, spec));
  if (check == "restricted-exchange") return from_audit(restricted_exchange_audit(ctx, n, spec));
  if (check == "field-oracle") return from_audit(field_oracle_audit(ctx, n, spec));
  throw ParseError("check must be axioms, restricted-exchange or field-oracle");
}

RunResult cmd_exchange(const ExperimentConfig& cfg) {
  auto ctx = context_of(cfg);
  const std::size_t max_n = cfg.get_uint("n");
  RunResult r;
  std::ostringstream out;
  out << "exchange audit for " << ctx.describe() << ", heights 1.." << max_n << "\n";
  r.json["context"] = ctx.describe();
  r.json["heights"] = json::array();
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto rep = exchange_audit(ctx, n, cfg.get_int("bound"), cfg.get_uint("ceiling"));
    out << "n=" << n << " over " << rep.window << ": " << rep.triples_checked
        << " triples checked, " << rep.violation_count << " violations\n";
    json h = {{"n", n},
              {"window", rep.window},
              {"triples_checked", rep.triples_checked},
              {"violation_count", rep.violation_count},
              {"violations", json::array()}};
    for (const auto& v : rep.violations) {
      out << "  H=" << v.h.to_string() << " u=" << vec_to_string(v.u)
          << " t=" << vec_to_string(v.t) << ": chain " << v.ann_h << " > " << v.ann_hu
          << " > " << v.ann_ht << "\n";
      h["violations"].push_back({{"H", v.h.to_string()},
                                 {"u", vec_to_string(v.u)},
                                 {"t", vec_to_string(v.t)},
                                 {"chain", {v.ann_h, v.ann_hu, v.ann_ht}}});
    }
    if (rep.found()) r.exit_code = kViolations;
    r.json["heights"].push_back(h);
  }
  out << (r.exit_code == kPass ? "PASS\n" : "FAIL\n");
  r.text = out.str();
  return r;
}

RunResult cmd_strong(const ExperimentConfig& cfg) {
  auto ctx = context_of(cfg);
  return from_audit(
      strong_lemmas_audit(ctx, cfg.get_uint("max-n"), cfg.get_uint("trials"), cfg.get_uint("seed")));
}

RunResult cmd_eitheror(const ExperimentConfig& cfg) {
  auto ctx = context_of(cfg);
  const std::size_t max_n = cfg.get_uint("n");
  std::vector<AuditReport> reps;
  AuditReport cross;
  cross.audit = "either/or against exchange for " + ctx.describe();
  cross.window = "heights 1.." + std::to_string(max_n);
  for (std::size_t n = 1; n <= max_n; ++n) {
    reps.push_back(either_or_audit(ctx, n, cfg.get_int("bound"), cfg.get_uint("ceiling")));
    auto ex = exchange_audit(ctx, n, cfg.get_int("bound"));
    const bool eo = reps.back().passed();
    cross.record("either/or holding implies no exchange violation", !eo || !ex.found(), [&] {
      return "n=" + std::to_string(n) + ": either/or passed but exchange found " +
             std::to_string(ex.violation_count) + " violations";
    });
    cross.notes.push_back("n=" + std::to_string(n) + ": either/or " + (eo ? "holds" : "fails") +
                          ", exchange violations " + std::to_string(ex.violation_count));
  }
  reps.push_back(cross);
  return from_audits(reps);
}

MatrixIdealSpec ideal_spec_of(const ExperimentConfig& cfg) {
  const auto& kind = cfg.get("spec");
  auto ring = RingDescriptor::parse(cfg.get("ring"));
  if (kind == "det") {
    if (ring.kind != RingKind::Integers) throw DomainMismatch("det specs live over Z");
    return MatrixIdealSpec::det_divisible_by(cfg.get_int("p"));
  }
  if (kind == "list") {
    std::vector<IntMatrix> members;
    for (const auto& m : split_list(cfg.get("list"))) members.push_back(IntMatrix::parse(m));
    return MatrixIdealSpec::explicit_list(ring, std::move(members));
  }
  auto module = ModulePresentation::parse(ring, cfg.get("module"));
  if (kind == "induced-noninjective") return MatrixIdealSpec::induced_non_injective(ring, module);
  if (kind == "induced-nonsurjective") {
    return MatrixIdealSpec::induced_non_surjective(ring, module);
  }
  throw ParseError("spec must be induced-noninjective, induced-nonsurjective, det or list");
}

RunResult cmd_matideal(const ExperimentConfig& cfg) {
  IdealWindow w{cfg.get_uint("n"), cfg.get_int("window")};
  const auto& check = cfg.get("check");
  if (check == "module-conditions") {
    auto ring = RingDescriptor::parse(cfg.get("ring"));
    ClosureContext ctx(ring, ModulePresentation::parse(ring, cfg.get("module")));
    const auto& mode = cfg.get("mode");
    if (mode != "injective" && mode != "surjective") {
      throw ParseError("mode must be injective or surjective");
    }
    return from_audit(module_conditions_audit(
        ctx, mode == "injective" ? ModuleMode::Injective : ModuleMode::Surjective, w));
  }
  if (check == "det-agreement") {
    auto ring = RingDescriptor::parse(cfg.get("ring"));
    auto module = ModulePresentation::parse(ring, cfg.get("module"));
    std::int64_t p = cfg.get_int("p");
    if (p == 0) {
      std::int64_t e = 1;
      for (auto d : module.factors()) e = std::lcm(e, d);
      if (e < 2) throw DomainMismatch("module is trivial");
      p = least_prime_factor(e);
    }
    auto spec = MatrixIdealSpec::induced_non_injective(ring, module);
    return from_audit(det_agreement_audit(spec, p, w));
  }
  if (check == "axioms") {
    ExperimentConfig c = cfg;
    if (c.get("spec") == "det" && c.get_int("p") == 0) c.params["p"] = "2";
    return from_audit(ideal_axioms_audit(ideal_spec_of(c), w));
  }
  throw ParseError("check must be axioms, det-agreement or module-conditions");
}

RunResult cmd_malcolmson(const ExperimentConfig& cfg) {
  IdealWindow w{cfg.get_uint("n"), cfg.get_int("window")};
  return from_audit(malcolmson_audit(ideal_spec_of(cfg), w));
}

RunResult cmd_partition(const ExperimentConfig& cfg) {
  auto g = group_of(cfg);
  auto s = elements_of(*g, cfg.get("s"));
  auto gs = elements_of(*g, cfg.get("g"));
  RunResult r;
  std::ostringstream out;
  auto render = [&](const std::vector<GroupElement>& v) {
    std::string t;
    for (std::size_t i = 0; i < v.size(); ++i) t += (i ? " < " : "") + g->format(v[i]);
    return t;
  };
  out << "local orders on S = {";
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? ", " : "") << g->format(s[i]);
  out << "}\n";
  r.json["local_orders"] = json::array();
  std::vector<std::vector<GroupElement>> orders;
  for (const auto& e : gs) {
    auto ord = g->local_order_class(e, s);
    std::size_t cls = orders.size();
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (orders[i] == ord) {
        cls = i;
        break;
      }
    }
    if (cls == orders.size()) orders.push_back(ord);
    out << "  g=" << g->format(e) << ": " << render(ord) << "  [class " << cls << "]\n";
    r.json["local_orders"].push_back(
        {{"g", g->format(e)}, {"order", render(ord)}, {"class", cls}});
  }
  const long window = cfg.get_int("window");
  auto probe = positivity_periodicity_probe(*g, s, window);
  if (probe.period) {
    out << "x^n for |n| <= " << window << ": period " << *probe.period << "\n";
    r.json["period"] = *probe.period;
  } else {
    out << "x^n for |n| <= " << window << ": no period <= " << window << "\n";
    r.json["period"] = nullptr;
  }
  r.json["window"] = window;
  r.text = out.str();
  return r;
}

RunResult cmd_probe_q2(const ExperimentConfig& cfg) {
  auto g = group_of(cfg);
  auto field = RingDescriptor::parse(cfg.get("field"));
  auto el = [&](const char* k) { return parse_algebra(*g, field, cfg.get(k)); };
  auto rep = probe_q2(*g, field, el("x1"), el("x2"), el("y1"), el("y2"), cfg.get_uint("trials"),
                      cfg.get_uint("seed"), cfg.get_uint("budget"));
  std::ostringstream out;
  out << rep.trials << " samples: " << rep.nonzero << " nonzero, " << rep.exact_zero
      << " zero, " << rep.undetermined << " undetermined\n"
      << "evidence: " << rep.evidence << "\n";
  return {kPass, out.str(),
          {{"trials", rep.trials},
           {"nonzero", rep.nonzero},
           {"exact_zero", rep.exact_zero},
           {"undetermined", rep.undetermined},
           {"evidence", rep.evidence}}};
}

RunResult cmd_golden(const ExperimentConfig& cfg) {
  GoldenOptions opt{cfg.get_uint("seed"), cfg.get_bool("mutate")};
  auto cases = run_goldens(opt);
  RunResult r;
  r.json["cases"] = json::array();
  std::size_t failed = 0;
  for (const auto& c : cases) {
    if (c.ok) {
      r.text += "PASS " + c.name + "\n";
    } else {
      ++failed;
      r.text += "FAIL " + c.name + "\n  expected: " + c.expected + "\n  actual:   " + c.actual + "\n";
    }
    r.json["cases"].push_back(
        {{"name", c.name}, {"ok", c.ok}, {"expected", c.expected}, {"actual", c.actual}});
  }
  r.text += std::to_string(cases.size() - failed) + "/" + std::to_string(cases.size()) +
            " golden cases passed\n";
  r.exit_code = failed ? kViolations : kPass;
  return r;
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
  const auto& s = cfg.subcommand;
  if (s == "invert") return cmd_invert(cfg);
  if (s == "rho") return cmd_rho(cfg);
  if (s == "pair") return cmd_pair(cfg);
  if (s == "wqo-demo") return cmd_wqo(cfg);
  if (s == "closure-audit") return cmd_closure(cfg);
  if (s == "exchange-audit") return cmd_exchange(cfg);
  if (s == "strong-audit") return cmd_strong(cfg);
  if (s == "eitheror-audit") return cmd_eitheror(cfg);
  if (s == "matideal-audit") return cmd_matideal(cfg);
  if (s == "malcolmson-audit") return cmd_malcolmson(cfg);
  if (s == "partition") return cmd_partition(cfg);
  if (s == "probe-q2") return cmd_probe_q2(cfg);
  if (s == "golden") return cmd_golden(cfg);
  throw ParseError("unknown subcommand '" + s + "'");
}

int run_and_print(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  RunResult r;
  std::string error;
  try {
    r = run(cfg);
  } catch (const BudgetExceeded& e) {
    r.exit_code = kBudget;
    error = std::string("budget exhausted: ") + e.what();
  } catch (const SearchSpaceTooLarge& e) {
    r.exit_code = kBudget;
    error = std::string("search space too large: ") + e.what();
  } catch (const Error& e) {
    r.exit_code = kUsage;
    error = e.what();
  }
  if (cfg.format == "json") {
    json j;
    j["config"] = cfg.to_json();
    j["exit_code"] = r.exit_code;
    j["passed"] = r.exit_code == kPass;
    if (!error.empty()) {
      j["error"] = error;
    } else {
      j["result"] = r.json;
    }
    out << j.dump(2) << "\n";
  } else {
    out << "# " << cfg.subcommand << "\n";
    std::istringstream lines(cfg.to_text());
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
    out << r.text;
  }
  if (!error.empty()) err << "error: " << error << "\n";
  return r.exit_code;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"embedlab: ordered-group series, module closures and matrix ideals"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::string format;
  app.add_option("--config", config_path, "key = value file with parameters");
  app.add_option("--format", format, "text or json");

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : command_table()) {
    auto* sub = app.add_subcommand(c.name, c.help);
    subs[c.name] = sub;
    for (const auto& p : c.params) {
      std::string help = p.help + " [default: " + p.default_value + "]";
      if (p.default_value == "false") {
        sub->add_flag("--" + p.name, flags[c.name][p.name], help);
      } else {
        sub->add_option("--" + p.name, values[c.name][p.name], help);
      }
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  ExperimentConfig cfg;
  try {
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) cfg.subcommand = name;
    }
    if (!config_path.empty()) {
      for (auto& [k, v] : read_config_file(config_path)) {
        if (k == "format") {
          cfg.format = v;
        } else if (k == "subcommand") {
          if (v != cfg.subcommand) {
            throw ParseError("config file is for '" + v + "', not '" + cfg.subcommand + "'");
          }
        } else {
          cfg.params[k] = v;
        }
      }
    }
    if (!format.empty()) cfg.format = format;
    auto* sub = subs[cfg.subcommand];
    for (const auto& p : find_command(cfg.subcommand).params) {
      if (sub->get_option("--" + p.name)->count() == 0) continue;
      if (p.default_value == "false") {
        cfg.params[p.name] = flags[cfg.subcommand][p.name] ? "true" : "false";
      } else {
        cfg.params[p.name] = values[cfg.subcommand][p.name];
      }
    }
    cfg = complete(std::move(cfg));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return run_and_print(cfg, out, err);
}

}  // namespace embedlab::cli
