#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/golden.hpp"
#include "embedlab/errors.hpp"

using namespace embedlab::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "embedlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("config text parsing") {
  auto m = parse_config_text(
      "# comment\n[invert]\n--group = c=-1\nx = \"1-t\"\n\nterms=5  # trailing\n");
  CHECK(m.at("group") == "c=-1");
  CHECK(m.at("x") == "1-t");
  CHECK(m.at("terms") == "5");
  CHECK(m.size() == 3);
  CHECK_THROWS_AS(parse_config_text("no equals sign\n"), embedlab::ParseError);
}

TEST_CASE("completed configs carry every default") {
  ExperimentConfig cfg;
  cfg.subcommand = "invert";
  cfg.params["terms"] = "7";
  auto full = complete(cfg);
  CHECK(full.get("terms") == "7");
  CHECK(full.get("x") == "1-t");
  CHECK(full.get_int("budget") == 200000);
  CHECK_FALSE(full.get_bool("audit"));
  cfg.params["nonsense"] = "1";
  CHECK_THROWS(complete(cfg));
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({"no-such-command"}).code == kUsage);
  CHECK(cli({"invert", "--nonsense", "3"}).code == kUsage);
  CHECK(cli({"invert", "--group", "c=banana"}).code == kUsage);
  CHECK(cli({"invert", "--x", "0"}).code == kUsage);
  CHECK(cli({"matideal-audit", "--ring", "F2"}).code == kUsage);
}

TEST_CASE("invert prints the leading terms") {
  auto r = cli({"invert", "--group", "c=-1", "--x", "1-t", "--a", "1", "--terms", "5"});
  CHECK(r.code == kPass);
  for (const char* line : {"  1: 1\n", "  t: 1\n", "  t^2: 1\n", "  t^3: 1\n", "  t^4: 1\n"}) {
    CHECK(contains(r.out, line));
  }
  CHECK_FALSE(contains(r.out, "t^5"));
  CHECK(contains(r.out, "# terms = 5"));

  auto s = cli({"invert", "--a", "s", "--terms", "3"});
  CHECK(s.code == kPass);
  CHECK(contains(s.out, "  ts: -1\n"));
  CHECK(contains(s.out, "  t^3s: -1\n"));
}

TEST_CASE("budget exhaustion exits 3") {
  auto r = cli({"invert", "--budget", "5", "--terms", "50"});
  CHECK(r.code == kBudget);
  CHECK(contains(r.err, "budget"));
  auto e = cli({"exchange-audit", "--ring", "Zmod(4)", "--n", "3", "--ceiling", "1000"});
  CHECK(e.code == kBudget);
}

TEST_CASE("exchange audit reports the Z/4 chain") {
  auto r = cli({"exchange-audit", "--ring", "Zmod(4)", "--n", "1"});
  CHECK(r.code == kViolations);
  CHECK(contains(r.out, "{0,1,2,3} > {0,2} > {0}"));
  CHECK(cli({"exchange-audit", "--ring", "Fp(2)", "--n", "2"}).code == kPass);
}

TEST_CASE("matrix ideal audits") {
  CHECK(cli({"matideal-audit", "--ring", "Z", "--module", "Zmod(4)", "--check",
             "det-agreement"})
            .code == kPass);
  auto mc = cli({"matideal-audit", "--module", "Zmod(4)", "--check", "module-conditions"});
  CHECK(mc.code == kViolations);
  CHECK(contains(mc.out, "kernel_dichotomy"));
  CHECK(cli({"malcolmson-audit", "--spec", "det", "--p", "2"}).code == kPass);
}

TEST_CASE("json and text agree") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"exchange-audit", "--ring", "Zmod(4)", "--n", "1"},
        std::vector<std::string>{"invert", "--terms", "4"},
        std::vector<std::string>{"rho", "--g", "s"},
        std::vector<std::string>{"invert", "--budget", "5"}}) {
    auto text = cli(args);
    args.insert(args.begin(), {"--format", "json"});
    auto js = cli(args);
    CHECK(text.code == js.code);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["exit_code"] == js.code);
    CHECK(j["passed"] == (js.code == kPass));
    CHECK(j["config"]["subcommand"] == args[2]);
  }
  auto j = nlohmann::json::parse(cli({"--format", "json", "rho", "--g", "s"}).out);
  CHECK(j["result"]["rho"] == "t^-1s");
  CHECK(j["result"]["rho_inverse"] == "ts");
}

TEST_CASE("runs are reproducible") {
  std::vector<std::string> args = {"strong-audit", "--ring", "Fp(3)", "--max-n", "3",
                                   "--trials", "40", "--seed", "9"};
  auto a = cli(args);
  auto b = cli(args);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
}

TEST_CASE("config files") {
  const std::string path = "embedlab_test_config.ini";
  {
    std::ofstream f(path);
    f << "# invert the Klein bottle example\nsubcommand = invert\nx = 1-t\na = s\nterms = 2\n";
  }
  auto r = cli({"--config", path, "invert"});
  CHECK(r.code == kPass);
  CHECK(contains(r.out, "  ts: -1\n"));
  CHECK(contains(r.out, "  t^2s: -1\n"));
  // command line wins over the file
  auto o = cli({"--config", path, "invert", "--terms", "1"});
  CHECK_FALSE(contains(o.out, "t^2s"));
  CHECK(cli({"--config", path, "rho"}).code == kUsage);
  std::remove(path.c_str());
  CHECK(cli({"--config", "/nonexistent/embedlab.ini", "invert"}).code == kUsage);
}

TEST_CASE("partition and probe") {
  auto r = cli({"partition", "--group", "c=zeta3"});
  CHECK(r.code == kPass);
  CHECK(contains(r.out, "period 3"));
}
