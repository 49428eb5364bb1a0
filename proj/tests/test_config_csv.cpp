#include <sstream>

#include "doctest.h"
#include "qotto/config.hpp"
#include "qotto/csvio.hpp"
#include "qotto/errors.hpp"
#include "qotto/version.hpp"

using qotto::ValidationError;
using qotto::cfg::Config;

namespace {

const char* kSample = R"(# engine run
title = "three-body sweep"   # inline comment
seed = 42
verbose = false
ratio = 0.52

[cycle]
kappa = 0.333333333333333
beta = [10, 1e0, 0.5]        # cold first
modes = ['optimal', "scale#invariant"]
gt = +1.95

[grid]
points = 2049
tau = [2.0,]
)";

}  // namespace

TEST_CASE("config: parses the documented subset") {
  const Config c = Config::parse(kSample, "sample.toml");

  CHECK(c.get_string("title") == "three-body sweep");
  CHECK(c.get_int("seed") == 42);
  CHECK(c.get_bool("verbose") == false);
  CHECK(c.get_real("ratio") == doctest::Approx(0.52).epsilon(1e-15));
  CHECK(c.get_real("cycle.kappa") == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(c.get_real("cycle.gt") == 1.95);
  const auto beta = c.get_reals("cycle.beta");
  REQUIRE(beta.size() == 3);
  CHECK(beta[0] == 10.0);
  CHECK(beta[1] == 1.0);
  CHECK(beta[2] == 0.5);
  const auto modes = c.get_strings("cycle.modes");
  REQUIRE(modes.size() == 2);
  CHECK(modes[0] == "optimal");
  CHECK(modes[1] == "scale#invariant");  // '#' inside quotes is not a comment
  CHECK(c.get_int("grid.points") == 2049);
  CHECK(c.get_reals("grid.tau") == std::vector<double>{2.0});  // trailing comma ok

  CHECK(c.has("seed"));
  CHECK(!c.has("cycle.missing"));
  // integers promote to real, never the reverse
  CHECK(c.get_real("seed") == 42.0);
  CHECK_THROWS_AS((void)c.get_int("ratio"), ValidationError);

  // defaulted getters only kick in for absent keys
  CHECK(c.get_real("absent", 7.5) == 7.5);
  CHECK(c.get_int("seed", 7) == 42);
  CHECK(c.get_string("absent", "x") == "x");
  CHECK(c.get_bool("absent", true));
}

TEST_CASE("config: dump round-trips and is deterministic") {
  const Config c = Config::parse(kSample);
  const std::string d1 = c.dump();
  const Config c2 = Config::parse(d1);
  CHECK(c2.dump() == d1);
  CHECK(c2.keys() == c.keys());
  CHECK(c2.get_strings("cycle.modes") == c.get_strings("cycle.modes"));

  // root keys first, then sorted sections; values re-read exactly
  CHECK(d1.find("ratio = 0.52") < d1.find("[cycle]"));
  CHECK(d1.find("[cycle]") < d1.find("[grid]"));
  CHECK(c2.get_real("cycle.kappa") == c.get_real("cycle.kappa"));

  Config p;
  p.set_real("x", -0.0);
  p.set_real("y", 3.0);
  p.set_string("s", "a\"b\\c\nd");
  p.set_reals("v", {1.5, 2.0});
  const Config q = Config::parse(p.dump());
  CHECK(q.get_real("x") == 0.0);
  CHECK(q.get_real("y") == 3.0);  // dumped as 3.0, stays a real
  CHECK_THROWS_AS((void)q.get_int("y"), ValidationError);
  CHECK(q.get_string("s") == "a\"b\\c\nd");
  CHECK(q.get_reals("v") == std::vector<double>{1.5, 2.0});
}

TEST_CASE("config: malformed input is rejected with line numbers") {
  auto reject = [](const std::string& text, const std::string& needle) {
    try {
      (void)Config::parse(text, "t");
      FAIL_CHECK("accepted: " << text);
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  reject("a 1", "expected 'key = value'");
  reject("\n\nbad key = 1", "t:3");  // line number points at the offence
  reject("a = ", "missing value");
  reject("a = \"open", "unterminated string");
  reject("a = 'open", "unterminated string");
  reject("a = \"x\" y", "trailing characters");
  reject("a = \"\\q\"", "unsupported escape");
  reject("a = 12period", "invalid value");
  reject("a = [1, \"x\"]", "mixed array");
  reject("a = [1, [2]]", "nested arrays");
  reject("a = [1,,2]", "empty array element");
  reject("a = [true]", "numbers or strings");
  reject("a = [1, 2", "unterminated array");
  reject("[t]\na = 1\n[t]", "redefined");
  reject("a = 1\na = 2", "duplicate key");
  CHECK_NOTHROW((void)Config::parse("[t]\nx = 1\n"));  // baseline stays valid
  CHECK_THROWS_AS((void)Config::parse("t = 1\n[t]\nx = 2"), ValidationError);
  CHECK_THROWS_AS((void)Config::parse("[t]\nx = 2").get_real("t"), ValidationError);
  CHECK_THROWS_AS((void)Config::parse_file("/nonexistent/nope.toml"), ValidationError);

  const Config c = Config::parse("a = 1");
  CHECK_THROWS_AS((void)c.get_real("b"), ValidationError);          // missing, strict
  CHECK_THROWS_AS((void)c.get_strings("a"), ValidationError);      // wrong type
  Config p;
  CHECK_THROWS_AS(p.set_real("bad key", 1.0), ValidationError);
  CHECK_THROWS_AS(p.set_real("a.b.c", 1.0), ValidationError);
  p.set_real("cycle.kappa", 0.25);
  CHECK_THROWS_AS(p.set_real("cycle", 1.0), ValidationError);      // key vs table clash
}

TEST_CASE("config: overrides and read tracking") {
  Config c = Config::parse("seed = 1\n[cycle]\nkappa = 0.5\nunused = 3\n");
  c.set_int("seed", 9);          // flag beats file
  c.set_real("cycle.extra", 2.5);
  CHECK(c.get_int("seed") == 9);
  CHECK(c.get_real("cycle.extra") == 2.5);
  (void)c.get_real("cycle.kappa");
  const auto leftover = c.unread();
  REQUIRE(leftover.size() == 1);  // everything fetched except the typo'd key
  CHECK(leftover[0] == "cycle.unused");
}

TEST_CASE("csv: float formatting is 12-significant-digit and stable") {
  CHECK(qotto::csv::fmt(1.0 / 3.0) == "0.333333333333");
  CHECK(qotto::csv::fmt(2.0) == "2");
  CHECK(qotto::csv::fmt(-0.0) == "0");
  CHECK(qotto::csv::fmt(1e-300) == "1e-300");
  CHECK(qotto::csv::fmt(-123456789012345.0) == "-1.23456789012e+14");
  CHECK(qotto::csv::fmt(0.70211547) == "0.70211547");

  CHECK(qotto::csv::quote("plain") == "plain");
  CHECK(qotto::csv::quote("a,b") == "\"a,b\"");
  CHECK(qotto::csv::quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("csv: writer enforces the column contract") {
  std::ostringstream os;
  qotto::csv::Writer w(os);
  w.comment("demo");
  w.columns({"tau", "w", "label"});
  w.cell(2.0).cell(-0.5).cell("a,b");
  w.endrow();
  CHECK(os.str() == "# demo\ntau,w,label\n2,-0.5,\"a,b\"\n");
  CHECK_THROWS_AS(w.row({1.0, 2.0}), std::logic_error);  // short row

  std::ostringstream os2;
  qotto::csv::Writer w2(os2);
  CHECK_THROWS_AS(w2.endrow(), std::logic_error);  // empty row
  w2.cell(1.0);
  CHECK_THROWS_AS(w2.comment("x"), std::logic_error);       // comment mid-row
  CHECK_THROWS_AS(w2.columns({"a"}), std::logic_error);     // names mid-row
}

TEST_CASE("csv: headers echo the config, bodies are byte-identical") {
  const Config c = Config::parse(kSample);
  auto render = [&](const std::string& stamp) {
    std::ostringstream os;
    qotto::csv::Writer w(os);
    qotto::csv::config_header(w, "cycle", c, stamp);
    w.columns({"kappa", "eta"});
    w.row({1.0 / 3.0, 2.0 / 3.0});
    return os.str();
  };
  const std::string a = render("2026-08-18T00:00:00Z");
  const std::string b = render("2026-08-18T11:11:11Z");

  auto body = [](const std::string& s) {
    std::string out;
    std::istringstream is(s);
    for (std::string line; std::getline(is, line);)
      if (line.empty() || line[0] != '#') out += line + "\n";
    return out;
  };
  CHECK(a != b);                  // stamps differ...
  CHECK(body(a) == body(b));      // ...bodies do not
  CHECK(body(a) == "kappa,eta\n0.333333333333,0.666666666667\n");

  CHECK(a.find("# qotto " + std::string(qotto::version())) != std::string::npos);
  CHECK(a.find("# command: cycle") != std::string::npos);
  CHECK(a.find("#   seed = 42") != std::string::npos);
  CHECK(a.find("#   [cycle]") != std::string::npos);
  CHECK(a.find("#   kappa = 0.333333333333333") != std::string::npos);
  // a stampless render is fully reproducible
  CHECK(render("") == render(""));
}
