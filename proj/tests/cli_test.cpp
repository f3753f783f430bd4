#include "markt/error.hpp"
#include "markt/report.hpp"
#include "markt/suite.hpp"
#include "support/helpers.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace markt;
using namespace markt::testsupport;

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(MARKT_CLI) + " " + args + " 2>/dev/null";
  Run r{-1, ""};
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  while (auto n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

fs::path scratch() {
  auto dir = fs::temp_directory_path() / "markt-cli-test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  auto path = scratch() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("gen_suite") {
  auto five = gen_suite(parse_pattern("g.a.*", parse_alphabet("g,a,b,d,d'")));
  CHECK(five.size() == 5);
  for (const auto& t : five) {
    CHECK(t.test.length() == 3);
    CHECK(t.test.steps()[0].fail_actions.size() == 4);
  }
  CHECK(five[0].name == "g.a.a");

  auto single = gen_suite(parse_pattern("a", parse_alphabet("a")));
  REQUIRE(single.size() == 1);
  CHECK(single[0].test == parse_test("<a>.s"));

  CHECK(gen_suite(parse_pattern("*.x.*", parse_alphabet("a,b,c"))).size() == 9);

  auto minimal = gen_suite(parse_pattern("a.b", parse_alphabet("a,b,c")), FailSets::minimal);
  CHECK(minimal[0].test == parse_test("<a>.<b>.s"));

  CHECK_THROWS_AS(parse_alphabet(""), ValidationError);
  CHECK_THROWS_AS(parse_alphabet("a,tau"), ValidationError);
  CHECK_THROWS_AS(parse_pattern("", parse_alphabet("a")), ValidationError);
  CHECK_THROWS_AS(parse_pattern("a.*", {}), ValidationError);
  CHECK_THROWS_AS(parse_pattern("a.tau", parse_alphabet("a")), ValidationError);
}

TEST_CASE("suite files") {
  auto s = parse_suite(
      "# two named, one bare, one pattern\n"
      "T1 = <a>.s + <b>.f\n"
      "long = <a>.<b>.s\n"
      "<c>.s\n"
      "alphabet a, b\n"
      "pattern a.*\n");
  REQUIRE(s.size() == 5);
  CHECK(s[0].name == "T1");
  CHECK(s[1].name == "long");
  CHECK(s[2].name == "T2");
  CHECK_THROWS_AS(parse_suite("x = <a>.s\nx = <b>.s\n"), ValidationError);
  CHECK(s[3].name == "a.a");
  CHECK_THROWS_AS(parse_suite("# nothing\n"), ValidationError);
  try {
    parse_suite("ok = <a>.s\nbad = <a>.s +\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position().line == 2);
  }
}

TEST_CASE("report round trip") {
  Report r;
  r.inputs = {{"m1.mpc", digest_of("main = 0;")}};
  r.relation = "unified";
  r.params.epsilon = EpsilonSpec({q("1/2"), q("1/4")});
  r.params.nu = q("1/8");
  r.params.precision = q("2/3");
  r.params.recall = 1;
  r.params.max_len = 5;
  r.params.two_sided = true;
  r.verdict.holds = false;
  r.verdict.witnesses.push_back({"T", std::nullopt, th({"3/8", "1/2"}), 0, q("3/4")});
  r.verdict.witnesses.push_back({"U", std::string("V"), {}, q("1/3"), q("2/3")});
  r.verdict.matches.emplace_back("V", "V");
  r.verdict.minimal_nu = q("3/4");
  r.verdict.warnings.push_back("w");
  r.timing_ms = 1.25;

  auto j = to_json(r);
  CHECK(j["witnesses"][0]["prob_right"] == "3/4");
  CHECK(j["params"]["epsilon"][1] == "1/4");
  CHECK(report_from_json(j) == r);
  CHECK(report_from_json(nlohmann::json::parse(j.dump())) == r);

  r.params.epsilon = EpsilonSpec(q("1/2"));
  CHECK(report_from_json(to_json(r)) == r);
  CHECK(to_json(r)["params"]["epsilon"] == "1/2");

  CHECK(digest_of("") == "fnv1a64:cbf29ce484222325");
  CHECK(digest_of("a") == "fnv1a64:af63dc4c8601ec8c");
  CHECK(render_text(r).find("witness T") != std::string::npos);
}

TEST_CASE("command line") {
  auto m1 = write("m1.mpc", "main = " + swapped_pair_left("1", "2", "4") + ";\n");
  auto m2 = write("m2.mpc", "# right\nB = <b,2>.0;\nmain = <g,1>.<a,2>.<d,4>.0 + <g,1>.<a,4>.B;\n");
  auto t1 = write("t1.test", "<a1>.<a2>.s + <b>.f\n");
  auto t2 = write("t2.test", "<c>.<a2>.s + <b>.f + <b'>.f\n");
  auto suite = write("s.suite", "alphabet g,a,b,d\npattern g.a.b\ngad = <g>.<a>.(<d>.s + <b>.f)\n");
  auto broken = write("bad.mpc", "main = <a,1>.;\n");

  SUBCASE("equivalence verdicts and exit status") {
    auto r = run("equiv " + m1 + " " + m2 + " --suite 'pattern:g.a.*' --alphabet g,a,b,d --format json");
    CHECK(r.status == 1);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["holds"] == false);
    CHECK_FALSE(j["witnesses"].empty());
    CHECK(run("equiv " + m1 + " " + m1 + " --suite 'pattern:g.a.*' --alphabet g,a,b,d").status == 0);
    CHECK(run("equiv " + m1 + " " + m2 + " --suite " + suite).status == 1);
  }
  SUBCASE("json reports are deterministic apart from timing") {
    std::string args = "slow-simple " + m1 + " " + m2 + " --suite 'pattern:g.a.*' --eps 1/2 --format json";
    auto a = nlohmann::json::parse(run(args).out);
    auto b = nlohmann::json::parse(run(args + " --serial").out);
    a.erase("timing_ms");
    b.erase("timing_ms");
    CHECK(a.dump() == b.dump());
    CHECK(report_from_json(nlohmann::json::parse(run(args).out)).relation == "slow-simple");
  }
  SUBCASE("precision and recall") {
    auto r = run("prec-rec " + t1 + " " + t2);
    CHECK(r.status == 0);
    CHECK(r.out.find("precision 2/3") != std::string::npos);
    CHECK(r.out.find("recall 3/4") != std::string::npos);
  }
  SUBCASE("min-epsilon and other checks") {
    auto s1 = write("s1.mpc", "main = <g,2>.<a,2>.0;");
    auto s2 = write("s2.mpc", "main = <g,1>.<a,1>.0;");
    auto r = run("min-epsilon " + s1 + " " + s2 + " --suite pattern:g.a --mode slow-simple --format json");
    CHECK(r.status == 0);
    CHECK(nlohmann::json::parse(r.out)["minimal_thresholds"]["epsilon"] == "1/2");
    CHECK(run("slow-simple " + s1 + " " + s2 + " --suite pattern:g.a --eps 3/4").status == 1);
    CHECK(run("prob " + s1 + " " + s2 + " --suite pattern:g.a --nu 1").status == 0);
    CHECK(run("temporal " + s1 + " " + s2 + " --suite pattern:g.a --eps 1/2 --two-sided").status == 0);
    CHECK(run("info " + s1).status == 0);
  }
  SUBCASE("usage and input errors") {
    CHECK(run("equiv " + broken + " " + m1 + " --suite pattern:g").status == 2);
    CHECK(run("bogus " + m1 + " " + m2).status == 2);
    CHECK(run("equiv " + m1 + " " + m2).status == 2);
    CHECK(run("equiv " + m1 + " /nonexistent --suite pattern:g").status == 2);
    CHECK(run("slow " + m1 + " " + m2 + " --suite pattern:g --eps -1").status == 2);
    CHECK(run("slow " + m1 + " " + m2 + " --suite pattern:g --eps 1 --eps-vec 1,2").status == 2);
    CHECK(run("unified " + m1 + " " + m2 + " --suite pattern:g --prec 3/2").status == 2);
    CHECK(run("equiv " + m1 + " " + m2 + " --suite pattern:g.tau").status == 2);
  }
}
