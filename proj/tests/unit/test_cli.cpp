#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "minred/io.hpp"
#include "minred/models.hpp"

using namespace minred;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(MINRED_FIXTURE_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = std::string(MINRED_TEST_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("invariants report") {
    const Run r = run({"invariants", fixture("wuthrich_reduced.g1")});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("c4 = ") == 0);
    CHECK(r.out.find("disc = ") != std::string::npos);
  }

  TEST_CASE("batch invariants with jobs keep input order") {
    const std::string a = temp_file("h11.g1", format_model(hesse_model(1, 1)));
    const std::string b = temp_file("h12.g1", format_model(hesse_model(1, 2)));
    const Run r = run({"invariants", "--jobs", "2", a, b});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("file = " + a) < r.out.find("file = " + b));
    CHECK(r.out.find("c4 = 496") != std::string::npos);
  }

  TEST_CASE("minimise reports the level drop") {
    const Run r = run({"minimise", "--prime", "2", fixture("wuthrich.g1")});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("level = 11 -> 0") != std::string::npos);
    CHECK(parse_model(r.out.substr(r.out.find("g1model"))).ring == RingTag::Z);
  }

  TEST_CASE("step mode on the cusp fixture") {
    const Run r = run({"minimise", "--step-mode", "--prime", "3", fixture("cusp.g1")});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("iterations = 5") != std::string::npos);
    CHECK(r.out.find("reached_non_saturated = yes") != std::string::npos);
  }

  TEST_CASE("reduce with and without a hint") {
    const Run r = run({"reduce", "--minimise", "--hessian-hint", fixture("wuthrich.hint"), fixture("wuthrich.g1")});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("reduced = yes") != std::string::npos);
    CHECK(r.out.find("sup_norm_after = 2") != std::string::npos);
    const Run n = run({"reduce", fixture("wuthrich_reduced.g1")});
    CHECK(n.code == cli::kOk);
    CHECK(n.out.find("warning = no Hessian available") != std::string::npos);
  }

  TEST_CASE("scramble then reduce through a transport hint") {
    const std::string hint = std::string(MINRED_TEST_TMP) + "/s.hint";
    const Run s = run({"scramble", "--hesse", "1,-2", "--seed", "5", "--bound", "200", "--emit-hint", hint});
    REQUIRE(s.code == cli::kOk);
    const std::string model = temp_file("s.g1", s.out);
    const Run r = run({"reduce", "--hessian-hint", hint, model});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("sup_norm_after = 2") != std::string::npos);
    const Run g = run({"reduce", "--gram-only", "--hessian-hint", hint, model});
    CHECK(g.code == cli::kOk);
    std::istringstream is(g.out);
    int count = 0;
    std::string tok;
    while (is >> tok) ++count;
    CHECK(count == 25);
  }

  TEST_CASE("critical check") {
    const Run r = run({"critical-check", "--prime", "5", fixture("critical_p5.g1")});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("level = 2") != std::string::npos);
    CHECK(r.out.find("cycle_period = 5") != std::string::npos);
    const Run n = run({"critical-check", "--prime", "5", fixture("wuthrich_reduced.g1")});
    CHECK(n.code == cli::kOk);
    CHECK(n.out.find("pattern = not critical") != std::string::npos);
  }

  TEST_CASE("weight tables") {
    const Run r = run({"verify-weights", "--table", "7"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("result = PASS") != std::string::npos);
    CHECK(run({"verify-weights", "--table", "8"}).code == cli::kParseError);
  }

  TEST_CASE("make builds an integral model") {
    const Run r = run({"make", "1", "1", "1", "-3146", "39049"});
    CHECK(r.code == cli::kOk);
    CHECK(parse_model(r.out).ring == RingTag::Z);
    CHECK(run({"make", "1", "2"}).code == cli::kParseError);
  }

  TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kParseError);
    CHECK(run({"invariants", "/nonexistent.g1"}).code == cli::kParseError);
    const std::string bad = temp_file("bad.g1", "g1model 5 Z\n1 2 : 1 2 3\n");
    const Run p = run({"invariants", bad});
    CHECK(p.code == cli::kParseError);
    CHECK(p.err.find("line 2") != std::string::npos);
    const std::string zero = temp_file("zero.g1", format_model(scale_model(hesse_model(1, 1), 0)));
    CHECK(run({"invariants", zero}).code == cli::kMathError);
    CHECK(run({"minimise", "--prime", "4", fixture("cusp.g1")}).code == cli::kParseError);
  }
}
