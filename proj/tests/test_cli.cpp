#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "zhukit/cli.hpp"

using namespace zhukit;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Sets an environment variable for one scope.
class ScopedEnv {
public:
  ScopedEnv(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
  ~ScopedEnv() { unsetenv(name_); }
  ScopedEnv(const ScopedEnv&) = delete;
  ScopedEnv& operator=(const ScopedEnv&) = delete;

private:
  const char* name_;
};

}  // namespace

TEST_CASE("cli: mu and pi fixed values") {
  const Run mu = run({"mu", "--T", "1", "--n", "0", "--m", "0", "--delta", "0", "--alpha", "0", "--beta", "0", "--r",
                      "0", "--i", "-1"});
  REQUIRE(mu.code == exit_pass);
  const json m = json::parse(mu.out);
  CHECK(m["poly"] == json::parse(R"([[-1, "1/1"]])"));
  CHECK(m["window"]["lo"] == -2);

  const Run pi = run({"pi", "--T", "1", "--n", "0", "--p", "0", "--m", "0", "--delta", "0", "--alpha", "1", "--beta",
                      "1"});
  REQUIRE(pi.code == exit_pass);
  CHECK(json::parse(pi.out)["poly"] == json::parse(R"([[-1, "1/1"], [0, "1/1"]])"));
}

TEST_CASE("cli: reduce, phi and det-gamma") {
  const Run r = run({"reduce", "--N", "0", "--Q", "1/2", "--q", "-2", "--f", "z^-2"});
  REQUIRE(r.code == exit_pass);
  CHECK(json::parse(r.out)["canonical"] == json::parse(R"([[-1, "-1/2"], [0, "1/8"]])"));

  const Run rj = run({"reduce", "--N", "0", "--Q", "1/2", "--q", "-2", "--f", R"([[-2, "1/1"]])"});
  REQUIRE(rj.code == exit_pass);
  CHECK(json::parse(rj.out)["canonical"] == json::parse(r.out)["canonical"]);

  const Run p = run({"phi", "--N", "0", "--gamma", "0", "--f", "z^-1"});
  REQUIRE(p.code == exit_pass);
  CHECK(json::parse(p.out)["result"] == json::parse(R"([[-1, "1/1"], [0, "1/1"]])"));

  const Run d = run({"det-gamma", "--T", "2", "--N", "0", "--q", "-1", "--Qs", "1,1/2"});
  REQUIRE(d.code == exit_pass);
  const json dj = json::parse(d.out);
  CHECK(dj["det"] == "-1/2");
  CHECK(dj["equal"] == true);
}

TEST_CASE("cli: vertex verbs") {
  const Run s = run({"star", "--T", "1", "--n", "0", "--p", "0", "--m", "0", "--a", "h", "--b", "h"});
  REQUIRE(s.code == exit_pass);
  CHECK(json::parse(s.out)["vector"] == json::parse(R"([[[1, 1], "1/1"]])"));

  const Run o = run({"omap", "--T", "1", "--n", "0", "--m", "0", "--a", "h", "--w", "vacuum"});
  REQUIRE(o.code == exit_pass);
  CHECK(json::parse(o.out)["vector"] == json::array());

  CHECK(run({"star", "--T", "1", "--n", "0", "--p", "0", "--m", "0", "--a", "[9]", "--b", "[9]", "--cutoff", "4"})
            .code == exit_precondition);
}

TEST_CASE("cli: check reports and CSV layout") {
  const Run j = run({"check", "one_poly", "--grid", "small"});
  REQUIRE(j.code == exit_pass);
  const json rep = json::parse(j.out);
  CHECK(rep["summary"]["fail"] == 0);
  CHECK(rep.find("timing") == rep.end());

  const Run c = run({"--format", "csv", "check", "one_poly", "--grid", "small"});
  REQUIRE(c.code == exit_pass);
  CHECK(c.out.rfind("check,params,status,witness\n", 0) == 0);
  CHECK(c.out.find("one_poly,\"T=1,delta=0,n=0,m=0,p=0\",pass,") != std::string::npos);

  const Run f = run({"check-formal", "derivation", "--grid", "small"});
  CHECK(f.code == exit_pass);
  CHECK(run({"check", "one_poly", "--grid", "small"}).out == j.out);
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run({}).code == exit_usage);
  CHECK(run({"frobnicate"}).code == exit_usage);
  CHECK(run({"check", "no_such_lemma"}).code == exit_usage);
  CHECK(run({"--format", "xml", "check", "one_poly"}).code == exit_usage);
  CHECK(run({"reduce", "--N", "0", "--Q", "0.5", "--q", "-2", "--f", "z^0"}).code == exit_usage);
  CHECK(run({"phi", "--N", "0", "--gamma", "1e2", "--f", "z^0"}).code == exit_usage);
  CHECK(run({"mu", "--T", "2", "--n", "1/3", "--m", "0", "--alpha", "0", "--beta", "0", "--r", "0", "--i", "0"})
            .code == exit_usage);
  const Run bad = run({"reduce", "--N", "0", "--Q", "0.5", "--q", "-2", "--f", "z^0"});
  CHECK_FALSE(bad.err.empty());
  CHECK(bad.out.empty());
}

TEST_CASE("cli: ZHUKIT_DEPTH") {
  {
    ScopedEnv env("ZHUKIT_DEPTH", "2");
    CHECK(run({"check", "descend", "--grid", "small"}).code == exit_pass);
  }
  {
    ScopedEnv env("ZHUKIT_DEPTH", "deep");
    CHECK(run({"check", "descend", "--grid", "small"}).code == exit_usage);
  }
  {
    ScopedEnv env("ZHUKIT_DEPTH", "-3");
    CHECK(run({"check", "descend", "--grid", "small"}).code == exit_usage);
  }
}

TEST_CASE("parse_fock") {
  CHECK(parse_fock("vacuum") == FockVector::vacuum());
  CHECK(parse_fock("1") == FockVector::vacuum());
  CHECK(parse_fock("[]") == FockVector::vacuum());
  CHECK(parse_fock("h") == FockVector::basis({1}));
  CHECK(parse_fock("0").is_zero());
  CHECK(parse_fock("2/3*[1,2] - [1] + [1]") == FockVector::basis({2, 1}, Rational(2, 3)));
  CHECK_THROWS_AS(parse_fock("[0]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fock("0.5*[1]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fock("[1"), std::invalid_argument);
}

TEST_CASE("JSON forms of polynomials and vectors") {
  const LaurentPoly p = LaurentPoly::monomial(-1, Rational(-1, 2)) + LaurentPoly::monomial(3, Rational(4));
  const std::string text = laurent_to_json(p);
  CHECK(json::parse(text) == json::parse(R"([[-1, "-1/2"], [3, "4/1"]])"));
  CHECK(laurent_from_json(text) == p);
  CHECK(laurent_from_json("[]").is_zero());
  CHECK_THROWS_AS(laurent_from_json(R"([[0, 0.5]])"), std::invalid_argument);
  CHECK_THROWS_AS(laurent_from_json(R"([[0, "0.5"]])"), std::invalid_argument);
  CHECK_THROWS_AS(laurent_from_json("{"), std::invalid_argument);
  CHECK(json::parse(fock_to_json(FockVector::basis({2, 1}, Rational(3)))) == json::parse(R"([[[2, 1], "3/1"]])"));
}
