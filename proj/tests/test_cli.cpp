#include "doctest.h"
#include "support.hpp"

#include "jring/hilbert.hpp"

#include <json.hpp>

using namespace jt;
using namespace jring::cli;
using json = nlohmann::ordered_json;

namespace {

RunResult run_on(Command cmd, const std::string& file, bool as_json = false) {
  RunConfig c;
  c.command = cmd;
  c.json = as_json;
  return run_text(c, read_file(data_path(file)));
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

std::string number(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

TEST_CASE("input parsing") {
  ProblemInput in = parse_input("field Q\nvars x1 x2 x3\npoly x1^3 + x2^3 + x3^3\n");
  CHECK(in.n() == 3);
  CHECK(in.r() == 1);
  CHECK(in.degrees() == std::vector<int>{3});

  ProblemInput spaced = parse_input("# header\n  field   F 7\nvars a b # trailing\npoly 3*a*b - b^2 ; poly 1/2*a^2\n");
  CHECK(spaced.r() == 2);
  CHECK(spaced.field() == F(7));
  CHECK(spaced.polys()[1] == power(MultiPoly::variable(F(7), 2, 0), 2).scaled(Scalar(F(7), 4)));

  ProblemInput over = parse_input("field Q\nvars x y\npoly x^2 + 3*y^2\n", F(3));
  CHECK(over.field() == F(3));
  CHECK(over.polys()[0] == poly("x1^2", 2, F(3)));
}

TEST_CASE("parse errors carry positions") {
  auto error_of = [](const std::string& text) -> std::string {
    try {
      parse_input(text);
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(error_of("field F 4\nvars x\npoly x\n").find("not prime") != std::string::npos);
  CHECK(error_of("field Q\nvars x1 x2\npoly x1^2 + x2\n") == "line 3, col 1: polynomial is not homogeneous");
  CHECK(error_of("field Q\nvars x y\npoly x^2 + z^2\n") == "line 3, col 12: unknown variable 'z'");
  CHECK(error_of("field Q\nvars x\npoly x + \n").rfind("line 3", 0) == 0);
  CHECK(error_of("field Q\nvars x\npoly x ^ y\n").find("exponent") != std::string::npos);
  CHECK(error_of("field Q\nvars x x\npoly x\n").find("declared twice") != std::string::npos);
  CHECK(error_of("vars x\npoly x\n").find("missing 'field'") != std::string::npos);
  CHECK(error_of("field Q\nvars x\n").find("no polynomials") != std::string::npos);
  CHECK(error_of("field F 2\nvars x y\npoly 2*x + y\npoly 2*x\n").find("zero") != std::string::npos);
  CHECK(error_of("field Q\nvars x\npoly 1/0*x\n") != "");
  CHECK(error_of("field Q\nvars x\npoly 5\n").find("constant") != std::string::npos);
  try {
    parse_input("field Q\nvars x\n\npoly x $\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.col() == 8);
  }
}

TEST_CASE("fields, ranges and commands") {
  CHECK(parse_field("Q") == Q());
  for (auto s : {"F 7", "F7", "F_7"}) CHECK(parse_field(s) == F(7));
  CHECK_THROWS_AS(parse_field("F 9"), Error);
  CHECK_THROWS_AS(parse_field("R"), Error);
  IntRange r = parse_range("2..5");
  CHECK(r.lo == 2);
  CHECK(r.hi == 5);
  IntRange one = parse_range("3");
  CHECK(one.lo == 3);
  CHECK(one.hi == 3);
  CHECK(parse_range("-1..1").lo == -1);
  CHECK_THROWS_AS(parse_range("5..2"), Error);
  CHECK_THROWS_AS(parse_range("a..b"), Error);
  CHECK(command_from_string("verify") == Command::verify);
  CHECK_FALSE(command_from_string("prove").has_value());
}

TEST_CASE("hilbert command") {
  RunConfig c;
  c.command = Command::hilbert;
  c.n = 5;
  c.degrees = {5};
  RunResult res = run_text(c, "");
  CHECK(res.exit_code == kExitOk);
  CHECK(has_line(res.out, "H(t) = t + 101t^2 + 101t^3 + t^4; H(1) = 204; palindromic: yes"));
  c.degrees = {};
  CHECK(run_text(c, "").exit_code == kExitParse);
  c.degrees = {2, 2, 2, 2, 2};
  CHECK(run_text(c, "").exit_code == kExitHypothesis);
}

TEST_CASE("exit codes on a scripted corpus") {
  struct Case {
    Command cmd;
    std::string file;
    int code;
  };
  std::vector<Case> cases{
      {Command::verify, "fermat_cubic.sys", kExitOk},          {Command::verify, "fermat_cubic_f3.sys", kExitFailed},
      {Command::verify, "squares.sys", kExitOk},               {Command::certify, "fermat_cubic.sys", kExitOk},
      {Command::certify, "fermat_cubic_f3.sys", kExitFailed},  {Command::hodge, "two_conics.sys", kExitOk},
      {Command::hodge, "squares.sys", kExitHypothesis},        {Command::hodge, "fermat_cubic_f3.sys", kExitFailed},
      {Command::cohomology, "conic_f2.sys", kExitOk},
  };
  for (const auto& c : cases) {
    INFO(c.file);
    CHECK(run_on(c.cmd, c.file).exit_code == c.code);
  }
  RunConfig bad;
  bad.command = Command::certify;
  CHECK(run_text(bad, "field F 4\nvars x\npoly x\n").exit_code == kExitParse);
  CHECK(run_text(bad, "field Q\nvars x y\npoly x^2 + y\n").exit_code == kExitParse);
  bad.input_path = data_path("no_such_file.sys");
  CHECK(run(bad).exit_code == kExitParse);

  RunResult f3 = run_on(Command::verify, "fermat_cubic_f3.sys");
  CHECK(f3.out.find("smooth-CI certificate: NONE") != std::string::npos);
  RunResult cubic = run_on(Command::verify, "fermat_cubic.sys");
  CHECK(cubic.out.find("FAIL") == std::string::npos);
  CHECK(cubic.out.find("verification: pass") != std::string::npos);
}

TEST_CASE("JSON output round-trips and matches the text report") {
  for (Command cmd : {Command::certify, Command::hodge, Command::verify, Command::cohomology}) {
    for (std::string file : {"fermat_cubic.sys", "two_conics.sys"}) {
      RunResult text = run_on(cmd, file);
      RunResult js = run_on(cmd, file, true);
      REQUIRE(js.exit_code == text.exit_code);
      json doc = json::parse(js.out);
      CHECK(doc.dump(2) + "\n" == js.out);
      for (auto key : {"input_hash", "field", "n", "r", "degrees"}) CHECK(doc.contains(key));
      CHECK(text.out.find(doc["input_hash"].get<std::string>()) != std::string::npos);
      if (doc.contains("certificates"))
        for (const auto& c : doc["certificates"])
          if (c["status"] == "certified")
            CHECK(text.out.find("N = " + number(c["degree"]) + " (bound " + number(c["bound"])) != std::string::npos);
      if (doc.contains("slices"))
        for (const auto& s : doc["slices"])
          CHECK(has_line(text.out, "H^" + number(s["k"]) + "(" + number(s["q"]) + "," + number(s["p"]) +
                                       ") = " + number(s["dim"])));
      if (doc.contains("checks"))
        for (const auto& c : doc["checks"])
          CHECK(has_line(text.out, std::string(c["pass"].get<bool>() ? "PASS " : "FAIL ") + c["name"].get<std::string>() +
                                       ": expected " + c["expected"].get<std::string>() + ", got " +
                                       c["got"].get<std::string>()));
      if (doc.contains("hodge"))
        for (const auto& [p, v] : doc["hodge"]["h"].items()) CHECK(has_line(text.out, "h_" + p + " = " + number(v)));
    }
  }
}

TEST_CASE("large Hilbert coefficients are exact strings") {
  RunConfig c;
  c.command = Command::hilbert;
  c.json = true;
  c.n = 30;
  c.degrees = {9};
  RunResult res = run_text(c, "");
  REQUIRE(res.exit_code == kExitOk);
  json doc = json::parse(res.out);
  IntPoly H = closed_form_H(30, {9});
  const auto& coeffs = doc["hilbert"]["coefficients"];
  REQUIRE(coeffs.is_array());
  bool huge = false;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    REQUIRE(coeffs[i].is_string());
    mpz_class v(coeffs[i].get<std::string>());
    CHECK(v == H.coefficient(static_cast<int>(i)));
    huge = huge || v > mpz_class("9007199254740992");
  }
  CHECK(huge);
  CHECK(mpz_class(doc["hilbert"]["H_at_one"].get<std::string>()) == H_at_one(30, {9}));
}

TEST_CASE("single-threaded output is byte-identical") {
  for (Command cmd : {Command::verify, Command::cohomology}) {
    for (std::string file : {"two_quadrics.sys", "conic_f2.sys"}) {
      RunConfig c;
      c.command = cmd;
      c.all = true;
      std::string text = read_file(data_path(file));
      RunResult many = run_text(c, text);
      c.threads = 1;
      RunResult one = run_text(c, text);
      CHECK(one.out == many.out);
      CHECK(one.exit_code == many.exit_code);
    }
  }
}

TEST_CASE("verify rejects q filters and honours ranges") {
  RunConfig c;
  c.command = Command::verify;
  c.q = IntRange{1, 1};
  std::string cubic = read_file(data_path("fermat_cubic.sys"));
  CHECK(run_text(c, cubic).exit_code == kExitParse);
  c.q.reset();
  c.k = IntRange{4, 4};
  c.p = IntRange{1, 2};
  c.json = true;
  RunResult res = run_text(c, cubic);
  CHECK(res.exit_code == kExitOk);
  json doc = json::parse(res.out);
  for (const auto& ch : doc["checks"]) CHECK(ch["pass"].get<bool>());
  c.all = true;
  doc = json::parse(run_text(c, cubic).out);
  CHECK(doc["slices"].size() == 2);
}

TEST_CASE("timing goes to the error stream only") {
  RunConfig c;
  c.command = Command::cohomology;
  std::string cubic = read_file(data_path("fermat_cubic.sys"));
  RunResult plain = run_text(c, cubic);
  c.timing = true;
  RunResult timed = run_text(c, cubic);
  CHECK(timed.out == plain.out);
  CHECK_FALSE(timed.err.empty());
  CHECK(plain.err.empty());
}
