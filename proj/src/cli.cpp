#include "jring/cli.hpp"

#include "jring/certify.hpp"
#include "jring/hilbert.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

namespace jring::cli {

using nlohmann::ordered_json;

ParseError::ParseError(int line, int col, const std::string& what)
    : Error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what), line_(line), col_(col) {}

FieldSpec parse_field(const std::string& text) {
  static const std::regex rationals(R"(\s*Q\s*)");
  static const std::regex prime(R"(\s*F\s*_?\s*(\d+)\s*)");
  std::smatch m;
  if (std::regex_match(text, rationals)) return FieldSpec::rationals();
  if (std::regex_match(text, m, prime)) {
    if (m[1].str().size() > 12) throw Error("modulus " + m[1].str() + " is too large");
    std::uint64_t p = std::stoull(m[1].str());
    if (!is_prime(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
    return FieldSpec::prime(p);
  }
  throw Error("unknown field '" + text + "' (expected Q or F <p>)");
}

IntRange parse_range(const std::string& text) {
  static const std::regex range(R"(\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?)");
  std::smatch m;
  if (!std::regex_match(text, m, range)) throw Error("bad range '" + text + "' (expected a..b)");
  int lo = std::stoi(m[1].str());
  int hi = m[2].matched ? std::stoi(m[2].str()) : lo;
  if (hi < lo) throw Error("empty range '" + text + "'");
  return {lo, hi};
}

std::optional<Command> command_from_string(const std::string& name) {
  static const std::map<std::string, Command> names{{"certify", Command::certify},
                                                    {"hilbert", Command::hilbert},
                                                    {"hodge", Command::hodge},
                                                    {"cohomology", Command::cohomology},
                                                    {"verify", Command::verify}};
  auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Input format

namespace {

struct Token {
  enum Kind { number, ident, plus, minus, star, caret, end } kind;
  std::string text;
  int line;
  int col;
};

using Statement = std::vector<Token>;

std::vector<Statement> tokenize(const std::string& text) {
  std::vector<Statement> out(1);
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  auto close = [&] {
    if (!out.back().empty()) out.emplace_back();
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
    } else if (c == '\n' || c == ';') {
      close();
      advance();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      Token t{Token::number, "", line, col};
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        t.text += text[i];
        advance();
      }
      if (i + 1 < text.size() && text[i] == '/' && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        t.text += '/';
        advance();
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          t.text += text[i];
          advance();
        }
      }
      out.back().push_back(t);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      Token t{Token::ident, "", line, col};
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        t.text += text[i];
        advance();
      }
      out.back().push_back(t);
    } else {
      Token::Kind kind;
      switch (c) {
        case '+': kind = Token::plus; break;
        case '-': kind = Token::minus; break;
        case '*': kind = Token::star; break;
        case '^': kind = Token::caret; break;
        default: throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      }
      out.back().push_back({kind, std::string(1, c), line, col});
      advance();
    }
  }
  if (out.back().empty()) out.pop_back();
  for (auto& s : out) {
    const Token& last = s.back();
    s.push_back({Token::end, "", last.line, last.col + static_cast<int>(last.text.size())});
  }
  return out;
}

using RationalPoly = std::map<Exponents, mpq_class>;

class PolyParser {
 public:
  PolyParser(const Statement& s, std::size_t start, const std::map<std::string, int>& vars)
      : s_(s), pos_(start), vars_(vars) {}

  RationalPoly parse() {
    RationalPoly out;
    int sign = 1;
    if (peek().kind == Token::plus || peek().kind == Token::minus) sign = take().kind == Token::minus ? -1 : 1;
    for (;;) {
      auto [e, c] = term();
      out[e] += c * sign;
      const Token& t = peek();
      if (t.kind == Token::end) break;
      if (t.kind != Token::plus && t.kind != Token::minus)
        throw ParseError(t.line, t.col, "expected '+', '-' or end of polynomial, found '" + t.text + "'");
      sign = take().kind == Token::minus ? -1 : 1;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
  }

 private:
  const Token& peek() const { return s_[pos_]; }
  const Token& take() { return s_[pos_++]; }

  std::pair<Exponents, mpq_class> term() {
    Exponents e(vars_.size(), 0);
    mpq_class c = 1;
    factor(e, c);
    while (peek().kind == Token::star) {
      take();
      factor(e, c);
    }
    return {e, c};
  }

  void factor(Exponents& e, mpq_class& c) {
    const Token& t = take();
    if (t.kind == Token::number) {
      mpq_class v;
      if (v.set_str(t.text, 10) != 0) throw ParseError(t.line, t.col, "bad number '" + t.text + "'");
      if (v.get_den() == 0) throw ParseError(t.line, t.col, "zero denominator");
      v.canonicalize();
      c *= v;
      return;
    }
    if (t.kind != Token::ident) throw ParseError(t.line, t.col, "expected a coefficient or variable, found '" + t.text + "'");
    auto it = vars_.find(t.text);
    if (it == vars_.end()) throw ParseError(t.line, t.col, "unknown variable '" + t.text + "'");
    int power = 1;
    if (peek().kind == Token::caret) {
      take();
      const Token& x = take();
      if (x.kind != Token::number || x.text.find('/') != std::string::npos || x.text.size() > 6)
        throw ParseError(x.line, x.col, "expected a nonnegative integer exponent");
      power = std::stoi(x.text);
    }
    e[it->second] += power;
  }

  const Statement& s_;
  std::size_t pos_;
  const std::map<std::string, int>& vars_;
};

}  // namespace

ProblemInput parse_input(const std::string& text, std::optional<FieldSpec> field_override) {
  std::optional<FieldSpec> declared;
  std::vector<std::string> names;
  std::map<std::string, int> vars;
  std::vector<std::pair<RationalPoly, Token>> polys;
  bool have_vars = false;
  for (const Statement& s : tokenize(text)) {
    const Token& head = s[0];
    if (head.kind != Token::ident) throw ParseError(head.line, head.col, "expected 'field', 'vars' or 'poly'");
    if (head.text == "field") {
      if (declared) throw ParseError(head.line, head.col, "field declared twice");
      std::string rest;
      for (std::size_t i = 1; i + 1 < s.size(); ++i) rest += s[i].text + " ";
      try {
        declared = parse_field(rest);
      } catch (const Error& e) {
        throw ParseError(s.size() > 2 ? s[1].line : head.line, s.size() > 2 ? s[1].col : head.col, e.what());
      }
    } else if (head.text == "vars") {
      if (have_vars) throw ParseError(head.line, head.col, "variables declared twice");
      have_vars = true;
      for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i].kind != Token::ident) throw ParseError(s[i].line, s[i].col, "expected a variable name");
        if (!vars.emplace(s[i].text, static_cast<int>(names.size())).second)
          throw ParseError(s[i].line, s[i].col, "variable '" + s[i].text + "' declared twice");
        names.push_back(s[i].text);
      }
      if (names.empty()) throw ParseError(head.line, head.col, "no variables declared");
    } else if (head.text == "poly") {
      if (!have_vars) throw ParseError(head.line, head.col, "'poly' before 'vars'");
      if (s.size() == 2) throw ParseError(head.line, head.col, "empty polynomial");
      polys.emplace_back(PolyParser(s, 1, vars).parse(), head);
    } else {
      throw ParseError(head.line, head.col, "unknown statement '" + head.text + "'");
    }
  }
  if (!field_override && !declared) throw ParseError(1, 1, "missing 'field' line");
  if (!have_vars) throw ParseError(1, 1, "missing 'vars' line");
  if (polys.empty()) throw ParseError(1, 1, "no polynomials");
  const FieldSpec field = field_override.value_or(*declared);
  std::vector<MultiPoly> out;
  for (const auto& [rp, head] : polys) {
    MultiPoly f(field, static_cast<int>(names.size()));
    for (const auto& [e, c] : rp) {
      try {
        f.add_term(e, Scalar(field, c));
      } catch (const Error& err) {
        throw ParseError(head.line, head.col, std::string("coefficient ") + c.get_str() + " in " + field.name() + ": " + err.what());
      }
    }
    if (f.is_zero()) throw ParseError(head.line, head.col, "polynomial is zero in " + field.name());
    auto d = f.homogeneous_degree();
    if (!d) throw ParseError(head.line, head.col, "polynomial is not homogeneous");
    if (*d < 1) throw ParseError(head.line, head.col, "polynomial is a constant");
    out.push_back(std::move(f));
  }
  return ProblemInput(field, std::move(out), names);
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string big(const mpz_class& v) { return v.get_str(); }

ordered_json certificate_json(const std::string& kind, const std::optional<Certificate>& c, int bound) {
  ordered_json j;
  j["kind"] = kind;
  j["status"] = c ? "certified" : "none";
  j["degree"] = c ? ordered_json(c->degree) : ordered_json(nullptr);
  j["bound"] = bound;
  j["generators"] = c ? ordered_json(c->generators) : ordered_json(nullptr);
  return j;
}

ordered_json hilbert_json(int n, const std::vector<int>& degrees) {
  IntPoly h = closed_form_H(n, degrees);
  IntPoly series = euler_series(n, degrees);
  ordered_json j;
  ordered_json coeffs = ordered_json::array();
  for (int i = 0; i <= h.degree(); ++i) coeffs.push_back(big(h.coefficient(i)));
  ordered_json ser = ordered_json::array();
  for (int i = 0; i <= series.degree(); ++i) ser.push_back(big(series.coefficient(i)));
  j["coefficients"] = coeffs;
  j["H_at_one"] = big(H_at_one(n, degrees));
  j["palindromic"] = symmetry_check(h, n, static_cast<int>(degrees.size()));
  j["euler_series"] = ser;
  return j;
}

IntPoly poly_from(const ordered_json& coeffs) {
  IntPoly p;
  for (std::size_t i = 0; i < coeffs.size(); ++i) p.set(static_cast<int>(i), mpz_class(coeffs[i].get<std::string>()));
  return p;
}

void input_json(ordered_json& doc, const ProblemInput& input) {
  doc["input_hash"] = input.hash();
  doc["field"] = input.field().name();
  doc["n"] = input.n();
  doc["r"] = input.r();
  doc["degrees"] = input.degrees();
}

std::string certificate_label(const std::string& kind) {
  return kind == "smooth-ci" ? "smooth-CI certificate" : kind + " certificate";
}

/// Text rendering of the same document the JSON mode prints.
std::string render_text(const ordered_json& doc) {
  std::ostringstream os;
  if (doc.contains("input_hash")) {
    os << "input " << doc["input_hash"].get<std::string>() << "\n";
    os << "field " << doc["field"].get<std::string>() << ", n = " << doc["n"] << ", r = " << doc["r"] << ", degrees";
    for (const auto& d : doc["degrees"]) os << " " << d;
    os << "\n";
  } else if (doc.contains("n")) {
    os << "n = " << doc["n"] << ", r = " << doc["r"] << ", degrees";
    for (const auto& d : doc["degrees"]) os << " " << d;
    os << "\n";
  }
  if (doc.contains("certificates"))
    for (const auto& c : doc["certificates"]) {
      os << certificate_label(c["kind"].get<std::string>()) << ": ";
      if (c["status"] == "certified")
        os << "N = " << c["degree"] << " (bound " << c["bound"] << ", " << c["generators"] << " generators)\n";
      else
        os << "NONE (bound " << c["bound"] << ")\n";
    }
  if (doc.contains("hilbert")) {
    const auto& h = doc["hilbert"];
    os << "H(t) = " << poly_from(h["coefficients"]).to_string() << "; H(1) = " << h["H_at_one"].get<std::string>()
       << "; palindromic: " << (h["palindromic"].get<bool>() ? "yes" : "no") << "\n";
    os << "alternating series = " << poly_from(h["euler_series"]).to_string() << "\n";
  }
  if (doc.contains("hodge")) {
    const auto& h = doc["hodge"];
    os << "exceptional: " << (h["exceptional"].get<bool>() ? "yes" : "no") << "\n";
    for (const auto& [p, v] : h["h"].items()) os << "h_" << p << " = " << v.get<std::string>() << "\n";
    for (const auto& row : h["implied"])
      os << "p = " << row["p"] << ": dim H^top = " << row["top"].get<std::string>()
         << ", dim H^(top-1) = " << row["below_top"].get<std::string>() << "\n";
  }
  if (doc.contains("mode")) os << "mode " << doc["mode"].get<std::string>() << "\n";
  if (doc.contains("slices"))
    for (const auto& s : doc["slices"])
      os << "H^" << s["k"] << "(" << s["q"] << "," << s["p"] << ") = " << s["dim"] << "\n";
  if (doc.contains("checks")) {
    std::size_t failed = 0;
    for (const auto& c : doc["checks"]) {
      bool pass = c["pass"].get<bool>();
      failed += !pass;
      os << (pass ? "PASS " : "FAIL ") << c["name"].get<std::string>() << ": expected "
         << c["expected"].get<std::string>() << ", got " << c["got"].get<std::string>() << "\n";
    }
    os << "verification: " << (failed ? "FAIL" : "pass") << " (" << doc["checks"].size() << " checks, " << failed
       << " failed)\n";
  }
  if (doc.contains("message")) os << doc["message"].get<std::string>() << "\n";
  return os.str();
}

std::vector<SliceKey> slice_keys(const RunConfig& config, const ProblemInput& input) {
  IntRange k = config.k.value_or(IntRange{0, input.n() + input.r()});
  IntRange q = config.q.value_or(IntRange{0, 0});
  IntRange p = config.p.value_or(IntRange{0, input.n()});
  std::vector<SliceKey> out;
  for (int a = std::max(0, k.lo); a <= std::min(k.hi, input.n() + input.r()); ++a)
    for (int b = q.lo; b <= q.hi; ++b)
      for (int c = std::max(0, p.lo); c <= p.hi; ++c) out.push_back({a, b, c});
  return out;
}

ordered_json slices_json(const CohomologyReport& report, bool all) {
  ordered_json arr = ordered_json::array();
  for (const auto& [s, d] : report.dims)
    if (all || d != 0) arr.push_back({{"k", s.k}, {"q", s.q}, {"p", s.p}, {"dim", d}});
  return arr;
}

std::string timing_text(const CohomologyReport& report) {
  std::ostringstream os;
  for (const auto& [s, t] : report.seconds)
    os << "time H^" << s.k << "(" << s.q << "," << s.p << ") " << std::fixed << std::setprecision(3) << t << " s\n";
  return os.str();
}

struct Outcome {
  ordered_json doc = ordered_json::object();
  int code = kExitOk;
  std::string err;
};

Outcome run_hilbert(const RunConfig& config) {
  Outcome o;
  if (!config.n || config.degrees.empty()) throw Error("hilbert needs --n and --degrees");
  const int r = static_cast<int>(config.degrees.size());
  o.doc["n"] = *config.n;
  o.doc["r"] = r;
  o.doc["degrees"] = config.degrees;
  o.doc["hilbert"] = hilbert_json(*config.n, config.degrees);
  return o;
}

Outcome run_certify(const RunConfig& config, const ProblemInput& input) {
  Outcome o;
  input_json(o.doc, input);
  o.doc["certificates"] = ordered_json::array();
  bool relevant_ok = false;
  if (input.r() <= input.n()) {
    int bound = config.bound.value_or(default_smooth_ci_bound(input));
    auto c = smooth_ci_certificate(input, bound);
    o.doc["certificates"].push_back(certificate_json("smooth-ci", c, bound));
    if (input.r() < input.n()) relevant_ok = c.has_value();
  }
  int bound = config.bound.value_or(default_no_common_zero_bound(input));
  auto c = no_common_zero_certificate(input, bound);
  o.doc["certificates"].push_back(certificate_json("no-common-zero", c, bound));
  if (input.r() >= input.n()) relevant_ok = c.has_value();
  o.code = relevant_ok ? kExitOk : kExitFailed;
  return o;
}

Outcome run_hodge(const RunConfig& config, const ProblemInput& input) {
  Outcome o;
  input_json(o.doc, input);
  if (input.r() >= input.n()) throw HypothesisError("hodge needs r < n");
  int bound = config.bound.value_or(default_smooth_ci_bound(input));
  auto c = smooth_ci_certificate(input, bound);
  o.doc["certificates"] = ordered_json::array({certificate_json("smooth-ci", c, bound)});
  if (!c) {
    o.code = kExitFailed;
    return o;
  }
  HodgeTable t = hodge_table(input, c);
  o.doc["hilbert"] = hilbert_json(input.n(), input.degrees());
  ordered_json h;
  h["exceptional"] = t.exceptional;
  ordered_json hp = ordered_json::object();
  for (const auto& [p, v] : t.h) hp[std::to_string(p)] = big(v);
  h["h"] = hp;
  ordered_json implied = ordered_json::array();
  for (const auto& [p, v] : t.top) implied.push_back({{"p", p}, {"top", big(v)}, {"below_top", big(t.below_top.at(p))}});
  h["implied"] = implied;
  o.doc["hodge"] = h;
  return o;
}

Outcome run_cohomology(const RunConfig& config, const ProblemInput& input) {
  Outcome o;
  input_json(o.doc, input);
  CohomologyReport report = compute_cohomology(input, slice_keys(config, input), config.threads);
  o.doc["slices"] = slices_json(report, config.all);
  if (config.timing) o.err = timing_text(report);
  return o;
}

Outcome run_verify(const RunConfig& config, const ProblemInput& input) {
  Outcome o;
  input_json(o.doc, input);
  if (config.q && (config.q->lo != 0 || config.q->hi != 0)) throw Error("verify checks the q = 0 slices only");
  const bool ci = input.r() < input.n();
  const std::string kind = ci ? "smooth-ci" : "no-common-zero";
  int bound = config.bound.value_or(ci ? default_smooth_ci_bound(input) : default_no_common_zero_bound(input));
  auto c = ci ? smooth_ci_certificate(input, bound) : no_common_zero_certificate(input, bound);
  o.doc["certificates"] = ordered_json::array({certificate_json(kind, c, bound)});
  if (!c) {
    o.code = kExitFailed;
    return o;
  }
  VerifyOptions options;
  options.k = config.k;
  options.p = config.p;
  options.threads = config.threads;
  options.m_max = config.m_max;
  VerifyMode mode = ci ? VerifyMode::complete_intersection : VerifyMode::no_common_zero;
  VerifyReport report = verify_predictions(input, mode, c, options);
  o.doc["mode"] = to_string(mode);
  if (config.all) o.doc["slices"] = slices_json(report.cohomology, true);
  ordered_json checks = ordered_json::array();
  for (const auto& ch : report.checks)
    checks.push_back({{"name", ch.name}, {"expected", ch.expected}, {"got", ch.got}, {"pass", ch.pass}});
  o.doc["checks"] = checks;
  o.code = report.passed() ? kExitOk : kExitFailed;
  if (config.timing) o.err = timing_text(report.cohomology);
  return o;
}

}  // namespace

RunResult run_text(const RunConfig& config, const std::string& text) {
  RunResult result;
  Outcome o;
  try {
    if (config.command == Command::hilbert) {
      o = run_hilbert(config);
    } else {
      ProblemInput input = parse_input(text, config.field);
      switch (config.command) {
        case Command::certify: o = run_certify(config, input); break;
        case Command::hodge: o = run_hodge(config, input); break;
        case Command::cohomology: o = run_cohomology(config, input); break;
        case Command::verify: o = run_verify(config, input); break;
        case Command::hilbert: break;
      }
    }
  } catch (const HypothesisError& e) {
    result.exit_code = kExitHypothesis;
    result.err = std::string("hypothesis violated: ") + e.what() + "\n";
    return result;
  } catch (const ArithmeticError& e) {
    result.exit_code = kExitFailed;
    result.err = std::string("internal arithmetic failure: ") + e.what() + "\n";
    return result;
  } catch (const Error& e) {
    result.exit_code = kExitParse;
    result.err = std::string("error: ") + e.what() + "\n";
    return result;
  }
  result.exit_code = o.code;
  result.err = o.err;
  result.out = config.json ? o.doc.dump(2) + "\n" : render_text(o.doc);
  return result;
}

RunResult run(const RunConfig& config) {
  if (config.command == Command::hilbert) return run_text(config, "");
  std::string text;
  if (config.input_path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(config.input_path);
    if (!in) return {kExitParse, "", "error: cannot read '" + config.input_path + "'\n"};
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return run_text(config, text);
}

}  // namespace jring::cli
