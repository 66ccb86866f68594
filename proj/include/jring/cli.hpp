#pragma once

#include "jring/problem.hpp"
#include "jring/verify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jring::cli {

/// Malformed input text; the message starts with "line L, col C:".
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& what);
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

/// Parses the line-oriented input format.  With `field_override` the
/// coefficients are read over Q and then mapped into that field.
ProblemInput parse_input(const std::string& text, std::optional<FieldSpec> field_override = std::nullopt);

/// "Q", "F 7", "F7" or "F_7".
FieldSpec parse_field(const std::string& text);
/// "a..b" or a single integer.
IntRange parse_range(const std::string& text);

enum class Command { certify, hilbert, hodge, cohomology, verify };

std::optional<Command> command_from_string(const std::string& name);

struct RunConfig {
  Command command = Command::verify;
  std::string input_path;  // "-" reads standard input
  std::optional<FieldSpec> field;
  std::optional<int> bound;
  int m_max = 10;
  bool json = false;
  std::optional<IntRange> k;
  std::optional<IntRange> q;
  std::optional<IntRange> p;
  bool all = false;
  int threads = 0;
  bool timing = false;
  // hilbert only
  std::optional<int> n;
  std::vector<int> degrees;
};

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitHypothesis = 3;

/// Runs a command on input text (ignored by `hilbert`).
RunResult run_text(const RunConfig& config, const std::string& text);
/// Reads config.input_path, then run_text.
RunResult run(const RunConfig& config);

}  // namespace jring::cli
