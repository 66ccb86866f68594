#include "jring/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace jring;

int main(int argc, char** argv) {
  CLI::App app{"Exact cohomology, Hilbert series and certificates for Jacobian rings of homogeneous systems"};
  std::string command;
  cli::RunConfig config;
  std::string field, k, q, p;
  app.add_option("command", command, "certify | hilbert | hodge | cohomology | verify")->required();
  app.add_option("input", config.input_path, "input file ('-' for stdin)");
  app.add_option("--field", field, "override the input field: Q or F <p>");
  app.add_option("--bound", config.bound, "certificate degree bound");
  app.add_option("--m-max", config.m_max, "largest saturation exponent tried")->check(CLI::NonNegativeNumber);
  app.add_option("--k", k, "form degrees a..b");
  app.add_option("--q", q, "first grading a..b");
  app.add_option("--p", p, "second grading a..b");
  app.add_flag("--all", config.all, "include zero-dimensional slices");
  app.add_flag("--json", config.json, "JSON output");
  app.add_option("--threads", config.threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", config.timing, "per-slice wall times on stderr");
  app.add_option("--n", config.n, "number of variables (hilbert)");
  app.add_option("--degrees", config.degrees, "degrees d_1 .. d_r (hilbert)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitParse;
  }
  try {
    auto cmd = cli::command_from_string(command);
    if (!cmd) throw Error("unknown command '" + command + "'");
    config.command = *cmd;
    if (config.command != cli::Command::hilbert && config.input_path.empty()) throw Error("missing input file");
    if (config.bound && *config.bound < 1) throw Error("--bound must be positive");
    if (!field.empty()) config.field = cli::parse_field(field);
    if (!k.empty()) config.k = cli::parse_range(k);
    if (!q.empty()) config.q = cli::parse_range(q);
    if (!p.empty()) config.p = cli::parse_range(p);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitParse;
  }
  cli::RunResult result = cli::run(config);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
