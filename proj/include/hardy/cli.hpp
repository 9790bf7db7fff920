#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hardy::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kFailed = 1;  // infeasible data or a failed check
inline constexpr int kInputError = 2;

struct RunConfig {
  std::string command;
  std::string graph;
  std::string poly;
  std::string point;
  std::string points;
  std::string system;
  std::string system_out;
  std::string gamma;
  std::string unitary;
  std::string out;
  std::string lambda = "0.5";
  std::vector<std::string> q1;
  std::vector<std::string> q2;
  std::optional<std::size_t> n;
  std::optional<double> tol;
  std::uint64_t seed = 20240101;
  std::size_t samples = 10;
};

// Runs one subcommand and writes the JSON report to cfg.out (or to `out` when
// cfg.out is empty). Errors are reported on `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and calls run().
int main(int argc, char** argv);

}  // namespace hardy::cli
