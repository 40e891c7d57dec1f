#ifndef SYMP_CLI_HPP_
#define SYMP_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace symp::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kConfig = 2,
  kOutOfRange = 3,
  kBudget = 4,
};

struct RunConfig {
  std::string subcommand;
  std::string group = "usp";
  std::vector<int> n{1};
  std::vector<std::string> partitions;
  std::string conj;  // second partition for the unitary group
  std::vector<std::uint32_t> q;
  std::string mode = "all";
  std::string method = "quadrature";
  std::string formula = "auto";
  int nodes = 0;
  int max_quadrature_n = 4;
  std::optional<std::int64_t> samples;
  std::uint64_t seed = 1;
  int threads = 0;
  std::uint64_t budget = 100'000'000;
  std::vector<int> nu;
  std::vector<int> m{2};
  std::string f = "0:1";
  bool explore = false;
  std::string format = "csv";
  std::string out;
};

/// A result table. Every cell is preformatted; `numeric` marks columns that
/// JSON output writes as numbers.
struct Table {
  std::vector<std::string> columns;
  std::vector<bool> numeric;
  std::vector<std::vector<std::string>> rows;
};

/// Checks a parsed config; throws symp::InvalidArgument naming the field.
void validate(const RunConfig& cfg);

Table run_moment(const RunConfig& cfg);
Table run_oracle(const RunConfig& cfg);
Table run_ffcheck(const RunConfig& cfg);
Table run_linstat(const RunConfig& cfg);

void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symp::cli

#endif  // SYMP_CLI_HPP_
