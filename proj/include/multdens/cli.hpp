#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "multdens/arith.hpp"

namespace multdens::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { limit, bound, density, sums, lemma_check, corollary, truncation, theorem2, theorem5, enumerate };
enum class OutputFormat { csv, json };

/// Exit statuses for the error classes of the library.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kPrecondition = 3,
  kCapacity = 4,
  kEmptyFarey = 5,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::limit;
  std::vector<u64> a{1};
  std::vector<u64> b{1};
  u64 q = 1;
  u64 q0 = 1, q1 = 1, q2 = 1;
  std::string family = "const:0,1";
  std::string exponents = "11";
  std::vector<u64> x_grid;
  std::vector<u64> n_grid{2, 3, 5, 10, 30, 100};
  std::optional<u64> sieve_limit;
  int threads = 0;
  OutputFormat format = OutputFormat::csv;

  /// Argument string that parses back to this exact config.
  std::string canonical() const;
  bool operator==(const RunConfig&) const = default;
};

std::string command_name(Command c);

/// Arguments exclude the program name. Throws UsageError naming the flag.
RunConfig parse_args(std::span<const std::string> args);

/// Smallest factor-sieve limit the config needs, unless overridden.
u64 resolve_sieve_limit(const RunConfig& config);

/// Writes the report to `out`; errors become one line on `err` and a
/// nonzero status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, with --help and usage errors handled.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace multdens::cli
