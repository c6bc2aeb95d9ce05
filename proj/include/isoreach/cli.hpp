#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isoreach/graph.hpp"
#include "isoreach/report.hpp"

namespace isoreach {

/// Raised for invalid command parameters; the front-end exits with code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  int exit_code = 0;
  Json report;       // schema_version first, then command echo and digest
  std::string text;  // human-readable view
};

/// family is diamond {layers}, grid {rows, cols} or random {n, m}.
Graph generate(const std::string& family, const std::vector<std::uint64_t>& params, std::uint64_t seed);

CommandResult cmd_gen(const std::string& family, const std::vector<std::uint64_t>& params, std::uint64_t seed);

struct ReachOptions {
  std::optional<std::uint64_t> prime_cap;
};
CommandResult cmd_reach(const Graph& g, Vertex s, Vertex t, const ReachOptions& options = {});

struct VerifyCommandOptions {
  std::size_t max_enum_n = 8;
  std::optional<std::uint64_t> prime_cap;
  std::optional<std::string> fault;  // "weights" or "census"
};
CommandResult cmd_verify(const Graph& g, const VerifyCommandOptions& options = {});

/// Graph of the given family with about n vertices. Random graphs get 3n
/// edges (clamped to the simple-digraph maximum).
Graph bench_graph(const std::string& family, std::size_t n, std::uint64_t seed);

struct BenchOptions {
  std::optional<std::uint64_t> prime_cap;
};
CommandResult cmd_bench(const std::string& family, const std::vector<std::size_t>& sizes, std::uint64_t seed,
                        const BenchOptions& options = {});

/// Full front-end: parses argv, runs the command, writes the text view to
/// out, diagnostics to err, and the JSON report to --json when given
/// ("-" for out). Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isoreach
