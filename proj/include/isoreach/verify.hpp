#pragma once

// Cross-checks a pipeline run against the brute-force oracles and the
// exhaustive enumerator.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "isoreach/core.hpp"
#include "isoreach/report.hpp"

namespace isoreach {

/// Keeps every check the pipeline ran and every distinct Algorithm-5
/// invocation it issued.
class InvocationRecorder final : public PipelineObserver {
 public:
  struct Check {
    std::shared_ptr<const WeightAssignment> weights;
    std::uint32_t bound = 0;
    bool is_reach = false;
    bool is_bad = false;
  };
  struct Invocation {
    std::size_t check = 0;  // index into checks()
    BallState ball;
    Vertex v = 0;
    DistAnswer guided;
  };

  void on_check_begin(const WeightAssignment& w, std::uint32_t bound, bool is_reach) override;
  void on_dist(const BallState& ball, Vertex v, const DistAnswer& answer) override;
  void on_check_end(bool is_bad) override;
  void on_round(std::size_t round, const WeightAssignment& w, std::uint32_t bound) override;

  const std::vector<Check>& checks() const { return checks_; }
  const std::vector<Invocation>& invocations() const { return invocations_; }
  std::uint64_t total_invocations() const { return total_; }

 private:
  std::vector<Check> checks_;
  std::vector<Invocation> invocations_;
  std::vector<std::set<std::vector<std::uint64_t>>> seen_;  // per check
  std::uint64_t total_ = 0;
};

struct UnambiguityStats {
  std::uint64_t invocations = 0;        // distinct (weights, ball, v) triples
  std::uint64_t unique_accepting = 0;   // accepting_count == 1 and payload == guided
  std::uint64_t balls = 0;              // distinct (weights, ball) pairs enumerated
  std::uint64_t corrupted_rejected = 0; // balls whose c + 1 run has accepting_count == 0
  std::uint64_t enumerated_paths = 0;
  // Balls where the routine's promise fails: the census differs from the
  // exact length-bounded census, or some member has two min-weight paths.
  std::uint64_t promise_violated_balls = 0;
  std::uint64_t failing_balls = 0;
  std::uint64_t failing_balls_promise_held = 0;
  std::optional<std::string> first_failure;

  bool ok() const { return first_failure == std::nullopt; }
};

/// Re-runs every recorded invocation in enumerate mode, and every distinct
/// ball once more with c + 1. All invocations on one ball share a single
/// enumeration of census_procedure.
UnambiguityStats verify_unambiguity(const Graph& g, const InvocationRecorder& recorder,
                                    const DistOptions& options = {});

struct LemmaBoundStats {
  std::uint64_t rounds_checked = 0;  // rounds whose weights were min-unique at their bound
  std::uint64_t pairs_checked = 0;
  std::uint64_t max_count = 0;
  std::optional<std::string> first_failure;
  bool ok() const { return first_failure == std::nullopt; }
};

/// For each round j after which brute_min_unique holds at bound l, every pair
/// has at most n min-weight paths of length <= min(2l, n-1).
LemmaBoundStats verify_lemma_bound(const Graph& g, const ConstructionResult& result);

struct Property {
  std::string name;
  bool pass = true;
  Json detail;
};

struct VerifyOptions {
  std::size_t max_enum_n = 8;
  std::optional<std::uint64_t> prime_cap;
  bool fault_weights = false;  // replace the built weights with all-[1] limbs
  bool fault_census = false;   // run the final guided query with c + 1
};

struct VerifyResult {
  std::vector<Property> properties;
  ConstructionResult construction;
  bool pass() const;
};

VerifyResult verify_graph(const Graph& g, const VerifyOptions& options = {});

Json properties_to_json(const std::vector<Property>& properties);

}  // namespace isoreach
