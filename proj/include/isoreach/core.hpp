#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "isoreach/graph.hpp"
#include "isoreach/harness.hpp"
#include "isoreach/metrics.hpp"
#include "isoreach/numeric.hpp"
#include "isoreach/oracle.hpp"

namespace isoreach {

/// The double-inductive-counting state for one source: within `bound` edges,
/// `count` vertices lie at distance <= radius and their distances sum to `sum`.
struct BallState {
  Vertex source = 0;
  std::uint32_t bound = 0;
  LimbWeight radius;
  std::uint64_t count = 1;
  CensusSum sum;

  /// Radius zero: only the source itself.
  static BallState initial(const WeightAssignment& w, Vertex source, std::uint32_t bound);

  friend bool operator==(const BallState&, const BallState&) = default;
};

struct DistAnswer {
  bool within = false;
  LimbWeight dist = LimbWeight::infinity();
  std::optional<std::uint32_t> len;  // nullopt = infinity

  friend bool operator==(const DistAnswer&, const DistAnswer&) = default;
};

struct DistOptions {
  // Reject as soon as the census can no longer match (count over c, some sum
  // limb over D's, or too few vertices left to reach c). Every such path
  // would fail the final comparison anyway, so the accepting paths are
  // unchanged; only the size of the rejected subtrees shrinks.
  bool eager_census_checks = true;
};

/// The unambiguous distance routine. For each vertex x in turn it guesses
/// whether x is in the ball and, if so, guesses a path to x edge by edge;
/// the path must stay within the ball's weight and length limits. The path
/// is accepted only if the guessed members reproduce (count, sum) exactly.
///
/// Precondition: bound <= n - 1.
DistAnswer dist_subroutine(const Graph& g, const WeightAssignment& w, const BallState& ball, Vertex v,
                           Chooser& chooser, const DistOptions& options = {}, RunTrace* trace = nullptr);

/// dist_subroutine packaged for the harness.
Procedure<DistAnswer> dist_procedure(const Graph& g, const WeightAssignment& w, const BallState& ball, Vertex v,
                                     const DistOptions& options = {});

/// The same walk returning the answer for every v (index 0 unused). Its
/// choices never depend on v, so one enumeration covers all queries on a ball.
Procedure<std::vector<DistAnswer>> census_procedure(const Graph& g, const WeightAssignment& w, const BallState& ball,
                                                    const DistOptions& options = {});

/// Guide that follows the stepping's own tree paths.
class TreeGuide final : public Guide {
 public:
  TreeGuide(const Graph& g, const PrefixClosedTable& table, LimbWeight radius);
  std::size_t answer(const ChoicePoint& point) override;

 private:
  const Graph& g_;
  const PrefixClosedTable& table_;
  LimbWeight radius_;
  std::vector<std::vector<EdgeId>> paths_;
};

/// Receives every Algorithm-5 invocation the pipeline issues.
class PipelineObserver {
 public:
  virtual ~PipelineObserver() = default;
  /// A min-uniqueness check (or the final reachability walk when bound is
  /// n-1 and is_reach is set) is about to run with these weights.
  virtual void on_check_begin(const WeightAssignment&, std::uint32_t /*bound*/, bool /*is_reach*/) {}
  virtual void on_dist(const BallState&, Vertex, const DistAnswer&) {}
  virtual void on_check_end(bool /*is_bad*/) {}
  virtual void on_round(std::size_t /*round*/, const WeightAssignment&, std::uint32_t /*bound*/) {}
};

/// Answers dist_subroutine queries for the stepping algorithms.
class DistResolver {
 public:
  virtual ~DistResolver() = default;
  virtual DistAnswer resolve(const BallState& ball, Vertex v) = 0;
};

struct ResolverOptions {
  // The census walk takes the same path for every v of a ball, so one guided run
  // yields all answers. Later queries on that ball reuse it and are charged
  // the identical step count, so traces match an unmemoized run exactly.
  bool memoize = true;
  // Compare each new ball's census with the exact bounded DP.
  bool compare_with_exact = true;
  DistOptions dist;
};

/// Runs dist_subroutine in guided mode along the stepping's tree paths.
class GuidedResolver final : public DistResolver {
 public:
  GuidedResolver(const Graph& g, const WeightAssignment& w, RunTrace* trace = nullptr,
                 ResolverOptions options = {}, PipelineObserver* observer = nullptr);
  DistAnswer resolve(const BallState& ball, Vertex v) override;

 private:
  const PrefixClosedTable& guide_table(const BallState& ball);
  void compare_census(const BallState& ball);

  const Graph& g_;
  const WeightAssignment& w_;
  RunTrace* trace_;
  ResolverOptions options_;
  PipelineObserver* observer_;

  std::optional<PrefixClosedTable> table_;
  std::optional<DistTable> exact_;
  std::optional<BallState> memo_ball_;
  std::vector<DistAnswer> memo_answers_;
  std::uint64_t memo_steps_ = 0;
  std::uint64_t memo_extra_bits_ = 0;
};

/// The smallest value k' > k reachable by one admissible edge from the ball:
/// min over v outside and edges (x, v) with x inside and l(x) + 1 <= i of
/// d(x) + w(x, v). Infinity when there is none.
LimbWeight next_weight_value(const Graph& g, const WeightAssignment& w, const BallState& ball,
                             DistResolver& resolver, RunTrace* trace = nullptr);

struct InductiveStep {
  BallState next;
  bool bad = false;  // some new vertex has two admissible predecessors at k'
};

/// Extends the census from radius k to k'.
InductiveStep inductive_update(const Graph& g, const WeightAssignment& w, const BallState& ball,
                               const LimbWeight& next_radius, DistResolver& resolver, RunTrace* trace = nullptr);

struct MinUniqueCheck {
  bool is_bad = false;
  std::optional<Vertex> bad_source;
  std::uint64_t max_stages = 0;  // most k' stages any source needed
};

/// Steps each source through its realized distance values; stops at the first
/// violation. Throws std::logic_error if k' ever fails to increase or a
/// source needs more than n stages.
MinUniqueCheck check_min_unique(const Graph& g, const WeightAssignment& w, std::uint32_t bound,
                                DistResolver& resolver, RunTrace* trace = nullptr);

/// Convenience overload with a fresh GuidedResolver.
MinUniqueCheck check_min_unique(const Graph& g, const WeightAssignment& w, std::uint32_t bound,
                                RunTrace* trace = nullptr, const ResolverOptions& options = {},
                                PipelineObserver* observer = nullptr);

/// Grows the ball around s with bound n-1 until it stops and asks
/// dist_subroutine whether t is inside. Throws std::logic_error if the
/// weights turn out not to be min-unique.
bool decide_reach(const Graph& g, const WeightAssignment& w, Vertex s, Vertex t, DistResolver& resolver,
                  RunTrace* trace = nullptr);

/// One walk from s, then the routine asked about every t. Index 0 unused.
std::vector<bool> decide_reach_all(const Graph& g, const WeightAssignment& w, Vertex s, DistResolver& resolver,
                                   RunTrace* trace = nullptr);

struct BuildOptions {
  std::optional<std::uint64_t> prime_cap;  // initial cap; default max(64, n^2)
  ResolverOptions resolver;
  PipelineObserver* observer = nullptr;
  std::uint64_t max_restarts = 16;
};

struct ConstructionResult {
  WeightAssignment weights;
  std::size_t rounds = 0;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint32_t> round_bounds;
  std::uint64_t prime_cap = 0;
  bool reach = false;
  RunTrace trace;
};

/// ceil(log2 n) rounds (one when n <= 2). Round j appends the first odd
/// prime limb that makes the graph min-unique for paths of length
/// min(2^j, n-1). On running out of primes the cap doubles and construction
/// starts over.
ConstructionResult build_weights_and_decide(const Graph& g, Vertex s, Vertex t, const BuildOptions& options = {});

std::size_t round_count(std::size_t n);
std::uint32_t round_bound(std::size_t round, std::size_t n);

}  // namespace isoreach
