#include <gtest/gtest.h>

#include "isoreach/core.hpp"
#include "isoreach/verify.hpp"

using namespace isoreach;

namespace {

Graph g1() { return parse_edge_list("3 3\n1 2\n2 3\n1 3"); }

WeightAssignment round_one(const Graph& g, std::uint64_t p) {
  const std::size_t n = g.vertex_count();
  return compose_round_weight(WeightAssignment(n, g.edge_count(), radix_for(n, initial_prime_cap(n))), p, g);
}

WeightAssignment all_ones(const Graph& g) {
  const std::size_t n = g.vertex_count();
  return WeightAssignment::custom(n, radix_for(n, initial_prime_cap(n)),
                                  std::vector<std::vector<std::uint64_t>>(g.edge_count(), {1}));
}

LimbWeight one_limb(std::uint64_t x, const WeightAssignment& w) {
  return LimbWeight(std::vector<std::uint64_t>{x}, w.base());
}

BallState ball(const WeightAssignment& w, Vertex u, std::uint32_t i, std::uint64_t k, std::uint64_t c, std::uint64_t d) {
  return {u, i, one_limb(k, w), c, CensusSum(std::vector<std::uint64_t>{d})};
}

DistAnswer guided(const Graph& g, const WeightAssignment& w, const BallState& b, Vertex v) {
  GuidedResolver resolver(g, w);
  return resolver.resolve(b, v);
}

// Answers from the exact bounded DP, as the routine would under its promise.
class ExactResolver final : public DistResolver {
 public:
  ExactResolver(const Graph& g, const WeightAssignment& w) : g_(g), w_(w) {}
  DistAnswer resolve(const BallState& b, Vertex v) override {
    if (!table_ || table_->source() != b.source || table_->bound() != b.bound)
      table_.emplace(bounded_shortest_paths(g_, w_, b.source, b.bound));
    const DistEntry& e = (*table_)[v];
    if (!e.dist.is_infinite() && e.dist <= b.radius) return {true, e.dist, e.len};
    return {};
  }

 private:
  const Graph& g_;
  const WeightAssignment& w_;
  std::optional<DistTable> table_;
};

}  // namespace

// ---- the distance routine ----

TEST(DistRoutine, D1FullBall) {
  const Graph d1 = gen_diamond_stack(1);
  const WeightAssignment w = round_one(d1, 3);
  const BallState b = ball(w, 1, 2, 2, 4, 5);
  const DistAnswer expect{true, one_limb(2, w), 2};
  EXPECT_EQ(guided(d1, w, b, 4), expect);
  const auto out = run_enumerate(dist_procedure(d1, w, b, 4));
  EXPECT_EQ(out.accepting_count, 1u);
  EXPECT_EQ(out.accepted_result, expect);
  EXPECT_EQ(replay(dist_procedure(d1, w, b, 4), out.accepting_script), expect);
}

TEST(DistRoutine, CorruptedCountHasNoAcceptingPath) {
  const Graph d1 = gen_diamond_stack(1);
  const WeightAssignment w = round_one(d1, 3);
  EXPECT_EQ(run_enumerate(dist_procedure(d1, w, ball(w, 1, 2, 2, 5, 5), 4)).accepting_count, 0u);
  EXPECT_EQ(run_enumerate(dist_procedure(d1, w, ball(w, 1, 2, 2, 4, 6), 4)).accepting_count, 0u);
  EXPECT_THROW(guided(d1, w, ball(w, 1, 2, 2, 5, 5), 4), GuidedCheckFailure);
}

TEST(DistRoutine, OutsideRadius) {
  const Graph d1 = gen_diamond_stack(1);
  const WeightAssignment w = round_one(d1, 3);
  const BallState b = ball(w, 1, 2, 1, 2, 1);
  EXPECT_EQ(guided(d1, w, b, 3), DistAnswer{});
  EXPECT_EQ(guided(d1, w, b, 4), DistAnswer{});
  const auto out = run_enumerate(dist_procedure(d1, w, b, 3));
  EXPECT_EQ(out.accepting_count, 1u);
  EXPECT_EQ(out.accepted_result, DistAnswer{});
}

TEST(DistRoutine, SourceAtRadiusZero) {
  const Graph g = gen_random(6, 14, 8);
  const WeightAssignment w = round_one(g, 5);
  for (Vertex u = 1; u <= 6; ++u) {
    const BallState b = BallState::initial(w, u, 5);
    const DistAnswer expect{true, w.zero(), 0};
    EXPECT_EQ(guided(g, w, b, u), expect);
    EXPECT_EQ(run_enumerate(dist_procedure(g, w, b, u)).accepted_result, expect);
  }
}

TEST(DistRoutine, Preconditions) {
  const Graph d1 = gen_diamond_stack(1);
  const WeightAssignment w = round_one(d1, 3);
  EXPECT_THROW(guided(d1, w, ball(w, 1, 4, 2, 4, 5), 4), std::invalid_argument);
  BallState inf = ball(w, 1, 2, 2, 4, 5);
  inf.radius = LimbWeight::infinity();
  EXPECT_THROW(guided(d1, w, inf, 4), std::invalid_argument);
}

// ---- stepping ----

TEST(NextWeight, D1Sequence) {
  const Graph d1 = gen_diamond_stack(1);
  const WeightAssignment w = round_one(d1, 3);
  GuidedResolver r(d1, w);
  EXPECT_EQ(next_weight_value(d1, w, BallState::initial(w, 1, 2), r), one_limb(1, w));
  EXPECT_EQ(next_weight_value(d1, w, ball(w, 1, 2, 1, 2, 1), r), one_limb(2, w));
  EXPECT_TRUE(next_weight_value(d1, w, ball(w, 1, 2, 2, 4, 5), r).is_infinite());
}

TEST(InductiveUpdate, D1Steps) {
  const Graph d1 = gen_diamond_stack(1);
  const WeightAssignment w = round_one(d1, 3);
  GuidedResolver r(d1, w);
  const InductiveStep first = inductive_update(d1, w, BallState::initial(w, 1, 2), one_limb(1, w), r);
  EXPECT_FALSE(first.bad);
  EXPECT_EQ(first.next, ball(w, 1, 2, 1, 2, 1));
  const InductiveStep second = inductive_update(d1, w, first.next, one_limb(2, w), r);
  EXPECT_FALSE(second.bad);
  EXPECT_EQ(second.next, ball(w, 1, 2, 2, 4, 5));
}

TEST(InductiveUpdate, FlagsDiamondTie) {
  const Graph d1 = gen_diamond_stack(1);
  const WeightAssignment w = all_ones(d1);
  GuidedResolver r(d1, w);
  const InductiveStep step = inductive_update(d1, w, ball(w, 1, 2, 1, 3, 2), one_limb(2, w), r);
  EXPECT_TRUE(step.bad);
}

TEST(CheckMinUnique, Examples) {
  const Graph d1 = gen_diamond_stack(1);
  const auto bad = check_min_unique(d1, all_ones(d1), 2);
  EXPECT_TRUE(bad.is_bad);
  EXPECT_EQ(bad.bad_source, 1u);
  EXPECT_FALSE(check_min_unique(d1, round_one(d1, 3), 2).is_bad);
  const Graph empty = gen_random(5, 0, 0);
  for (std::uint32_t i = 0; i < 5; ++i) EXPECT_FALSE(check_min_unique(empty, round_one(empty, 3), i).is_bad);
}

TEST(CheckMinUnique, AgreesWithBruteAtFullBound) {
  std::size_t checked = 0, bad = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 3 + seed % 10;
    const Graph g = gen_random(n, std::min<std::size_t>(n * (n - 1), 2 * n + seed % 7), seed);
    const auto full = static_cast<std::uint32_t>(n - 1);
    for (std::uint64_t p = 3; p < 50; p = next_prime(p)) {
      const WeightAssignment w = round_one(g, p);
      RunTrace trace;
      const bool checker_bad = check_min_unique(g, w, full, &trace).is_bad;
      ASSERT_EQ(checker_bad, !brute_min_unique(g, w, full).ok()) << "seed " << seed << " p " << p;
      ASSERT_EQ(trace.census_divergences, 0u);
      ASSERT_LE(trace.max_stages_per_source, n);
      ++checked;
      bad += checker_bad ? 1 : 0;
    }
  }
  EXPECT_GT(bad, 0u);
  EXPECT_LT(bad, checked);
}

// Below n-1 the admissibility rule l(u,x) + 1 <= i hides ties that run through
// a heavier but shorter path to x. From u = 2 both 2-1-4 and 2-3-4 weigh 5
// with two edges, but 3's lightest bounded path 2-1-3 already uses both edges,
// so 3 is never admitted as a predecessor of 4.
TEST(CheckMinUnique, StepRuleMissesTieThroughShorterHeavierPrefix) {
  const Graph g = parse_edge_list("4 7\n3 4\n1 3\n2 3\n4 3\n3 2\n1 4\n2 1");
  const WeightAssignment w = round_one(g, 7);
  const auto brute = brute_min_unique(g, w, 2);
  ASSERT_FALSE(brute.ok());
  EXPECT_EQ(*brute.witness, (std::pair<Vertex, Vertex>{2, 4}));
  ExactResolver exact(g, w);
  EXPECT_FALSE(check_min_unique(g, w, 2, exact).is_bad);
  EXPECT_FALSE(check_min_unique(g, w, 2).is_bad);
  // At bound 3 the three-edge path 2-1-3-4 weighs 4 and breaks the tie; the
  // checker and brute force agree again.
  EXPECT_TRUE(brute_min_unique(g, w, 3).ok());
  EXPECT_FALSE(check_min_unique(g, w, 3).is_bad);
}

// ---- construction ----

TEST(Build, D1) {
  const ConstructionResult r = build_weights_and_decide(gen_diamond_stack(1), 1, 4);
  EXPECT_EQ(r.rounds, 2u);
  EXPECT_EQ(r.primes, (std::vector<std::uint64_t>{3, 3}));
  EXPECT_EQ(r.round_bounds, (std::vector<std::uint32_t>{2, 3}));
  const std::vector<std::uint64_t> limb{1, 2, 1, 2};
  for (EdgeId e = 0; e < 4; ++e) {
    EXPECT_EQ(r.weights.weight(e), LimbWeight(std::vector<std::uint64_t>{limb[e], limb[e]}, r.weights.base()));
  }
  EXPECT_TRUE(r.reach);
  EXPECT_EQ(r.trace.restarts, 0u);
  EXPECT_FALSE(build_weights_and_decide(gen_diamond_stack(1), 4, 1).reach);
}

TEST(Build, SmallCases) {
  EXPECT_FALSE(build_weights_and_decide(g1(), 3, 1).reach);
  EXPECT_TRUE(build_weights_and_decide(g1(), 1, 3).reach);
  const ConstructionResult single = build_weights_and_decide(parse_edge_list("1 0"), 1, 1);
  EXPECT_TRUE(single.reach);
  EXPECT_EQ(single.rounds, 1u);
  EXPECT_THROW(build_weights_and_decide(g1(), 1, 4), std::invalid_argument);
}

TEST(Build, RoundSchedule) {
  EXPECT_EQ(round_count(1), 1u);
  EXPECT_EQ(round_count(2), 1u);
  EXPECT_EQ(round_count(3), 2u);
  EXPECT_EQ(round_count(4), 2u);
  EXPECT_EQ(round_count(5), 3u);
  EXPECT_EQ(round_count(64), 6u);
  EXPECT_EQ(round_bound(1, 10), 2u);
  EXPECT_EQ(round_bound(3, 10), 8u);
  EXPECT_EQ(round_bound(4, 10), 9u);
}

TEST(Build, RestartDoublesCap) {
  // A dense graph cannot be separated by primes up to 5 at bound 2.
  const Graph g = gen_random(8, 40, 1);
  BuildOptions options;
  options.prime_cap = 5;
  const ConstructionResult r = build_weights_and_decide(g, 1, 8, options);
  EXPECT_GT(r.trace.restarts, 0u);
  EXPECT_EQ(r.prime_cap, 5u << r.trace.restarts);
  EXPECT_EQ(r.weights.base(), radix_for(8, r.prime_cap));
  for (auto p : r.primes) EXPECT_LE(p, r.prime_cap);
  EXPECT_TRUE(brute_min_unique(g, r.weights, 7).ok());
  options.max_restarts = 0;
  EXPECT_THROW(build_weights_and_decide(g, 1, 8, options), PrimePoolExhausted);
}

TEST(Build, MinUniqueAndCorrectOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t n = 2 + seed % 14;
    const Graph g = gen_random(n, std::min<std::size_t>(n * (n - 1), 2 * n), seed);
    const auto t = static_cast<Vertex>(n);
    const ConstructionResult r = build_weights_and_decide(g, 1, t);
    ASSERT_TRUE(brute_min_unique(g, r.weights, static_cast<std::uint32_t>(n - 1)).ok()) << seed;
    ASSERT_EQ(r.reach, bfs_reaches(g, 1, t)) << seed;
    ASSERT_EQ(r.rounds, round_count(n));
    ASSERT_EQ(r.rounds * ceil_log2(r.weights.base()),
              round_count(n) * ceil_log2(radix_for(n, r.prime_cap)));
    GuidedResolver resolver(g, r.weights);
    const auto all = decide_reach_all(g, r.weights, 1, resolver);
    for (Vertex v = 1; v <= n; ++v) ASSERT_EQ(all[v], bfs_reaches(g, 1, v));
  }
}

TEST(DecideReach, RefusesNonMinUniqueWeights) {
  const Graph d1 = gen_diamond_stack(1);
  const WeightAssignment w = all_ones(d1);
  GuidedResolver resolver(d1, w);
  EXPECT_THROW(decide_reach(d1, w, 1, 4, resolver), std::logic_error);
}

// ---- execution strategies leave results and traces unchanged ----

TEST(Resolver, MemoizedTraceEqualsUnmemoized) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const std::size_t n = 4 + seed;
    const Graph g = gen_random(n, 3 * n, seed);
    BuildOptions fast, slow;
    slow.resolver.memoize = false;
    const ConstructionResult a = build_weights_and_decide(g, 1, static_cast<Vertex>(n), fast);
    const ConstructionResult b = build_weights_and_decide(g, 1, static_cast<Vertex>(n), slow);
    EXPECT_EQ(a.weights, b.weights);
    EXPECT_EQ(a.reach, b.reach);
    EXPECT_EQ(a.trace.steps(), b.trace.steps());
    EXPECT_EQ(a.trace.peak_register_bits(), b.trace.peak_register_bits());
    EXPECT_EQ(a.trace.dist_invocations, b.trace.dist_invocations);
    EXPECT_LT(a.trace.guided_runs, b.trace.guided_runs);
  }
}

namespace {

InvocationRecorder record(const Graph& g) {
  InvocationRecorder recorder;
  BuildOptions options;
  options.observer = &recorder;
  build_weights_and_decide(g, 1, static_cast<Vertex>(g.vertex_count()), options);
  return recorder;
}

}  // namespace

TEST(Enumeration, EagerChecksOnlyPrune) {
  const Graph g = gen_random(5, 9, 3);
  const InvocationRecorder rec = record(g);
  ASSERT_FALSE(rec.invocations().empty());
  std::size_t examined = 0;
  for (const auto& inv : rec.invocations()) {
    if (examined++ == 60) break;
    const WeightAssignment& w = *rec.checks()[inv.check].weights;
    for (std::uint64_t extra : {0u, 1u}) {
      BallState b = inv.ball;
      b.count += extra;
      const auto eager = run_enumerate(dist_procedure(g, w, b, inv.v, {true}));
      const auto lazy = run_enumerate(dist_procedure(g, w, b, inv.v, {false}));
      ASSERT_EQ(eager.accepting_count, lazy.accepting_count);
      ASSERT_EQ(eager.accepted_result, lazy.accepted_result);
      ASSERT_LE(eager.rejected, lazy.rejected);
    }
  }
}

TEST(Enumeration, OneRunPerBallMatchesPerQueryRuns) {
  const Graph g = gen_random(6, 12, 5);
  const InvocationRecorder rec = record(g);
  std::size_t examined = 0;
  for (const auto& inv : rec.invocations()) {
    if (examined++ == 80) break;
    const WeightAssignment& w = *rec.checks()[inv.check].weights;
    const auto per_query = run_enumerate(dist_procedure(g, w, inv.ball, inv.v));
    const auto per_ball = run_enumerate(census_procedure(g, w, inv.ball));
    ASSERT_EQ(per_query.accepting_count, per_ball.accepting_count);
    ASSERT_EQ(per_query.rejected, per_ball.rejected);
    if (per_query.accepting_count == 1) {
      ASSERT_EQ(*per_query.accepted_result, (*per_ball.accepted_result)[inv.v]);
    }
  }
}

TEST(Enumeration, UniqueWheneverPromiseHolds) {
  // Diamonds and grids stay inside the promise at every bound.
  for (const Graph& g : {gen_diamond_stack(1), gen_diamond_stack(2), gen_grid(2, 3), gen_grid(2, 4)}) {
    const InvocationRecorder rec = record(g);
    const UnambiguityStats stats = verify_unambiguity(g, rec);
    EXPECT_TRUE(stats.ok()) << *stats.first_failure;
    EXPECT_EQ(stats.unique_accepting, stats.invocations);
    EXPECT_EQ(stats.corrupted_rejected, stats.balls);
    EXPECT_EQ(stats.promise_violated_balls, 0u);
  }
  // On denser graphs every failure must come from a broken promise.
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = gen_random(6, 14 + seed, seed);
    const UnambiguityStats stats = verify_unambiguity(g, record(g));
    EXPECT_EQ(stats.failing_balls_promise_held, 0u) << "seed " << seed;
    EXPECT_EQ(stats.corrupted_rejected, stats.balls);
  }
}
