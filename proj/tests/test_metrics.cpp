#include <gtest/gtest.h>

#include <cmath>

#include "isoreach/core.hpp"
#include "isoreach/metrics.hpp"
#include "isoreach/oracle.hpp"

using namespace isoreach;

TEST(Checkpoint, RaisesPeakOnly) {
  RunTrace t;
  const std::vector<RegisterUse> c96{{"a", 64}, {"b", 32}};
  record_checkpoint(t, c96);
  EXPECT_EQ(t.peak_register_bits(), 96u);
  const std::vector<RegisterUse> c120{{"a", 100}, {"b", 20}};
  record_checkpoint(t, c120);
  EXPECT_EQ(t.peak_register_bits(), 120u);
  const std::vector<RegisterUse> c64{{"a", 64}};
  record_checkpoint(t, c64);
  EXPECT_EQ(t.peak_register_bits(), 120u);
  record_checkpoint(t, {});
  EXPECT_EQ(t.peak_register_bits(), 120u);
}

TEST(Frames, LiveBitsFollowScopes) {
  RunTrace t;
  {
    RegisterFrame outer(&t, {{"x", 10}, {"y", 5}});
    EXPECT_EQ(t.live_bits(), 15u);
    {
      RegisterFrame inner(&t, {{"z", 7}});
      EXPECT_EQ(t.live_bits(), 22u);
      t.checkpoint();
      EXPECT_EQ(t.live_census().size(), 3u);
    }
    EXPECT_EQ(t.live_bits(), 15u);
  }
  EXPECT_EQ(t.live_bits(), 0u);
  EXPECT_EQ(t.peak_register_bits(), 22u);
  RegisterFrame none(nullptr, {{"x", 1}});  // no trace: no effect
}

TEST(Scaling, CubicFixture) {
  std::vector<ScalePoint> pts;
  for (std::size_t n : {8u, 16u, 32u, 64u}) pts.push_back({n, n * n * n, 40});
  const ScalingReport r = scaling_report(pts);
  EXPECT_NEAR(r.step_exponent, 3.0, 0.01);
  EXPECT_NEAR(r.lower_exponent, 3.0, 0.01);
  EXPECT_NEAR(r.upper_exponent, 3.0, 0.01);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_NEAR(r.rows[2].local_exponent, 3.0, 1e-9);
}

TEST(Scaling, FlatRatioColumn) {
  std::vector<ScalePoint> pts;
  for (std::size_t n : {64u, 8u, 32u, 16u}) {
    const std::uint64_t lg = ceil_log2(n);
    pts.push_back({n, n * n, 5 * lg * lg});
  }
  const ScalingReport r = scaling_report(pts);
  EXPECT_EQ(r.rows.front().n, 8u);  // sorted
  for (const auto& row : r.rows) EXPECT_DOUBLE_EQ(row.bits_ratio, 5.0);
  EXPECT_TRUE(r.ratio_non_increasing);
  EXPECT_DOUBLE_EQ(r.max_bits_ratio, 5.0);
}

TEST(Scaling, FlagsDrift) {
  // n^2 below 32, n^4 above: the upper half fits steeper than the lower.
  std::vector<ScalePoint> pts;
  for (std::size_t n : {8u, 16u, 32u, 64u, 128u}) {
    const double s = n <= 32 ? std::pow(n, 2) : std::pow(32, 2) * std::pow(n / 32.0, 4);
    pts.push_back({n, static_cast<std::uint64_t>(s), 10});
  }
  EXPECT_TRUE(scaling_report(pts).exponent_drift);
}

TEST(Scaling, Rejections) {
  EXPECT_THROW(scaling_report({{8, 10, 1}, {16, 20, 1}, {32, 40, 1}}), std::invalid_argument);
  EXPECT_THROW(scaling_report({{8, 10, 1}, {8, 20, 1}, {32, 40, 1}, {64, 80, 1}}), std::invalid_argument);
  EXPECT_THROW(scaling_report({{8, 0, 1}, {16, 20, 1}, {32, 40, 1}, {64, 80, 1}}), std::invalid_argument);
}

TEST(Savitch, FormulaMatchesExecution) {
  for (std::size_t n = 2; n <= 7; ++n) {
    const Graph g = gen_random(n, n, n);
    bool reached = false;
    EXPECT_DOUBLE_EQ(static_cast<double>(savitch_execute(g, 1, static_cast<Vertex>(n), &reached)), savitch_steps(n));
    EXPECT_EQ(reached, bfs_reaches(g, 1, static_cast<Vertex>(n)));
  }
  EXPECT_DOUBLE_EQ(savitch_steps(3), 6.0);  // S(2) = 3 * (S(1) + S(1))
}

TEST(Trace, PipelineCountersMove) {
  const ConstructionResult r = build_weights_and_decide(gen_diamond_stack(2), 1, 7);
  EXPECT_GT(r.trace.steps(), 0u);
  EXPECT_GT(r.trace.peak_register_bits(), 0u);
  EXPECT_EQ(r.trace.rounds.size(), r.rounds);
  EXPECT_GE(r.trace.checks, r.rounds);
  EXPECT_GT(r.trace.dist_invocations, r.trace.guided_runs);
}
