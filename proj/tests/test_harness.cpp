#include <gtest/gtest.h>

#include "isoreach/harness.hpp"

using namespace isoreach;

namespace {

ChoicePoint bit(Vertex subject) { return {ChoiceKind::membership, subject, 0, 0, 2}; }

// Guesses three bits and accepts iff exactly `ones` of them are set; prunes
// as soon as too many are set.
Procedure<int> exactly(int ones) {
  return [ones](Chooser& c) {
    int set = 0, value = 0;
    for (Vertex k = 1; k <= 3; ++k) {
      const auto b = c.choose(bit(k));
      set += static_cast<int>(b);
      value = value * 2 + static_cast<int>(b);
      if (set > ones) c.reject("too many");
    }
    c.require(set == ones, "set = ones");
    return value;
  };
}

struct Constant final : Guide {
  std::size_t branch;
  explicit Constant(std::size_t b) : branch(b) {}
  std::size_t answer(const ChoicePoint&) override { return branch; }
};

}  // namespace

TEST(Enumerate, NoChoicesAcceptsOnce) {
  const auto out = run_enumerate<bool>([](Chooser&) { return true; });
  EXPECT_EQ(out.accepting_count, 1u);
  EXPECT_EQ(out.accepted_result, true);
  EXPECT_EQ(out.rejected, 0u);
}

TEST(Enumerate, CountsAcceptingPaths) {
  const auto three = run_enumerate(exactly(2));
  EXPECT_EQ(three.accepting_count, 3u);
  EXPECT_FALSE(three.accepted_result.has_value());

  const auto one = run_enumerate(exactly(3));
  EXPECT_EQ(one.accepting_count, 1u);
  EXPECT_EQ(one.accepted_result, 7);

  const auto none = run_enumerate(exactly(4));
  EXPECT_EQ(none.accepting_count, 0u);
  EXPECT_EQ(none.rejected, 8u);
}

TEST(Enumerate, RejectionPrunesSubtree) {
  // With at most zero ones allowed, every branch taking a 1 dies at once:
  // paths 000, 001, 01, 1.
  const auto out = run_enumerate(exactly(0));
  EXPECT_EQ(out.accepting_count, 1u);
  EXPECT_EQ(out.rejected, 3u);
  EXPECT_EQ(out.choice_visits, 3u + 3u + 2u + 1u);
}

TEST(Enumerate, ZeroArityHaltsPath) {
  const auto out = run_enumerate<int>([](Chooser& c) {
    c.choose({ChoiceKind::path_step, 1, 1, 0, 0});
    return 1;
  });
  EXPECT_EQ(out.accepting_count, 0u);
  EXPECT_EQ(out.rejected, 1u);
}

TEST(Enumerate, DepthCap) {
  const Procedure<int> forever = [](Chooser& c) -> int {
    for (;;) c.choose(bit(1));
  };
  EXPECT_THROW(run_enumerate(forever, {.depth_cap = 50}), DepthCapExceeded);
}

TEST(Replay, ReproducesAcceptingPayload) {
  const auto out = run_enumerate(exactly(3));
  EXPECT_EQ(replay(exactly(3), out.accepting_script), 7);
  ChoiceScript broken = out.accepting_script;
  broken.pop_back();
  EXPECT_THROW(replay(exactly(3), broken), ReplayDivergence);
  ChoiceScript flipped = out.accepting_script;
  flipped[0].branch = 0;
  EXPECT_THROW(replay(exactly(3), flipped), ReplayDivergence);
}

TEST(Guided, FollowsGuideAndLogsChecks) {
  Constant ones(1);
  const auto run = run_guided(exactly(3), ones);
  EXPECT_EQ(run.payload, 7);
  EXPECT_EQ(run.script.size(), 3u);
  EXPECT_EQ(run.checks, (std::vector<std::string>{"set = ones"}));
}

TEST(Guided, FailedCheckIsHardError) {
  Constant zeros(0);
  EXPECT_THROW(run_guided(exactly(2), zeros), GuidedCheckFailure);
  Constant out_of_range(5);
  EXPECT_THROW(run_guided(exactly(2), out_of_range), GuidedCheckFailure);
}

TEST(Modes, AgreeWhenUnique) {
  for (int k = 0; k <= 3; ++k) {
    const auto out = run_enumerate(exactly(k));
    if (out.accepting_count != 1) continue;
    struct FromScript final : Guide {
      const ChoiceScript& s;
      std::size_t pos = 0;
      explicit FromScript(const ChoiceScript& script) : s(script) {}
      std::size_t answer(const ChoicePoint&) override { return s[pos++].branch; }
    } guide(out.accepting_script);
    EXPECT_EQ(run_guided(exactly(k), guide).payload, *out.accepted_result);
  }
}
