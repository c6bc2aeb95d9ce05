#pragma once

// Nondeterministic procedures are ordinary functions that take a Chooser and
// ask it for every guess. The same procedure then runs either exhaustively
// (run_enumerate, which counts accepting computation paths) or along a single
// path picked by a Guide (run_guided).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isoreach/graph.hpp"

namespace isoreach {

enum class ChoiceKind : std::uint8_t {
  membership,  // branch 0: "outside the ball", branch 1: "inside"
  path_step,   // branch b: take the b-th out-edge of `at`
};

struct ChoicePoint {
  ChoiceKind kind = ChoiceKind::membership;
  Vertex subject = 0;       // vertex whose membership or path is being guessed
  Vertex at = 0;            // path_step only: current vertex
  std::uint32_t step = 0;   // path_step only: edges taken so far
  std::size_t arity = 0;

  friend bool operator==(const ChoicePoint&, const ChoicePoint&) = default;
};

struct ChoiceRecord {
  ChoicePoint point;
  std::size_t branch = 0;

  friend bool operator==(const ChoiceRecord&, const ChoiceRecord&) = default;
};

/// One computation path, as the sequence of guesses that produced it.
using ChoiceScript = std::vector<ChoiceRecord>;

class Chooser {
 public:
  virtual ~Chooser() = default;

  /// Returns a branch in [0, point.arity). Arity 0 halts the path.
  virtual std::size_t choose(const ChoicePoint& point) = 0;

  /// Ends the current computation path without accepting.
  [[noreturn]] virtual void reject(std::string_view reason) = 0;

  /// A check the algorithm itself performs. Failing it rejects the path in
  /// enumerate mode and is a hard error in guided mode.
  void require(bool ok, std::string_view check) {
    if (!ok) reject(check);
    passed(check);
  }

 protected:
  virtual void passed(std::string_view) {}
};

/// Supplies the intended branch at each choice point in guided mode.
class Guide {
 public:
  virtual ~Guide() = default;
  virtual std::size_t answer(const ChoicePoint& point) = 0;
};

/// A guided run left its single intended computation path.
class GuidedCheckFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Enumeration went deeper than the configured cap.
class DepthCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A replayed script no longer matches the procedure's choice points.
class ReplayDivergence : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <class T>
using Procedure = std::function<T(Chooser&)>;

template <class T>
struct RunOutcome {
  std::uint64_t accepting_count = 0;
  std::optional<T> accepted_result;  // set iff accepting_count == 1
  std::uint64_t rejected = 0;
  ChoiceScript accepting_script;     // first accepting path found
  std::uint64_t choice_visits = 0;
};

struct EnumerateOptions {
  std::size_t depth_cap = 1 << 14;
  std::uint64_t path_cap = std::numeric_limits<std::uint64_t>::max();
};

template <class T>
struct GuidedRun {
  T payload;
  ChoiceScript script;
  std::vector<std::string> checks;  // every require() that passed, in order
};

namespace detail {

struct PathRejected {
  std::string reason;
};

// Follows `prefix` and then always takes branch 0, recording everything.
class DfsChooser final : public Chooser {
 public:
  DfsChooser(const std::vector<std::size_t>& prefix, std::size_t depth_cap)
      : prefix_(prefix), depth_cap_(depth_cap) {}
  std::size_t choose(const ChoicePoint& point) override;
  [[noreturn]] void reject(std::string_view reason) override;
  const ChoiceScript& script() const { return script_; }

 private:
  const std::vector<std::size_t>& prefix_;
  std::size_t depth_cap_;
  ChoiceScript script_;
};

class GuidedChooser final : public Chooser {
 public:
  explicit GuidedChooser(Guide& guide) : guide_(guide) {}
  std::size_t choose(const ChoicePoint& point) override;
  [[noreturn]] void reject(std::string_view reason) override;
  ChoiceScript take_script() { return std::move(script_); }
  std::vector<std::string> take_checks() { return std::move(checks_); }

 protected:
  void passed(std::string_view check) override { checks_.emplace_back(check); }

 private:
  Guide& guide_;
  ChoiceScript script_;
  std::vector<std::string> checks_;
};

class ReplayChooser final : public Chooser {
 public:
  explicit ReplayChooser(const ChoiceScript& script) : script_(script) {}
  std::size_t choose(const ChoicePoint& point) override;
  [[noreturn]] void reject(std::string_view reason) override;
  bool finished() const { return pos_ == script_.size(); }

 private:
  const ChoiceScript& script_;
  std::size_t pos_ = 0;
};

/// Next DFS prefix after a completed path, or nullopt when the tree is done.
std::optional<std::vector<std::size_t>> next_prefix(const ChoiceScript& script);

}  // namespace detail

/// Explores every guess sequence depth-first. A rejecting path ends where it
/// rejects, so its subtree is never expanded.
template <class T>
RunOutcome<T> run_enumerate(const Procedure<T>& procedure, const EnumerateOptions& options = {}) {
  RunOutcome<T> outcome;
  std::vector<std::size_t> prefix;
  std::uint64_t paths = 0;
  while (true) {
    if (++paths > options.path_cap) throw DepthCapExceeded("enumeration exceeded its path cap");
    detail::DfsChooser chooser(prefix, options.depth_cap);
    try {
      T result = procedure(chooser);
      if (++outcome.accepting_count == 1) {
        outcome.accepted_result = std::move(result);
        outcome.accepting_script = chooser.script();
      }
    } catch (const detail::PathRejected&) {
      ++outcome.rejected;
    }
    outcome.choice_visits += chooser.script().size();
    auto next = detail::next_prefix(chooser.script());
    if (!next) break;
    prefix = std::move(*next);
  }
  if (outcome.accepting_count != 1) outcome.accepted_result.reset();
  return outcome;
}

/// Runs the single path the guide selects. Any rejection on that path throws
/// GuidedCheckFailure.
template <class T>
GuidedRun<T> run_guided(const Procedure<T>& procedure, Guide& guide) {
  detail::GuidedChooser chooser(guide);
  T payload = procedure(chooser);
  return GuidedRun<T>{std::move(payload), chooser.take_script(), chooser.take_checks()};
}

/// Re-executes a recorded accepting path. Throws ReplayDivergence if the
/// procedure asks for different choices or rejects.
template <class T>
T replay(const Procedure<T>& procedure, const ChoiceScript& script) {
  detail::ReplayChooser chooser(script);
  T result = procedure(chooser);
  if (!chooser.finished()) throw ReplayDivergence("replay ended before the script was consumed");
  return result;
}

}  // namespace isoreach
