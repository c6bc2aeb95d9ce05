#include "isoreach/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "isoreach/oracle.hpp"

namespace isoreach {

namespace {

std::vector<std::uint64_t> flatten(const BallState& ball, Vertex v) {
  std::vector<std::uint64_t> key{ball.source, ball.bound, ball.count, v, ball.radius.size()};
  for (auto l : ball.radius.limbs()) key.push_back(l);
  for (auto l : ball.sum.limbs()) key.push_back(l);
  return key;
}

std::string describe(const BallState& ball, Vertex v) {
  return "u=" + std::to_string(ball.source) + " i=" + std::to_string(ball.bound) + " k=" + to_string(ball.radius) +
         " c=" + std::to_string(ball.count) + " D=" + to_string(ball.sum) + " v=" + std::to_string(v);
}

std::string describe(const DistAnswer& a) {
  return std::string(a.within ? "true" : "false") + "," + to_string(a.dist) + "," +
         (a.len ? std::to_string(*a.len) : std::string("inf"));
}

}  // namespace

void InvocationRecorder::on_check_begin(const WeightAssignment& w, std::uint32_t bound, bool is_reach) {
  checks_.push_back({std::make_shared<const WeightAssignment>(w), bound, is_reach, false});
  seen_.emplace_back();
}

void InvocationRecorder::on_dist(const BallState& ball, Vertex v, const DistAnswer& answer) {
  ++total_;
  const std::size_t check = checks_.size() - 1;
  if (seen_[check].insert(flatten(ball, v)).second) invocations_.push_back({check, ball, v, answer});
}

void InvocationRecorder::on_check_end(bool is_bad) { checks_.back().is_bad = is_bad; }

void InvocationRecorder::on_round(std::size_t, const WeightAssignment&, std::uint32_t) {}

UnambiguityStats verify_unambiguity(const Graph& g, const InvocationRecorder& recorder, const DistOptions& options) {
  UnambiguityStats stats;
  // Group invocations by weights and ball, in first-seen order.
  std::map<std::vector<std::uint64_t>, std::size_t> group_of;
  std::vector<std::vector<const InvocationRecorder::Invocation*>> groups;
  std::set<std::vector<std::uint64_t>> triples;
  for (const auto& inv : recorder.invocations()) {
    const WeightAssignment& w = *recorder.checks()[inv.check].weights;
    std::vector<std::uint64_t> key(w.primes().begin(), w.primes().end());
    key.push_back(w.base());
    const auto ball_key = flatten(inv.ball, 0);
    key.insert(key.end(), ball_key.begin(), ball_key.end());
    auto triple = key;
    triple.push_back(inv.v);
    if (!triples.insert(std::move(triple)).second) continue;
    auto [it, fresh] = group_of.try_emplace(std::move(key), groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(&inv);
  }

  for (const auto& group : groups) {
    const BallState& ball = group.front()->ball;
    const WeightAssignment& w = *recorder.checks()[group.front()->check].weights;
    ++stats.balls;
    stats.invocations += group.size();
    const DistTable exact = bounded_shortest_paths(g, w, ball.source, ball.bound);
    bool promise = exact.count_within(ball.radius) == ball.count && exact.sum_within(ball.radius) == ball.sum;
    for (Vertex x = 1; x <= g.vertex_count() && promise; ++x) {
      if (!exact[x].dist.is_infinite() && exact[x].dist <= ball.radius && exact[x].count != 1) promise = false;
    }
    if (!promise) ++stats.promise_violated_balls;

    bool ball_ok = true;
    const auto outcome = run_enumerate(census_procedure(g, w, ball, options));
    stats.enumerated_paths += outcome.accepting_count + outcome.rejected;
    for (const auto* inv : group) {
      if (outcome.accepting_count == 1 && (*outcome.accepted_result)[inv->v] == inv->guided) {
        ++stats.unique_accepting;
        continue;
      }
      ball_ok = false;
      if (!stats.first_failure) {
        stats.first_failure = "invocation " + describe(ball, inv->v) + ": " + std::to_string(outcome.accepting_count) +
                              " accepting paths" +
                              (outcome.accepted_result ? ", payload " + describe((*outcome.accepted_result)[inv->v])
                                                       : std::string()) +
                              ", guided " + describe(inv->guided) +
                              (promise ? "" : " (promise violated: census inexact or ball not min-unique)");
      }
    }

    BallState corrupted = ball;
    ++corrupted.count;
    const auto bad = run_enumerate(census_procedure(g, w, corrupted, options));
    stats.enumerated_paths += bad.accepting_count + bad.rejected;
    if (bad.accepting_count == 0) {
      ++stats.corrupted_rejected;
    } else {
      ball_ok = false;
      if (!stats.first_failure) {
        stats.first_failure = "corrupted census " + describe(corrupted, ball.source) + " still has " +
                              std::to_string(bad.accepting_count) + " accepting paths";
      }
    }
    if (!ball_ok) {
      ++stats.failing_balls;
      if (promise) ++stats.failing_balls_promise_held;
    }
  }
  return stats;
}

LemmaBoundStats verify_lemma_bound(const Graph& g, const ConstructionResult& result) {
  LemmaBoundStats stats;
  const std::size_t n = g.vertex_count();
  for (std::size_t j = 1; j <= result.rounds; ++j) {
    const WeightAssignment wj = result.weights.prefix(j);
    const std::uint32_t l = result.round_bounds[j - 1];
    if (!brute_min_unique(g, wj, l).ok()) continue;
    ++stats.rounds_checked;
    const auto doubled = static_cast<std::uint32_t>(std::min<std::uint64_t>(2ULL * l, n - 1));
    for (Vertex u = 1; u <= n; ++u) {
      const DistTable table = bounded_shortest_paths(g, wj, u, doubled);
      for (Vertex v = 1; v <= n; ++v) {
        ++stats.pairs_checked;
        stats.max_count = std::max(stats.max_count, table[v].count);
        if (table[v].count > n && !stats.first_failure) {
          stats.first_failure = "round " + std::to_string(j) + " pair (" + std::to_string(u) + "," +
                                std::to_string(v) + ") has " + std::to_string(table[v].count) +
                                " min-weight paths";
        }
      }
    }
  }
  return stats;
}

bool VerifyResult::pass() const {
  return std::all_of(properties.begin(), properties.end(), [](const Property& p) { return p.pass; });
}

VerifyResult verify_graph(const Graph& g, const VerifyOptions& options) {
  const std::size_t n = g.vertex_count();
  const auto full = static_cast<std::uint32_t>(n - 1);
  const bool enumerate = n <= options.max_enum_n;
  InvocationRecorder recorder;
  BuildOptions build;
  build.prime_cap = options.prime_cap;
  build.observer = enumerate ? &recorder : nullptr;

  VerifyResult result;
  result.construction = build_weights_and_decide(g, 1, 1, build);
  const ConstructionResult& built = result.construction;
  auto add = [&](std::string name, bool pass, Json detail) {
    result.properties.push_back({std::move(name), pass, std::move(detail)});
  };

  // Final reachability for every source, still through the pipeline.
  {
    const WeightAssignment& w = built.weights;
    if (enumerate) recorder.on_check_begin(w, full, true);
    std::uint64_t mismatches = 0;
    Json first = nullptr;
    for (Vertex s = 1; s <= n; ++s) {
      GuidedResolver resolver(g, w, nullptr, {}, enumerate ? &recorder : nullptr);
      const auto reach = decide_reach_all(g, w, s, resolver);
      const auto truth = bfs_reach(g, s);
      std::vector<bool> expected(n + 1, false);
      for (Vertex t : truth) expected[t] = true;
      for (Vertex t = 1; t <= n; ++t) {
        if (reach[t] != expected[t]) {
          if (first.is_null()) first = {s, t};
          ++mismatches;
        }
      }
    }
    if (enumerate) recorder.on_check_end(false);
    add("reach_matches_bfs", mismatches == 0, {{"pairs", n * n}, {"mismatches", mismatches}, {"first", first}});
  }

  WeightAssignment final_w = built.weights;
  if (options.fault_weights) {
    std::vector<std::vector<std::uint64_t>> ones(g.edge_count(), std::vector<std::uint64_t>{1});
    final_w = WeightAssignment::custom(n, radix_for(n, initial_prime_cap(n)), ones);
  }

  {
    const auto verdict = brute_min_unique(g, final_w, full);
    Json detail = {{"bound", full}, {"fault_weights", options.fault_weights}};
    detail["witness"] = verdict.witness ? Json{verdict.witness->first, verdict.witness->second} : Json(nullptr);
    add("construction_min_unique", verdict.ok(), std::move(detail));
  }

  {
    // Every check the pipeline ran, plus the final weights at n-1.
    std::uint64_t checked = 0, disagreements = 0;
    Json first = nullptr;
    auto compare = [&](const WeightAssignment& w, std::uint32_t bound, bool checker_bad) {
      ++checked;
      const auto verdict = brute_min_unique(g, w, bound);
      if (checker_bad == verdict.ok()) {
        ++disagreements;
        if (first.is_null()) {
          first = {{"bound", bound}, {"primes", w.primes()}, {"checker_bad", checker_bad}};
          first["witness"] = verdict.witness ? Json{verdict.witness->first, verdict.witness->second} : Json(nullptr);
        }
      }
    };
    for (const auto& check : recorder.checks())
      if (!check.is_reach) compare(*check.weights, check.bound, check.is_bad);
    const auto final_check = check_min_unique(g, final_w, full);
    compare(final_w, full, final_check.is_bad);
    Json detail = {{"checks", checked}, {"disagreements", disagreements}, {"first", first}};
    if (options.fault_weights) {
      const auto verdict = brute_min_unique(g, final_w, full);
      detail["fault_witness"] =
          verdict.witness ? Json{verdict.witness->first, verdict.witness->second} : Json(nullptr);
      detail["fault_checker_bad"] = final_check.is_bad;
    }
    add("checker_agreement", disagreements == 0, std::move(detail));
  }

  add("census_correctness", built.trace.census_divergences == 0,
      {{"divergences", built.trace.census_divergences}, {"balls_compared", built.trace.guided_runs}});

  {
    const auto lemma = verify_lemma_bound(g, built);
    Json detail = {{"rounds_checked", lemma.rounds_checked}, {"pairs_checked", lemma.pairs_checked},
                   {"max_count", lemma.max_count}, {"limit", n}};
    if (lemma.first_failure) detail["failure"] = *lemma.first_failure;
    add("lemma_path_bound", lemma.ok(), std::move(detail));
  }

  add("stage_bound", built.trace.max_stages_per_source <= n,
      {{"max_stages_per_source", built.trace.max_stages_per_source}, {"limit", n}});

  {
    const std::uint64_t lg = ceil_log2(n);
    const std::uint64_t bits = built.rounds * ceil_log2(built.weights.base());
    const std::uint64_t budget = std::max<std::uint64_t>(lg, 1) * ceil_log2(radix_for(n, built.prime_cap));
    const std::uint64_t n3 = static_cast<std::uint64_t>(n) * n * n;
    const bool cap_ok = built.prime_cap <= std::max<std::uint64_t>(initial_prime_cap(n), n3);
    add("bit_budget", bits <= budget && cap_ok,
        {{"bits_per_edge", bits}, {"budget", budget}, {"prime_cap", built.prime_cap},
         {"initial_cap", initial_prime_cap(n)}, {"restarts", built.trace.restarts}});
  }

  if (enumerate) {
    const auto stats = verify_unambiguity(g, recorder);
    Json detail = {{"issued", recorder.total_invocations()},
                   {"distinct", stats.invocations},
                   {"unique_accepting", stats.unique_accepting},
                   {"balls", stats.balls},
                   {"corrupted_rejected", stats.corrupted_rejected},
                   {"promise_violated_balls", stats.promise_violated_balls},
                   {"failing_balls", stats.failing_balls},
                   {"failing_balls_promise_held", stats.failing_balls_promise_held},
                   {"enumerated_paths", stats.enumerated_paths}};
    if (stats.first_failure) detail["failure"] = *stats.first_failure;
    add("unambiguity", stats.ok(), std::move(detail));
  } else {
    add("unambiguity", true, {{"skipped", "n exceeds max_enum_n"}, {"max_enum_n", options.max_enum_n}});
  }

  if (options.fault_census) {
    // The guided run must refuse a census it cannot reproduce.
    const WeightAssignment& w = built.weights;
    GuidedResolver resolver(g, w);
    BallState ball = BallState::initial(w, 1, full);
    ++ball.count;
    std::string error;
    try {
      resolver.resolve(ball, 1);
    } catch (const GuidedCheckFailure& e) {
      error = e.what();
    }
    add("fault_census", false, {{"aborted", !error.empty()}, {"error", error}});
  }
  return result;
}

Json properties_to_json(const std::vector<Property>& properties) {
  Json out = Json::array();
  for (const auto& p : properties) {
    Json jp;
    jp["name"] = p.name;
    jp["pass"] = p.pass;
    jp["detail"] = p.detail;
    out.push_back(std::move(jp));
  }
  return out;
}

}  // namespace isoreach
