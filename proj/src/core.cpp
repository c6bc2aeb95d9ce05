#include "isoreach/core.hpp"

#include <algorithm>

namespace isoreach {

namespace {

// Bit widths of the registers the algorithms keep live.
struct Widths {
  std::uint64_t vertex;
  std::uint64_t length;
  std::uint64_t count;
  std::uint64_t weight;  // one limb vector plus an infinity flag
  std::uint64_t sum;

  Widths(std::size_t n, const WeightAssignment& w) {
    vertex = ceil_log2(n + 1);
    length = ceil_log2(n + 1);
    count = ceil_log2(n + 1);
    weight = w.rounds() * ceil_log2(w.base()) + 1;
    sum = w.rounds() * ceil_log2(static_cast<std::uint64_t>(n) * (w.base() - 1) + 1);
  }
};

DistAnswer census_walk(const Graph& g, const WeightAssignment& w, const BallState& ball, Vertex v,
                       Chooser& chooser, const DistOptions& options, RunTrace* trace,
                       std::vector<DistAnswer>* all) {
  const std::size_t n = g.vertex_count();
  if (ball.bound + 1 > n) throw std::invalid_argument("dist_subroutine: bound must be at most n-1");
  if (ball.radius.is_infinite()) throw std::invalid_argument("dist_subroutine: radius must be finite");
  const std::uint64_t q = w.rounds();
  const Widths bits(n, w);
  RegisterFrame frame(trace, {{"x", bits.vertex},
                              {"count", bits.count},
                              {"sum", bits.sum},
                              {"path_to_v", 1},
                              {"dist", bits.weight},
                              {"len", bits.length}});
  auto charge = [trace](std::uint64_t s) {
    if (trace) trace->add_steps(s);
  };

  std::uint64_t count = 0;
  CensusSum sum(q);
  DistAnswer answer;
  if (all) all->assign(n + 1, DistAnswer{});

  for (Vertex x = 1; x <= n; ++x) {
    charge(1);
    const std::size_t member = chooser.choose({ChoiceKind::membership, x, 0, 0, 2});
    if (member == 1) {
      RegisterFrame path_frame(trace, {{"at", bits.vertex}, {"d", bits.weight}, {"l", bits.length},
                                       {"branch", bits.vertex}});
      Vertex at = ball.source;
      LimbWeight d = w.zero();
      std::uint32_t l = 0;
      while (at != x) {
        charge(1);
        if (trace) trace->checkpoint();
        const auto& out = g.out_edges(at);
        const std::size_t branch = chooser.choose({ChoiceKind::path_step, x, at, l, out.size()});
        if (l + 1 > ball.bound) chooser.reject("guessed path longer than the bound");
        const EdgeId e = out[branch];
        d = limb_add(d, w.weight(e));
        charge(2 * q);
        if (d > ball.radius) chooser.reject("guessed path heavier than the radius");
        ++l;
        at = g.edge(e).head;
      }
      ++count;
      sum.add(d);
      charge(q);
      if (x == v) answer = {true, d, l};
      if (all) (*all)[x] = {true, d, l};
      if (options.eager_census_checks) {
        if (count > ball.count) chooser.reject("count exceeded c");
        if (sum.overshoots(ball.sum)) chooser.reject("sum exceeded D");
      }
    }
    if (options.eager_census_checks && count + (n - x) < ball.count) chooser.reject("count can no longer reach c");
  }
  charge(1 + q);
  chooser.require(count == ball.count, "count = c");
  chooser.require(sum == ball.sum, "sum = D");
  return answer;
}

}  // namespace

BallState BallState::initial(const WeightAssignment& w, Vertex source, std::uint32_t bound) {
  return {source, bound, w.zero(), 1, CensusSum(w.rounds())};
}

DistAnswer dist_subroutine(const Graph& g, const WeightAssignment& w, const BallState& ball, Vertex v,
                           Chooser& chooser, const DistOptions& options, RunTrace* trace) {
  return census_walk(g, w, ball, v, chooser, options, trace, nullptr);
}

Procedure<DistAnswer> dist_procedure(const Graph& g, const WeightAssignment& w, const BallState& ball, Vertex v,
                                     const DistOptions& options) {
  return [&g, &w, ball, v, options](Chooser& chooser) { return dist_subroutine(g, w, ball, v, chooser, options); };
}

Procedure<std::vector<DistAnswer>> census_procedure(const Graph& g, const WeightAssignment& w, const BallState& ball,
                                                    const DistOptions& options) {
  return [&g, &w, ball, options](Chooser& chooser) {
    std::vector<DistAnswer> all;
    census_walk(g, w, ball, ball.source, chooser, options, nullptr, &all);
    return all;
  };
}

// ---- guided execution ----

TreeGuide::TreeGuide(const Graph& g, const PrefixClosedTable& table, LimbWeight radius)
    : g_(g), table_(table), radius_(std::move(radius)), paths_(g.vertex_count() + 1) {}

std::size_t TreeGuide::answer(const ChoicePoint& point) {
  const PrefixClosedEntry& entry = table_[point.subject];
  if (point.kind == ChoiceKind::membership) {
    return (!entry.dist.is_infinite() && entry.dist <= radius_) ? 1 : 0;
  }
  auto& path = paths_[point.subject];
  if (path.empty()) path = table_.path_to(g_, point.subject);
  if (point.step >= path.size()) throw GuidedCheckFailure("guide has no edge for this step");
  const auto& out = g_.out_edges(point.at);
  const auto it = std::find(out.begin(), out.end(), path[point.step]);
  if (it == out.end()) throw GuidedCheckFailure("guide path leaves the current vertex");
  return static_cast<std::size_t>(it - out.begin());
}

GuidedResolver::GuidedResolver(const Graph& g, const WeightAssignment& w, RunTrace* trace, ResolverOptions options,
                               PipelineObserver* observer)
    : g_(g), w_(w), trace_(trace), options_(options), observer_(observer) {}

const PrefixClosedTable& GuidedResolver::guide_table(const BallState& ball) {
  if (!table_ || table_->source() != ball.source || table_->bound() != ball.bound) {
    table_.emplace(prefix_closed_shortest_paths(g_, w_, ball.source, ball.bound));
  }
  return *table_;
}

void GuidedResolver::compare_census(const BallState& ball) {
  if (!exact_ || exact_->source() != ball.source || exact_->bound() != ball.bound) {
    exact_.emplace(bounded_shortest_paths(g_, w_, ball.source, ball.bound));
  }
  if (exact_->count_within(ball.radius) != ball.count || !(exact_->sum_within(ball.radius) == ball.sum)) {
    if (trace_) ++trace_->census_divergences;
  }
}

DistAnswer GuidedResolver::resolve(const BallState& ball, Vertex v) {
  if (trace_) ++trace_->dist_invocations;
  if (options_.memoize && memo_ball_ && *memo_ball_ == ball) {
    if (trace_) {
      trace_->add_steps(memo_steps_);
      trace_->raise_peak(trace_->live_bits() + memo_extra_bits_);
    }
    if (observer_) observer_->on_dist(ball, v, memo_answers_[v]);
    return memo_answers_[v];
  }
  DistAnswer answer;
  {
    const PrefixClosedTable& table = guide_table(ball);
    if (options_.compare_with_exact) compare_census(ball);
    TreeGuide guide(g_, table, ball.radius);
    std::vector<DistAnswer> all;
    const std::uint64_t steps_before = trace_ ? trace_->steps() : 0;
    const std::uint64_t base_bits = trace_ ? trace_->live_bits() : 0;
    if (trace_) trace_->begin_window();
    const DistOptions dist_options = options_.dist;
    Procedure<DistAnswer> walk = [&](Chooser& chooser) {
      return census_walk(g_, w_, ball, v, chooser, dist_options, trace_, &all);
    };
    answer = run_guided(walk, guide).payload;
    if (trace_) {
      ++trace_->guided_runs;
      memo_steps_ = trace_->steps() - steps_before;
      memo_extra_bits_ = trace_->window_peak() - base_bits;
    }
    if (options_.memoize) {
      memo_ball_ = ball;
      memo_answers_ = std::move(all);
    }
  }
  if (observer_) observer_->on_dist(ball, v, answer);
  return answer;
}

// ---- stepping ----

LimbWeight next_weight_value(const Graph& g, const WeightAssignment& w, const BallState& ball,
                             DistResolver& resolver, RunTrace* trace) {
  const std::size_t n = g.vertex_count();
  const std::uint64_t q = w.rounds();
  const Widths bits(n, w);
  RegisterFrame frame(trace, {{"v", bits.vertex}, {"x", bits.vertex}, {"mindist", bits.weight},
                              {"k'", bits.weight}});
  auto charge = [trace](std::uint64_t s) {
    if (trace) trace->add_steps(s);
  };

  LimbWeight next = LimbWeight::infinity();
  for (Vertex v = 1; v <= n; ++v) {
    if (resolver.resolve(ball, v).within) continue;
    LimbWeight mindist = LimbWeight::infinity();
    for (EdgeId e : g.in_edges(v)) {
      charge(1);
      const DistAnswer ax = resolver.resolve(ball, g.edge(e).tail);
      if (ax.within && *ax.len + 1 <= ball.bound) {
        const LimbWeight cand = limb_add(ax.dist, w.weight(e));
        charge(2 * q);
        if (mindist > cand) mindist = cand;
      }
    }
    charge(q);
    if (next > mindist) next = mindist;
  }
  return next;
}

InductiveStep inductive_update(const Graph& g, const WeightAssignment& w, const BallState& ball,
                               const LimbWeight& next_radius, DistResolver& resolver, RunTrace* trace) {
  const std::size_t n = g.vertex_count();
  const std::uint64_t q = w.rounds();
  const Widths bits(n, w);
  RegisterFrame frame(trace, {{"c'", bits.count}, {"D'", bits.sum}, {"v", bits.vertex}, {"x", bits.vertex},
                              {"x'", bits.vertex}});
  auto charge = [trace](std::uint64_t s) {
    if (trace) trace->add_steps(s);
  };
  auto admissible = [&](EdgeId e) {
    charge(1);
    const DistAnswer ax = resolver.resolve(ball, g.edge(e).tail);
    if (!ax.within || *ax.len + 1 > ball.bound) return false;
    charge(2 * q);
    return limb_add(ax.dist, w.weight(e)) == next_radius;
  };

  InductiveStep step{ball, false};
  step.next.radius = next_radius;
  for (Vertex v = 1; v <= n; ++v) {
    if (resolver.resolve(ball, v).within) continue;
    const auto& in = g.in_edges(v);
    for (EdgeId e : in) {
      if (!admissible(e)) continue;
      ++step.next.count;
      step.next.sum.add(next_radius);
      charge(q);
      for (EdgeId other : in) {
        if (other != e && admissible(other)) step.bad = true;
      }
    }
  }
  return step;
}

MinUniqueCheck check_min_unique(const Graph& g, const WeightAssignment& w, std::uint32_t bound,
                                DistResolver& resolver, RunTrace* trace) {
  const std::size_t n = g.vertex_count();
  const Widths bits(n, w);
  RegisterFrame frame(trace, {{"u", bits.vertex}, {"k", bits.weight}, {"c", bits.count}, {"D", bits.sum},
                              {"k'", bits.weight}, {"bad", 1}, {"stage", bits.length}});
  if (trace) ++trace->checks;

  MinUniqueCheck result;
  for (Vertex u = 1; u <= n && !result.is_bad; ++u) {
    BallState ball = BallState::initial(w, u, bound);
    std::uint64_t stages = 0;
    while (true) {
      const LimbWeight next = next_weight_value(g, w, ball, resolver, trace);
      if (next.is_infinite()) break;
      if (!(next > ball.radius)) {
        throw std::logic_error("k' did not increase: " + to_string(next) + " after " + to_string(ball.radius));
      }
      InductiveStep step = inductive_update(g, w, ball, next, resolver, trace);
      if (++stages > n) throw std::logic_error("more than n k' stages for source " + std::to_string(u));
      ball = std::move(step.next);
      if (step.bad) {
        result.is_bad = true;
        result.bad_source = u;
        break;
      }
    }
    result.max_stages = std::max(result.max_stages, stages);
  }
  if (trace) trace->max_stages_per_source = std::max(trace->max_stages_per_source, result.max_stages);
  return result;
}

MinUniqueCheck check_min_unique(const Graph& g, const WeightAssignment& w, std::uint32_t bound, RunTrace* trace,
                                const ResolverOptions& options, PipelineObserver* observer) {
  GuidedResolver resolver(g, w, trace, options, observer);
  if (observer) observer->on_check_begin(w, bound, false);
  MinUniqueCheck result = check_min_unique(g, w, bound, resolver, trace);
  if (observer) observer->on_check_end(result.is_bad);
  return result;
}

namespace {

BallState full_ball(const Graph& g, const WeightAssignment& w, Vertex s, DistResolver& resolver, RunTrace* trace) {
  const std::size_t n = g.vertex_count();
  const auto bound = static_cast<std::uint32_t>(n - 1);
  BallState ball = BallState::initial(w, s, bound);
  std::uint64_t stages = 0;
  while (true) {
    const LimbWeight next = next_weight_value(g, w, ball, resolver, trace);
    if (next.is_infinite()) break;
    InductiveStep step = inductive_update(g, w, ball, next, resolver, trace);
    if (step.bad) throw std::logic_error("final weights are not min-unique around vertex " + std::to_string(s));
    if (++stages > n) throw std::logic_error("more than n k' stages in the reachability walk");
    ball = std::move(step.next);
  }
  return ball;
}

}  // namespace

bool decide_reach(const Graph& g, const WeightAssignment& w, Vertex s, Vertex t, DistResolver& resolver,
                  RunTrace* trace) {
  if (!g.has_vertex(s) || !g.has_vertex(t)) throw std::invalid_argument("decide_reach: vertex out of range");
  const BallState ball = full_ball(g, w, s, resolver, trace);
  return resolver.resolve(ball, t).within;
}

std::vector<bool> decide_reach_all(const Graph& g, const WeightAssignment& w, Vertex s, DistResolver& resolver,
                                   RunTrace* trace) {
  if (!g.has_vertex(s)) throw std::invalid_argument("decide_reach_all: vertex out of range");
  const BallState ball = full_ball(g, w, s, resolver, trace);
  std::vector<bool> out(g.vertex_count() + 1, false);
  for (Vertex t = 1; t <= g.vertex_count(); ++t) out[t] = resolver.resolve(ball, t).within;
  return out;
}

// ---- construction ----

std::size_t round_count(std::size_t n) { return n <= 2 ? 1 : ceil_log2(n); }

std::uint32_t round_bound(std::size_t round, std::size_t n) {
  const std::uint64_t doubled = round >= 32 ? ~0ULL : (1ULL << round);
  return static_cast<std::uint32_t>(std::min<std::uint64_t>(doubled, n - 1));
}

ConstructionResult build_weights_and_decide(const Graph& g, Vertex s, Vertex t, const BuildOptions& options) {
  if (!g.has_vertex(s) || !g.has_vertex(t)) throw std::invalid_argument("build_weights_and_decide: vertex out of range");
  const std::size_t n = g.vertex_count();
  const std::size_t q = round_count(n);

  ConstructionResult result;
  RunTrace& trace = result.trace;
  std::uint64_t cap = options.prime_cap.value_or(initial_prime_cap(n));
  if (cap < 3) throw std::invalid_argument("prime cap must be at least 3");

  while (true) {
    const std::uint64_t base = radix_for(n, cap);
    WeightAssignment w(n, g.edge_count(), base);
    trace.rounds.clear();
    trace.prime_cap = cap;
    const std::uint64_t vb = ceil_log2(n + 1);
    const std::uint64_t pb = ceil_log2(cap + 1);
    RegisterFrame frame(&trace, {{"s", vb}, {"t", vb}, {"j", ceil_log2(q + 1)}, {"i", vb}, {"p", pb},
                                 {"primes", q * pb}, {"B", ceil_log2(base + 1)}});
    try {
      for (std::size_t j = 1; j <= q; ++j) {
        const std::uint32_t bound = round_bound(j, n);
        trace.rounds.push_back({bound, {}});
        std::uint64_t p = 3;
        while (true) {
          trace.rounds.back().primes_tried.push_back(p);
          WeightAssignment candidate = compose_round_weight(w, p, g);
          const MinUniqueCheck check =
              check_min_unique(g, candidate, bound, &trace, options.resolver, options.observer);
          if (!check.is_bad) {
            w = std::move(candidate);
            break;
          }
          p = next_prime(p, cap);
        }
        if (options.observer) options.observer->on_round(j, w, bound);
      }
    } catch (const PrimePoolExhausted&) {
      if (trace.restarts >= options.max_restarts) throw;
      ++trace.restarts;
      cap *= 2;
      continue;
    }

    GuidedResolver resolver(g, w, &trace, options.resolver, options.observer);
    if (options.observer) options.observer->on_check_begin(w, static_cast<std::uint32_t>(n - 1), true);
    result.reach = decide_reach(g, w, s, t, resolver, &trace);
    if (options.observer) options.observer->on_check_end(false);

    result.rounds = q;
    result.primes = w.primes();
    for (const auto& r : trace.rounds) result.round_bounds.push_back(r.bound);
    result.prime_cap = cap;
    result.weights = std::move(w);
    return result;
  }
}

}  // namespace isoreach
