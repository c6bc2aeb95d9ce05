#include "isoreach/report.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

namespace isoreach {

Json weights_to_json(const WeightAssignment& w) {
  Json limbs = Json::array();
  for (EdgeId e = 0; e < w.edge_count(); ++e) {
    Json row = Json::array();
    for (std::uint64_t l : w.weight(e).limbs()) row.push_back(l);
    limbs.push_back(std::move(row));
  }
  Json out;
  out["n"] = w.vertex_count();
  out["m"] = w.edge_count();
  out["B"] = w.base();
  out["primes"] = w.primes();
  out["limbs"] = std::move(limbs);
  return out;
}

WeightAssignment weights_from_json(const Json& j, const Graph& g) {
  const auto n = j.at("n").get<std::size_t>();
  const auto m = j.at("m").get<std::size_t>();
  const auto base = j.at("B").get<std::uint64_t>();
  const auto primes = j.at("primes").get<std::vector<std::uint64_t>>();
  const auto limbs = j.at("limbs").get<std::vector<std::vector<std::uint64_t>>>();
  if (n != g.vertex_count() || m != g.edge_count() || limbs.size() != m) {
    throw std::invalid_argument("weights JSON does not match the graph");
  }
  if (primes.empty() && m > 0 && !limbs.front().empty()) return WeightAssignment::custom(n, base, limbs);
  WeightAssignment w(n, m, base);
  for (std::uint64_t p : primes) w = compose_round_weight(w, p, g);
  for (EdgeId e = 0; e < m; ++e) {
    const auto stored = LimbWeight(limbs[e], base);
    if (!(stored == w.weight(e))) throw std::invalid_argument("weights JSON limbs disagree with its primes");
  }
  return w;
}

Json trace_to_json(const RunTrace& trace) {
  Json rounds = Json::array();
  for (const auto& r : trace.rounds) {
    Json jr;
    jr["bound"] = r.bound;
    jr["primes_tried"] = r.primes_tried;
    rounds.push_back(std::move(jr));
  }
  Json out;
  out["steps"] = trace.steps();
  out["peak_register_bits"] = trace.peak_register_bits();
  out["rounds"] = std::move(rounds);
  out["restarts"] = trace.restarts;
  out["prime_cap"] = trace.prime_cap;
  out["checks"] = trace.checks;
  out["dist_invocations"] = trace.dist_invocations;
  out["guided_runs"] = trace.guided_runs;
  out["max_stages_per_source"] = trace.max_stages_per_source;
  out["census_divergences"] = trace.census_divergences;
  return out;
}

Json construction_to_json(const ConstructionResult& result) {
  Json out;
  out["rounds"] = result.rounds;
  out["primes"] = result.primes;
  out["round_bounds"] = result.round_bounds;
  out["prime_cap"] = result.prime_cap;
  out["weights"] = weights_to_json(result.weights);
  out["reach"] = result.reach;
  out["trace"] = trace_to_json(result.trace);
  return out;
}

Json scaling_to_json(const ScalingReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json jr;
    jr["n"] = r.n;
    jr["steps"] = r.steps;
    jr["peak_bits"] = r.peak_bits;
    jr["log2n_squared"] = r.log2n_squared;
    jr["bits_ratio"] = r.bits_ratio;
    jr["local_exponent"] = r.local_exponent;
    jr["savitch_steps"] = r.savitch_steps;
    rows.push_back(std::move(jr));
  }
  Json out;
  out["space_model"] = "peak bits = sum of bit widths of live pipeline registers at checkpoints";
  out["rows"] = std::move(rows);
  out["step_exponent"] = report.step_exponent;
  out["lower_exponent"] = report.lower_exponent;
  out["upper_exponent"] = report.upper_exponent;
  out["exponent_drift"] = report.exponent_drift;
  out["savitch_exponent"] = report.savitch_exponent;
  out["ratio_non_increasing"] = report.ratio_non_increasing;
  out["max_bits_ratio"] = report.max_bits_ratio;
  return out;
}

std::string scaling_table(const ScalingReport& report) {
  std::ostringstream out;
  out << "# space = peak bits of live pipeline registers (abstract register census)\n";
  out << std::setw(6) << "n" << std::setw(18) << "steps" << std::setw(11) << "peak_bits" << std::setw(10)
      << "lg2n^2" << std::setw(8) << "ratio" << std::setw(8) << "slope" << std::setw(14) << "savitch" << '\n';
  for (const auto& r : report.rows) {
    char sav[32];
    std::snprintf(sav, sizeof sav, "%.3e", r.savitch_steps);
    out << std::setw(6) << r.n << std::setw(18) << r.steps << std::setw(11) << r.peak_bits << std::setw(10)
        << r.log2n_squared << std::setw(8) << std::fixed << std::setprecision(2) << r.bits_ratio << std::setw(8)
        << r.local_exponent << std::setw(14) << sav << '\n';
  }
  out << std::fixed << std::setprecision(3) << "step exponent " << report.step_exponent << " (lower half "
      << report.lower_exponent << ", upper half " << report.upper_exponent << ")"
      << (report.exponent_drift ? "  DRIFT" : "") << '\n';
  out << "savitch exponent " << report.savitch_exponent << '\n';
  out << "bits ratio " << (report.ratio_non_increasing ? "non-increasing" : "INCREASING") << ", max "
      << report.max_bits_ratio << '\n';
  return out.str();
}

std::string input_digest(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace isoreach
