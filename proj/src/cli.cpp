#include "isoreach/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "isoreach/core.hpp"
#include "isoreach/oracle.hpp"
#include "isoreach/verify.hpp"

namespace isoreach {

namespace {

Json header(const std::vector<std::string>& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

std::string join(const std::vector<std::uint64_t>& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

std::uint64_t max_edges(std::size_t n) { return static_cast<std::uint64_t>(n) * (n - (n > 0 ? 1 : 0)); }

}  // namespace

Graph generate(const std::string& family, const std::vector<std::uint64_t>& params, std::uint64_t seed) {
  auto want = [&](std::size_t k, const char* usage) {
    if (params.size() != k) throw UsageError(std::string("usage: gen ") + usage);
  };
  if (family == "diamond") {
    want(1, "diamond LAYERS");
    if (params[0] < 1) throw UsageError("diamond needs at least one layer");
    if (1 + 3 * params[0] > kMaxVertices) throw UsageError("diamond stack too large");
    return gen_diamond_stack(params[0]);
  }
  if (family == "grid") {
    want(2, "grid ROWS COLS");
    if (params[0] < 1 || params[1] < 1) throw UsageError("grid needs positive rows and cols");
    if (params[0] * params[1] > kMaxVertices) throw UsageError("grid too large");
    return gen_grid(params[0], params[1]);
  }
  if (family == "random") {
    want(2, "random N M");
    if (params[0] < 1 || params[0] > kMaxVertices) throw UsageError("random needs 1 <= N <= 65536");
    if (params[1] > max_edges(params[0])) throw UsageError("random: M exceeds N(N-1)");
    return gen_random(params[0], params[1], seed);
  }
  throw UsageError("unknown family '" + family + "' (random, grid, diamond)");
}

CommandResult cmd_gen(const std::string& family, const std::vector<std::uint64_t>& params, std::uint64_t seed) {
  const Graph g = generate(family, params, seed);
  CommandResult r;
  std::vector<std::string> cmd{"gen", family};
  for (auto p : params) cmd.push_back(std::to_string(p));
  if (family == "random") cmd.push_back("--seed=" + std::to_string(seed));
  r.report = header(cmd);
  r.report["input_digest"] = input_digest(g);
  r.report["n"] = g.vertex_count();
  r.report["m"] = g.edge_count();
  r.text = serialize(g) + "\n";
  return r;
}

CommandResult cmd_reach(const Graph& g, Vertex s, Vertex t, const ReachOptions& options) {
  if (!g.has_vertex(s) || !g.has_vertex(t)) throw UsageError("s and t must be vertices 1.." + std::to_string(g.vertex_count()));
  CommandResult r;
  r.report = header({"reach", std::to_string(s), std::to_string(t)});
  r.report["input_digest"] = input_digest(g);
  BuildOptions build;
  build.prime_cap = options.prime_cap;
  const ConstructionResult result = build_weights_and_decide(g, s, t, build);
  const bool truth = bfs_reaches(g, s, t);
  r.report["s"] = s;
  r.report["t"] = t;
  r.report["reach"] = result.reach;
  r.report["bfs"] = truth;
  r.report["pass"] = result.reach == truth;
  r.report["construction"] = construction_to_json(result);
  std::ostringstream text;
  text << "reach(" << s << "," << t << ") = " << (result.reach ? "true" : "false") << "\n"
       << "rounds " << result.rounds << ", primes [" << join(result.primes) << "], B = " << result.weights.base()
       << "\n"
       << "steps " << result.trace.steps() << ", peak register bits " << result.trace.peak_register_bits() << "\n";
  if (result.reach != truth) {
    text << "MISMATCH: bfs says " << (truth ? "true" : "false") << "\n";
    r.exit_code = 1;
  }
  r.text = text.str();
  return r;
}

CommandResult cmd_verify(const Graph& g, const VerifyCommandOptions& options) {
  VerifyOptions vo;
  vo.max_enum_n = options.max_enum_n;
  vo.prime_cap = options.prime_cap;
  std::vector<std::string> cmd{"verify", "--max-enum-n=" + std::to_string(options.max_enum_n)};
  if (options.fault) {
    if (*options.fault == "weights") {
      vo.fault_weights = true;
    } else if (*options.fault == "census") {
      vo.fault_census = true;
    } else {
      throw UsageError("--fault takes weights or census");
    }
    cmd.push_back("--fault=" + *options.fault);
  }
  const VerifyResult result = verify_graph(g, vo);
  CommandResult r;
  r.report = header(cmd);
  r.report["input_digest"] = input_digest(g);
  r.report["n"] = g.vertex_count();
  r.report["m"] = g.edge_count();
  r.report["pass"] = result.pass();
  r.report["properties"] = properties_to_json(result.properties);
  r.report["construction"] = construction_to_json(result.construction);
  std::ostringstream text;
  for (const auto& p : result.properties) {
    text << std::left << std::setw(26) << p.name << (p.pass ? "pass" : "FAIL");
    if (!p.pass) text << "  " << p.detail.dump();
    text << "\n";
  }
  r.text = text.str();
  r.exit_code = result.pass() ? 0 : 1;
  return r;
}

Graph bench_graph(const std::string& family, std::size_t n, std::uint64_t seed) {
  if (family == "random") return gen_random(n, std::min<std::uint64_t>(3ULL * n, max_edges(n)), seed ^ n);
  if (family == "grid") {
    const auto rows = static_cast<std::size_t>(std::max(1.0, std::floor(std::sqrt(static_cast<double>(n)))));
    return gen_grid(rows, (n + rows - 1) / rows);
  }
  if (family == "diamond") return gen_diamond_stack(std::max<std::size_t>(1, (n - 1) / 3));
  throw UsageError("unknown family '" + family + "' (random, grid, diamond)");
}

CommandResult cmd_bench(const std::string& family, const std::vector<std::size_t>& sizes, std::uint64_t seed,
                        const BenchOptions& options) {
  std::vector<std::size_t> distinct = sizes;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 4 || distinct.size() != sizes.size()) throw UsageError("bench needs at least 4 distinct sizes");
  if (distinct.front() < 2) throw UsageError("bench sizes must be at least 2");
  if (distinct.back() > kMaxVertices) throw UsageError("bench size too large");

  std::vector<std::string> cmd{"bench", "--family=" + family, "--seed=" + std::to_string(seed)};
  for (auto n : sizes) cmd.push_back(std::to_string(n));
  CommandResult r;
  r.report = header(cmd);

  std::vector<ScalePoint> points;
  Json runs = Json::array();
  bool verdicts_ok = true;
  for (auto n : sizes) {
    const Graph g = bench_graph(family, n, seed);
    const Vertex t = static_cast<Vertex>(g.vertex_count());
    BuildOptions build;
    build.prime_cap = options.prime_cap;
    const ConstructionResult result = build_weights_and_decide(g, 1, t, build);
    const bool truth = bfs_reaches(g, 1, t);
    verdicts_ok = verdicts_ok && result.reach == truth;
    points.push_back({g.vertex_count(), result.trace.steps(), result.trace.peak_register_bits()});
    Json run;
    run["n"] = g.vertex_count();
    run["m"] = g.edge_count();
    run["input_digest"] = input_digest(g);
    run["reach"] = result.reach;
    run["bfs"] = truth;
    run["rounds"] = result.rounds;
    run["prime_cap"] = result.prime_cap;
    run["trace"] = trace_to_json(result.trace);
    runs.push_back(std::move(run));
  }
  const ScalingReport report = scaling_report(points);
  const bool pass = verdicts_ok && report.step_exponent <= 6.0 && !report.exponent_drift && report.ratio_non_increasing;
  r.report["pass"] = pass;
  r.report["verdicts_match_bfs"] = verdicts_ok;
  r.report["runs"] = std::move(runs);
  r.report["scaling"] = scaling_to_json(report);
  r.text = scaling_table(report);
  if (!verdicts_ok) r.text += "reach verdicts disagree with BFS\n";
  r.exit_code = pass ? 0 : 1;
  return r;
}

namespace {

Graph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

std::optional<std::uint64_t> env_prime_cap() {
  const char* v = std::getenv("ISOREACH_PRIME_CAP");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long cap = std::strtoull(v, &end, 10);
  if (*end != '\0' || cap < 3) throw UsageError("ISOREACH_PRIME_CAP must be an integer >= 3");
  return cap;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unambiguous small-space directed reachability"};
  app.require_subcommand(1);
  std::string json_out;
  app.add_option("--json", json_out, "Write the JSON report here ('-' for stdout)");

  std::string gen_family, gen_out;
  std::vector<std::uint64_t> gen_params;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate a graph: diamond L | grid R C | random N M");
  gen->add_option("family", gen_family)->required();
  gen->add_option("params", gen_params);
  gen->add_option("--seed", gen_seed);
  gen->add_option("-o,--out", gen_out, "Edge-list output file (default stdout)");

  std::string reach_file;
  Vertex reach_s = 0, reach_t = 0;
  auto* reach = app.add_subcommand("reach", "Decide s-t reachability");
  reach->add_option("file", reach_file)->required();
  reach->add_option("s", reach_s)->required();
  reach->add_option("t", reach_t)->required();

  std::string verify_file, verify_fault;
  std::size_t max_enum_n = 8;
  auto* verify = app.add_subcommand("verify", "Run the invariant suite on a graph");
  verify->add_option("file", verify_file)->required();
  verify->add_option("--max-enum-n", max_enum_n);
  verify->add_option("--fault", verify_fault, "Inject a fault: weights | census")->group("");

  std::string bench_family = "random";
  std::vector<std::size_t> bench_sizes;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench", "Scaling benchmark");
  bench->add_option("--family", bench_family);
  bench->add_option("--sizes", bench_sizes)->required()->delimiter(',');
  bench->add_option("--seed", bench_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CommandResult result;
  try {
    const auto cap = env_prime_cap();
    if (gen->parsed()) {
      result = cmd_gen(gen_family, gen_params, gen_seed);
      if (!gen_out.empty()) {
        std::ofstream f(gen_out, std::ios::binary);
        if (!f) throw UsageError("cannot write " + gen_out);
        f << result.text;
        result.text.clear();
      }
    } else if (reach->parsed()) {
      result = cmd_reach(load_graph(reach_file), reach_s, reach_t, {cap});
    } else if (verify->parsed()) {
      VerifyCommandOptions vo;
      vo.max_enum_n = max_enum_n;
      vo.prime_cap = cap;
      if (!verify_fault.empty()) vo.fault = verify_fault;
      result = cmd_verify(load_graph(verify_file), vo);
    } else {
      result = cmd_bench(bench_family, bench_sizes, bench_seed, {cap});
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const GraphError& e) {
    err << "graph error";
    if (e.line() != 0) err << " (line " << e.line() << ")";
    err << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (!json_out.empty()) {
    const std::string dump = result.report.dump(2) + "\n";
    if (json_out == "-") {
      out << dump;
    } else {
      std::ofstream f(json_out, std::ios::binary);
      if (!f) {
        err << "cannot write " << json_out << "\n";
        return 2;
      }
      f << dump;
    }
  }
  if (json_out != "-") out << result.text;
  return result.exit_code;
}

}  // namespace isoreach
