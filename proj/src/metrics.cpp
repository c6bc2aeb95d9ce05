#include "isoreach/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "isoreach/numeric.hpp"

namespace isoreach {

void RunTrace::raise_peak(std::uint64_t bits) { peak_bits_ = std::max(peak_bits_, bits); }

void RunTrace::push_frame(std::span<const RegisterUse> regs) {
  frames_.emplace_back(regs.begin(), regs.end());
  for (const auto& r : regs) live_bits_ += r.bits;
  window_peak_ = std::max(window_peak_, live_bits_);
}

void RunTrace::pop_frame() {
  for (const auto& r : frames_.back()) live_bits_ -= r.bits;
  frames_.pop_back();
}

std::vector<RegisterUse> RunTrace::live_census() const {
  std::vector<RegisterUse> census;
  for (const auto& f : frames_) census.insert(census.end(), f.begin(), f.end());
  return census;
}

void RunTrace::checkpoint() {
  // live_bits_ is the census total; avoid materializing it on the hot path.
  peak_bits_ = std::max(peak_bits_, live_bits_);
  window_peak_ = std::max(window_peak_, live_bits_);
}

RunTrace& record_checkpoint(RunTrace& trace, std::span<const RegisterUse> census) {
  std::uint64_t total = 0;
  for (const auto& r : census) total += r.bits;
  trace.raise_peak(total);
  return trace;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = k * sxx - sx * sx;
  if (denom == 0) throw std::invalid_argument("fit_slope: degenerate x values");
  return (k * sxy - sx * sy) / denom;
}

ScalingReport scaling_report(std::vector<ScalePoint> points) {
  std::set<std::size_t> distinct;
  for (const auto& p : points) distinct.insert(p.n);
  if (distinct.size() < 4) throw std::invalid_argument("scaling_report: need at least 4 distinct sizes");
  if (distinct.size() != points.size()) throw std::invalid_argument("scaling_report: duplicate sizes");
  for (const auto& p : points) {
    if (p.n < 2 || p.steps == 0) throw std::invalid_argument("scaling_report: sizes must be >= 2 with nonzero steps");
  }
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.n < b.n; });

  ScalingReport report;
  std::vector<double> logn, logsteps, logsav;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    ScalingRow row;
    row.n = p.n;
    row.steps = p.steps;
    row.peak_bits = p.peak_bits;
    const std::uint64_t lg = ceil_log2(p.n);
    row.log2n_squared = lg * lg;
    row.bits_ratio = static_cast<double>(p.peak_bits) / static_cast<double>(row.log2n_squared);
    row.savitch_steps = savitch_steps(p.n);
    logn.push_back(std::log(static_cast<double>(p.n)));
    logsteps.push_back(std::log(static_cast<double>(p.steps)));
    logsav.push_back(std::log(row.savitch_steps));
    if (i > 0) row.local_exponent = (logsteps[i] - logsteps[i - 1]) / (logn[i] - logn[i - 1]);
    if (i > 0 && row.bits_ratio > report.rows.back().bits_ratio) report.ratio_non_increasing = false;
    report.max_bits_ratio = std::max(report.max_bits_ratio, row.bits_ratio);
    report.rows.push_back(row);
  }
  report.step_exponent = fit_slope(logn, logsteps);
  report.savitch_exponent = fit_slope(logn, logsav);

  // Halves overlap in the middle point when the count is odd.
  const std::size_t k = points.size();
  const std::size_t half = (k + 1) / 2;
  std::span<const double> ln(logn), ls(logsteps);
  report.lower_exponent = fit_slope(ln.first(half), ls.first(half));
  report.upper_exponent = fit_slope(ln.last(half), ls.last(half));
  report.exponent_drift = report.upper_exponent > report.lower_exponent;
  return report;
}

namespace {

double savitch_len(std::size_t n, std::size_t len, std::vector<double>& memo) {
  if (len <= 1) return 1;
  if (memo[len] > 0) return memo[len];
  const double s = static_cast<double>(n) * (savitch_len(n, (len + 1) / 2, memo) + savitch_len(n, len / 2, memo));
  memo[len] = s;
  return s;
}

bool savitch_rec(const Graph& g, Vertex u, Vertex v, std::size_t len, std::uint64_t& steps) {
  if (len <= 1) {
    ++steps;
    if (u == v) return true;
    if (len == 0) return false;
    for (EdgeId e : g.out_edges(u))
      if (g.edge(e).head == v) return true;
    return false;
  }
  bool found = false;
  for (Vertex mid = 1; mid <= g.vertex_count(); ++mid) {
    const bool a = savitch_rec(g, u, mid, (len + 1) / 2, steps);
    const bool b = savitch_rec(g, mid, v, len / 2, steps);
    found = found || (a && b);
  }
  return found;
}

}  // namespace

double savitch_steps(std::size_t n) {
  const std::size_t len = n > 1 ? n - 1 : 1;
  std::vector<double> memo(len + 1, 0);
  return savitch_len(n, len, memo);
}

std::uint64_t savitch_execute(const Graph& g, Vertex s, Vertex t, bool* reached) {
  const std::size_t n = g.vertex_count();
  std::uint64_t steps = 0;
  const bool r = savitch_rec(g, s, t, n > 1 ? n - 1 : 1, steps);
  if (reached) *reached = r;
  return steps;
}

}  // namespace isoreach
