#pragma once

// Step and register accounting. "Space" here is the sum of bit widths of the
// variables the pipeline keeps live at a checkpoint, not process memory; the
// brute-force oracles and memo caches are outside the census.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isoreach/graph.hpp"

namespace isoreach {

struct RegisterUse {
  std::string_view name;
  std::uint64_t bits = 0;
};

struct RoundLog {
  std::uint32_t bound = 0;
  std::vector<std::uint64_t> primes_tried;
};

class RunTrace {
 public:
  std::uint64_t steps() const { return steps_; }
  std::uint64_t peak_register_bits() const { return peak_bits_; }
  void add_steps(std::uint64_t s) { steps_ += s; }
  void raise_peak(std::uint64_t bits);

  // Live register frames. checkpoint() feeds the current census to
  // record_checkpoint.
  void push_frame(std::span<const RegisterUse> regs);
  void pop_frame();
  std::uint64_t live_bits() const { return live_bits_; }
  std::vector<RegisterUse> live_census() const;
  void checkpoint();

  // Largest live_bits seen since the last begin_window().
  void begin_window() { window_peak_ = live_bits_; }
  std::uint64_t window_peak() const { return window_peak_; }

  std::vector<RoundLog> rounds;
  std::uint64_t restarts = 0;
  std::uint64_t prime_cap = 0;
  std::uint64_t checks = 0;
  std::uint64_t dist_invocations = 0;
  std::uint64_t guided_runs = 0;
  std::uint64_t max_stages_per_source = 0;
  std::uint64_t census_divergences = 0;  // stepping census != exact bounded census

 private:
  std::uint64_t steps_ = 0;
  std::uint64_t peak_bits_ = 0;
  std::uint64_t live_bits_ = 0;
  std::uint64_t window_peak_ = 0;
  std::vector<std::vector<RegisterUse>> frames_;
};

/// Raises the trace's peak to the census total if larger.
RunTrace& record_checkpoint(RunTrace& trace, std::span<const RegisterUse> census);

/// RAII frame; a null trace makes it a no-op.
class RegisterFrame {
 public:
  RegisterFrame(RunTrace* trace, std::initializer_list<RegisterUse> regs) : trace_(trace) {
    if (trace_) trace_->push_frame({regs.begin(), regs.size()});
  }
  ~RegisterFrame() {
    if (trace_) trace_->pop_frame();
  }
  RegisterFrame(const RegisterFrame&) = delete;
  RegisterFrame& operator=(const RegisterFrame&) = delete;

 private:
  RunTrace* trace_;
};

struct ScalePoint {
  std::size_t n = 0;
  std::uint64_t steps = 0;
  std::uint64_t peak_bits = 0;
};

struct ScalingRow {
  std::size_t n = 0;
  std::uint64_t steps = 0;
  std::uint64_t peak_bits = 0;
  std::uint64_t log2n_squared = 0;  // ceil(log2 n)^2
  double bits_ratio = 0;            // peak_bits / log2n_squared
  double local_exponent = 0;        // slope from the previous row; 0 for the first
  double savitch_steps = 0;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double step_exponent = 0;       // least squares of log steps on log n
  double lower_exponent = 0;      // same fit over the smaller half of the sizes
  double upper_exponent = 0;      // ... and over the larger half
  double savitch_exponent = 0;
  bool exponent_drift = false;    // upper_exponent > lower_exponent
  bool ratio_non_increasing = true;
  double max_bits_ratio = 0;
};

/// Requires at least four distinct n. Rows are sorted by n.
ScalingReport scaling_report(std::vector<ScalePoint> points);

/// Least-squares slope of y on x.
double fit_slope(std::span<const double> x, std::span<const double> y);

/// Worst-case step count of Savitch's midpoint recursion for one
/// reachability query on n vertices: S(1) = 1, S(l) = n * (S(ceil l/2) + S(floor l/2)),
/// evaluated at l = n - 1. Comparison column only; returned as a double
/// because it outgrows 64 bits quickly.
double savitch_steps(std::size_t n);

/// Runs that recursion on g without short-circuiting and counts its steps.
/// Only for checking savitch_steps on tiny graphs.
std::uint64_t savitch_execute(const Graph& g, Vertex s, Vertex t, bool* reached = nullptr);

}  // namespace isoreach
