#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "isoreach/graph.hpp"

namespace isoreach {

/// Upper bound on rounds: ceil(log2 n) for n <= 65536.
inline constexpr std::size_t kMaxLimbs = 16;

/// A limb sum reached the base. Means B was sized too small for the paths
/// being summed; never expected in a correct run.
class CarryOverflow : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// next_prime ran past the run's prime cap.
class PrimePoolExhausted : public std::runtime_error {
 public:
  explicit PrimePoolExhausted(std::uint64_t cap)
      : std::runtime_error("prime pool exhausted at cap " + std::to_string(cap)), cap_(cap) {}
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
};

/// Exact for the whole 64-bit range (deterministic Miller-Rabin).
bool is_prime(std::uint64_t x);

/// Smallest prime strictly greater than p.
std::uint64_t next_prime(std::uint64_t p);

/// As above but throws PrimePoolExhausted when the answer exceeds cap.
std::uint64_t next_prime(std::uint64_t p, std::uint64_t cap);

/// 2^exp mod p for an odd prime p. Result lies in [1, p-1].
std::uint64_t mod_pow2(std::uint64_t exp, std::uint64_t p);

/// ceil(log2 x) for x >= 1; the bits needed for values in [0, x).
std::uint32_t ceil_log2(std::uint64_t x);

/// Initial prime cap max(64, n^2).
std::uint64_t initial_prime_cap(std::size_t n);

/// Radix n * cap + 1: no path of at most n-1 edges can carry into the next
/// limb when every residue is below cap.
std::uint64_t radix_for(std::size_t n, std::uint64_t prime_cap);

/// Fixed-length vector of base-B digits, most significant first, or the
/// infinity sentinel. Ordering is lexicographic, which equals the ordering of
/// sum(limb_j * B^(q-j)) since every limb is below B.
class LimbWeight {
 public:
  LimbWeight() = default;
  LimbWeight(std::span<const std::uint64_t> limbs, std::uint64_t base);

  static LimbWeight zero(std::size_t q, std::uint64_t base);
  static LimbWeight infinity() {
    LimbWeight w;
    w.infinite_ = true;
    return w;
  }

  bool is_infinite() const { return infinite_; }
  bool is_zero() const;
  std::size_t size() const { return size_; }
  std::uint64_t base() const { return base_; }
  std::uint64_t operator[](std::size_t j) const { return limbs_[j]; }
  std::span<const std::uint64_t> limbs() const { return {limbs_.data(), size_}; }

  /// First j limbs.
  LimbWeight prefix(std::size_t j) const;
  /// Copy with one more least-significant limb.
  LimbWeight extended(std::uint64_t limb) const;

  friend std::strong_ordering limb_compare(const LimbWeight& a, const LimbWeight& b);
  friend LimbWeight limb_add(const LimbWeight& a, const LimbWeight& b);

  friend std::strong_ordering operator<=>(const LimbWeight& a, const LimbWeight& b) {
    return limb_compare(a, b);
  }
  friend bool operator==(const LimbWeight& a, const LimbWeight& b) {
    return limb_compare(a, b) == std::strong_ordering::equal;
  }

 private:
  std::array<std::uint64_t, kMaxLimbs> limbs_{};
  std::uint8_t size_ = 0;
  bool infinite_ = false;
  std::uint64_t base_ = 0;
};

namespace detail {
[[noreturn]] void throw_shape_mismatch(const LimbWeight& a, const LimbWeight& b);
}

/// Throws std::invalid_argument on a length or base mismatch between two
/// finite weights.
inline std::strong_ordering limb_compare(const LimbWeight& a, const LimbWeight& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (a.size_ != b.size_ || a.base_ != b.base_) detail::throw_shape_mismatch(a, b);
  for (std::size_t j = 0; j < a.size_; ++j) {
    if (a.limbs_[j] != b.limbs_[j]) return a.limbs_[j] <=> b.limbs_[j];
  }
  return std::strong_ordering::equal;
}

/// Per-limb sum without carries. Throws CarryOverflow when a limb reaches the
/// base and std::invalid_argument on infinity or mismatched shapes.
LimbWeight limb_add(const LimbWeight& a, const LimbWeight& b);

/// "[1,2]" or "inf".
std::string to_string(const LimbWeight& w);

/// Running sum of ball distances. Same limb layout as LimbWeight but limbs are
/// unbounded (up to n * (B-1)), so it is not itself a weight. Two sums of
/// weights that dominate term-by-term are equal as vectors iff every term is.
class CensusSum {
 public:
  CensusSum() = default;
  explicit CensusSum(std::size_t q) : limbs_(q, 0) {}
  explicit CensusSum(std::vector<std::uint64_t> limbs) : limbs_(std::move(limbs)) {}

  void add(const LimbWeight& w);
  CensusSum plus(const LimbWeight& w) const {
    CensusSum out = *this;
    out.add(w);
    return out;
  }

  /// True when some limb is already larger than bound's: since limbs only
  /// grow, this sum can never again equal bound.
  bool overshoots(const CensusSum& bound) const;

  const std::vector<std::uint64_t>& limbs() const { return limbs_; }
  friend bool operator==(const CensusSum&, const CensusSum&) = default;
  friend auto operator<=>(const CensusSum&, const CensusSum&) = default;

 private:
  std::vector<std::uint64_t> limbs_;
};

std::string to_string(const CensusSum& s);

/// Per-edge limb weights after some number of rounds. For assignments built
/// by compose_round_weight, limb j of edge id equals 2^id mod primes()[j].
class WeightAssignment {
 public:
  WeightAssignment() = default;
  /// Round-0 assignment: every edge has the empty (zero) weight.
  WeightAssignment(std::size_t n, std::size_t m, std::uint64_t base);

  /// Arbitrary positive limbs, for fault injection and hand-built fixtures.
  /// primes() is empty for such assignments.
  static WeightAssignment custom(std::size_t n, std::uint64_t base,
                                 const std::vector<std::vector<std::uint64_t>>& limbs);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return weights_.size(); }
  std::uint64_t base() const { return base_; }
  std::size_t rounds() const { return rounds_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  bool is_custom() const { return custom_; }

  const LimbWeight& weight(EdgeId e) const { return weights_[e]; }
  LimbWeight zero() const { return LimbWeight::zero(rounds_, base_); }

  /// The assignment after the first j rounds.
  WeightAssignment prefix(std::size_t j) const;

  friend WeightAssignment compose_round_weight(const WeightAssignment& prev, std::uint64_t p,
                                               const Graph& g);
  friend bool operator==(const WeightAssignment& a, const WeightAssignment& b) {
    return a.n_ == b.n_ && a.base_ == b.base_ && a.rounds_ == b.rounds_ && a.primes_ == b.primes_ &&
           a.weights_ == b.weights_;
  }

 private:
  std::size_t n_ = 0;
  std::uint64_t base_ = 0;
  std::size_t rounds_ = 0;
  bool custom_ = false;
  std::vector<std::uint64_t> primes_;
  std::vector<LimbWeight> weights_;
};

/// Appends limb 2^id mod p to every edge (W_j = B * W_{j-1} + (w0 mod p)).
/// Rejects p = 2 and non-primes.
WeightAssignment compose_round_weight(const WeightAssignment& prev, std::uint64_t p, const Graph& g);

}  // namespace isoreach
