#include "isoreach/numeric.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace isoreach {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (x % p == 0) return x == p;
  }
  std::uint64_t d = x - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a proven witness set below 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t y = pow_mod(a, d, x);
    if (y == 1 || y == x - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      y = mul_mod(y, y, x);
      if (y == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t p) {
  if (p < 2) return 2;
  std::uint64_t c = p + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::uint64_t next_prime(std::uint64_t p, std::uint64_t cap) {
  const std::uint64_t c = next_prime(p);
  if (c > cap) throw PrimePoolExhausted(cap);
  return c;
}

std::uint64_t mod_pow2(std::uint64_t exp, std::uint64_t p) {
  if (p % 2 == 0 || !is_prime(p)) {
    throw std::invalid_argument("mod_pow2: modulus " + std::to_string(p) + " is not an odd prime");
  }
  return pow_mod(2, exp, p);
}

std::uint32_t ceil_log2(std::uint64_t x) {
  if (x <= 1) return 0;
  return static_cast<std::uint32_t>(std::bit_width(x - 1));
}

std::uint64_t initial_prime_cap(std::size_t n) {
  return std::max<std::uint64_t>(64, static_cast<std::uint64_t>(n) * n);
}

std::uint64_t radix_for(std::size_t n, std::uint64_t prime_cap) {
  return static_cast<std::uint64_t>(n) * prime_cap + 1;
}

// ---- LimbWeight ----

LimbWeight::LimbWeight(std::span<const std::uint64_t> limbs, std::uint64_t base) : base_(base) {
  if (limbs.size() > kMaxLimbs) throw std::invalid_argument("LimbWeight: too many limbs");
  if (base < 2) throw std::invalid_argument("LimbWeight: base must be at least 2");
  for (std::size_t j = 0; j < limbs.size(); ++j) {
    if (limbs[j] >= base) {
      throw std::invalid_argument("LimbWeight: limb " + std::to_string(limbs[j]) + " >= base " +
                                  std::to_string(base));
    }
    limbs_[j] = limbs[j];
  }
  size_ = static_cast<std::uint8_t>(limbs.size());
}

LimbWeight LimbWeight::zero(std::size_t q, std::uint64_t base) {
  std::array<std::uint64_t, kMaxLimbs> z{};
  if (q > kMaxLimbs) throw std::invalid_argument("LimbWeight: too many limbs");
  return LimbWeight(std::span<const std::uint64_t>(z.data(), q), base);
}

bool LimbWeight::is_zero() const {
  if (infinite_) return false;
  return std::all_of(limbs_.begin(), limbs_.begin() + size_, [](std::uint64_t l) { return l == 0; });
}

LimbWeight LimbWeight::prefix(std::size_t j) const {
  if (infinite_) return *this;
  if (j > size_) throw std::invalid_argument("LimbWeight::prefix beyond length");
  LimbWeight out = *this;
  for (std::size_t k = j; k < size_; ++k) out.limbs_[k] = 0;
  out.size_ = static_cast<std::uint8_t>(j);
  return out;
}

LimbWeight LimbWeight::extended(std::uint64_t limb) const {
  if (infinite_) throw std::invalid_argument("LimbWeight::extended on infinity");
  if (size_ == kMaxLimbs) throw std::invalid_argument("LimbWeight: too many limbs");
  if (limb >= base_) throw std::invalid_argument("LimbWeight: limb >= base");
  LimbWeight out = *this;
  out.limbs_[size_] = limb;
  out.size_ = static_cast<std::uint8_t>(size_ + 1);
  return out;
}

namespace detail {
void throw_shape_mismatch(const LimbWeight& a, const LimbWeight& b) {
  throw std::invalid_argument("limb_compare: shape mismatch (" + std::to_string(a.size()) + " limbs base " +
                              std::to_string(a.base()) + " vs " + std::to_string(b.size()) + " limbs base " +
                              std::to_string(b.base()) + ")");
}
}  // namespace detail

LimbWeight limb_add(const LimbWeight& a, const LimbWeight& b) {
  if (a.infinite_ || b.infinite_) throw std::invalid_argument("limb_add: arithmetic on infinity");
  if (a.size_ != b.size_ || a.base_ != b.base_) throw std::invalid_argument("limb_add: shape mismatch");
  LimbWeight out = a;
  for (std::size_t j = 0; j < a.size_; ++j) {
    const std::uint64_t s = a.limbs_[j] + b.limbs_[j];
    if (s >= a.base_) {
      throw CarryOverflow("limb_add: limb " + std::to_string(j) + " sum " + std::to_string(s) +
                          " reached base " + std::to_string(a.base_));
    }
    out.limbs_[j] = s;
  }
  return out;
}

std::string to_string(const LimbWeight& w) {
  if (w.is_infinite()) return "inf";
  std::ostringstream out;
  out << '[';
  for (std::size_t j = 0; j < w.size(); ++j) out << (j ? "," : "") << w[j];
  out << ']';
  return out.str();
}

// ---- CensusSum ----

void CensusSum::add(const LimbWeight& w) {
  if (w.is_infinite()) throw std::invalid_argument("CensusSum: adding infinity");
  if (w.size() != limbs_.size()) throw std::invalid_argument("CensusSum: shape mismatch");
  for (std::size_t j = 0; j < limbs_.size(); ++j) limbs_[j] += w[j];
}

bool CensusSum::overshoots(const CensusSum& bound) const {
  for (std::size_t j = 0; j < limbs_.size() && j < bound.limbs_.size(); ++j) {
    if (limbs_[j] > bound.limbs_[j]) return true;
  }
  return false;
}

std::string to_string(const CensusSum& s) {
  std::ostringstream out;
  out << '[';
  for (std::size_t j = 0; j < s.limbs().size(); ++j) out << (j ? "," : "") << s.limbs()[j];
  out << ']';
  return out.str();
}

// ---- WeightAssignment ----

WeightAssignment::WeightAssignment(std::size_t n, std::size_t m, std::uint64_t base)
    : n_(n), base_(base), weights_(m, LimbWeight::zero(0, base)) {}

WeightAssignment WeightAssignment::custom(std::size_t n, std::uint64_t base,
                                          const std::vector<std::vector<std::uint64_t>>& limbs) {
  WeightAssignment w(n, limbs.size(), base);
  w.custom_ = true;
  w.rounds_ = limbs.empty() ? 0 : limbs.front().size();
  for (std::size_t e = 0; e < limbs.size(); ++e) {
    if (limbs[e].size() != w.rounds_) throw std::invalid_argument("custom weights: ragged limb vectors");
    w.weights_[e] = LimbWeight(limbs[e], base);
    if (w.weights_[e].is_zero()) throw std::invalid_argument("custom weights: edge weights must be positive");
  }
  return w;
}

WeightAssignment WeightAssignment::prefix(std::size_t j) const {
  if (j > rounds_) throw std::invalid_argument("WeightAssignment::prefix beyond rounds");
  WeightAssignment out = *this;
  out.rounds_ = j;
  if (!custom_) out.primes_.resize(j);
  for (auto& w : out.weights_) w = w.prefix(j);
  return out;
}

WeightAssignment compose_round_weight(const WeightAssignment& prev, std::uint64_t p, const Graph& g) {
  if (p == 2) throw std::invalid_argument("compose_round_weight: p = 2 gives zero-weight edges");
  if (g.edge_count() != prev.edge_count()) throw std::invalid_argument("compose_round_weight: graph mismatch");
  if (prev.custom_) throw std::invalid_argument("compose_round_weight: cannot extend custom weights");
  if (p >= prev.base_) throw std::invalid_argument("compose_round_weight: prime not below base");
  WeightAssignment next = prev;
  for (EdgeId e = 0; e < g.edge_count(); ++e) next.weights_[e] = prev.weights_[e].extended(mod_pow2(e, p));
  next.primes_.push_back(p);
  next.rounds_ = prev.rounds_ + 1;
  return next;
}

}  // namespace isoreach
