#pragma once

// The acceptance corpus: random digraphs over a grid of sizes and densities,
// every grid up to 8x8 and diamond stacks of 1 to 5 layers.

#include <cmath>
#include <string>
#include <vector>

#include "isoreach/graph.hpp"

namespace isoreach::testing {

struct CorpusGraph {
  std::string name;
  Graph graph;
};

inline std::vector<CorpusGraph> acceptance_corpus() {
  std::vector<CorpusGraph> out;
  const std::vector<std::size_t> sizes{4, 5, 6, 7, 8, 9, 10, 12, 14, 16, 20, 24, 28, 32, 40, 48, 56, 64};
  const std::vector<double> densities{0.05, 0.1, 0.2, 0.35, 0.5, 0.7, 0.9};
  for (std::size_t n : sizes) {
    const std::size_t copies = n <= 8 ? 2 : 1;
    for (std::size_t d = 0; d < densities.size(); ++d) {
      for (std::size_t c = 0; c < copies; ++c) {
        const auto max_m = n * (n - 1);
        const auto m = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(densities[d] * max_m)));
        const std::uint64_t seed = 7919 * n + 101 * d + c;
        out.push_back({"random n=" + std::to_string(n) + " m=" + std::to_string(m) + " seed=" + std::to_string(seed),
                       gen_random(n, m, seed)});
      }
    }
  }
  for (std::size_t r = 1; r <= 8; ++r) {
    for (std::size_t c = r; c <= 8; ++c) {
      out.push_back({"grid " + std::to_string(r) + "x" + std::to_string(c), gen_grid(r, c)});
    }
  }
  for (std::size_t l = 1; l <= 5; ++l) out.push_back({"diamond " + std::to_string(l), gen_diamond_stack(l)});
  return out;
}

}  // namespace isoreach::testing
