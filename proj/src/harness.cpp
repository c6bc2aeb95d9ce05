#include "isoreach/harness.hpp"

namespace isoreach::detail {

std::size_t DfsChooser::choose(const ChoicePoint& point) {
  if (script_.size() >= depth_cap_) {
    throw DepthCapExceeded("choice depth exceeded cap " + std::to_string(depth_cap_));
  }
  if (point.arity == 0) throw PathRejected{"no branch available"};
  std::size_t branch = 0;
  if (script_.size() < prefix_.size()) branch = prefix_[script_.size()];
  if (branch >= point.arity) throw std::logic_error("enumeration prefix out of range: procedure is not deterministic");
  script_.push_back({point, branch});
  return branch;
}

void DfsChooser::reject(std::string_view reason) { throw PathRejected{std::string(reason)}; }

std::size_t GuidedChooser::choose(const ChoicePoint& point) {
  if (point.arity == 0) throw GuidedCheckFailure("guided path reached a choice with no branches");
  const std::size_t branch = guide_.answer(point);
  if (branch >= point.arity) {
    throw GuidedCheckFailure("guide answered branch " + std::to_string(branch) + " of " +
                             std::to_string(point.arity));
  }
  script_.push_back({point, branch});
  return branch;
}

void GuidedChooser::reject(std::string_view reason) {
  throw GuidedCheckFailure("guided computation rejected after " + std::to_string(script_.size()) +
                           " choices: " + std::string(reason));
}

std::size_t ReplayChooser::choose(const ChoicePoint& point) {
  if (pos_ >= script_.size()) throw ReplayDivergence("procedure made more choices than the script holds");
  const ChoiceRecord& rec = script_[pos_++];
  if (!(rec.point == point)) throw ReplayDivergence("choice point " + std::to_string(pos_) + " differs");
  return rec.branch;
}

void ReplayChooser::reject(std::string_view reason) {
  throw ReplayDivergence("replayed path rejected: " + std::string(reason));
}

std::optional<std::vector<std::size_t>> next_prefix(const ChoiceScript& script) {
  for (std::size_t i = script.size(); i-- > 0;) {
    if (script[i].branch + 1 < script[i].point.arity) {
      std::vector<std::size_t> prefix;
      prefix.reserve(i + 1);
      for (std::size_t j = 0; j < i; ++j) prefix.push_back(script[j].branch);
      prefix.push_back(script[i].branch + 1);
      return prefix;
    }
  }
  return std::nullopt;
}

}  // namespace isoreach::detail
