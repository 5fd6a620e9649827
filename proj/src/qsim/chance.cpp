// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "csbc/qsim/chance.hpp"

#include <algorithm>
#include <string>

#include "csbc/qsim/state.hpp"

namespace csbc::qsim {

std::size_t SampledChance::choose(std::string_view, std::span<const double> probs) {
  return sample_index(std::vector<double>(probs.begin(), probs.end()), stream_);
}

double SampledChance::uniform(std::string_view) { return stream_.uniform(); }

std::size_t ScriptedChance::choose(std::string_view label, std::span<const double> probs) {
  const std::size_t step = steps_.size();
  std::size_t pick = probs.size();
  if (step < prefix_.size()) {
    pick = prefix_[step];
    if (pick >= probs.size() || !(probs[pick] > kImpossible)) {
      throw Error("scripted choice is impossible at step " + std::to_string(step) + " (" +
                  std::string(label) + ")");
    }
  } else {
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] > kImpossible) {
        if (pick == probs.size()) {
          pick = i;
        } else {
          alternatives_.emplace_back(step, i);
        }
      }
    }
    if (pick == probs.size()) throw Error("no possible outcome at " + std::string(label));
  }
  steps_.push_back({std::string(label), pick, probs[pick]});
  return pick;
}

double ScriptedChance::uniform(std::string_view label) {
  throw NotEnumerable("continuous draw '" + std::string(label) + "' cannot be enumerated");
}

std::string PathInfo::describe() const {
  std::string out;
  for (const auto& s : steps) {
    if (!out.empty()) out += "; ";
    out += s.label + "=" + std::to_string(s.choice);
  }
  return out;
}

void enumerate_branches(const std::function<void(Chance&)>& body,
                        const std::function<void(const PathInfo&)>& leaf,
                        std::size_t max_branches) {
  std::vector<std::vector<std::size_t>> pending{{}};
  std::size_t visited = 0;
  while (!pending.empty()) {
    std::vector<std::size_t> prefix = std::move(pending.back());
    pending.pop_back();
    if (++visited > max_branches) {
      throw BranchLimitExceeded("branch enumeration exceeded " + std::to_string(max_branches) +
                                " paths");
    }
    ScriptedChance chance(prefix);
    body(chance);

    PathInfo info;
    info.steps = chance.steps();
    for (const auto& s : info.steps) info.probability *= s.probability;
    leaf(info);

    // Deepest step on top, lowest option first: lexicographic order.
    auto alts = chance.alternatives();
    std::sort(alts.begin(), alts.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first < y.first : x.second > y.second;
    });
    for (auto it = alts.begin(); it != alts.end(); ++it) {
      std::vector<std::size_t> next;
      next.reserve(it->first + 1);
      for (std::size_t i = 0; i < it->first; ++i) next.push_back(info.steps[i].choice);
      next.push_back(it->second);
      pending.push_back(std::move(next));
    }
  }
}

}  // namespace csbc::qsim
