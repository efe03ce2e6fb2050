#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "pathpower/tournament.hpp"

namespace testutil {

// Builds an explicit tournament from an edge predicate on i < j
// (true iff edge(i->j)) by going through the text format.
inline pathpower::Tournament build(uint32_t n,
                                   const std::function<bool(uint32_t, uint32_t)>& fwd) {
  std::string text = "PTv1 " + std::to_string(n) + "\n";
  for (uint32_t i = 0; i + 1 < n; ++i) {
    for (uint32_t j = i + 1; j < n; ++j) text += fwd(i, j) ? '1' : '0';
    text += '\n';
  }
  return pathpower::Tournament::parse(text);
}

}  // namespace testutil
