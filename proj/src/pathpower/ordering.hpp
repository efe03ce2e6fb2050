#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pathpower/tournament.hpp"

namespace pathpower {

// A permutation of the vertex set together with its forward-edge count.
// Positions reported to callers (bad indices, rotation index, move targets)
// are 1-based; the perm vector itself is 0-indexed.
struct Ordering {
  std::vector<uint32_t> perm;
  uint64_t forward_count = 0;
};

Ordering make_ordering(const Tournament& t, std::vector<uint32_t> perm);
Ordering identity_ordering(const Tournament& t);

struct OrderingReport {
  bool is_adjacent_forward = true;
  // Single-vertex reinsertion moves that would strictly increase the
  // forward-edge count: (vertex, 1-based target position).
  std::vector<std::pair<uint32_t, uint32_t>> interval_move_violations;
  // Ascending 1-based positions i with edge(x_i -> x_{i-2}) and
  // edge(x_{i+2} -> x_i) or edge(x_{i+2} -> x_{i-1}).
  std::vector<uint32_t> bad_indices;
};

// Globally optimal ordering by subset DP, ties broken by smallest vertex id.
Ordering exact_median(const Tournament& t, uint32_t cap = 20);

// Deterministic first-improvement local search over single-vertex
// reinsertions: sweep positions in order, apply the first strictly improving
// move, repeat until a clean pass. max_passes == 0 means no pass limit.
Ordering insertion_local_search(const Tournament& t, Ordering init, uint64_t max_passes = 0);

OrderingReport check_properties(const Tournament& t, const Ordering& ord);

// Cyclic shift of the directed 3-cycle at positions i-2, i-1, i (1-based).
// Variant 1 yields ...x_{i-1}, x_i, x_{i-2}...; variant 2 yields
// ...x_i, x_{i-2}, x_{i-1}.... Preserves the forward-edge count exactly.
Ordering rotate_triple(const Tournament& t, const Ordering& ord, uint32_t i, int variant);

// Rotates away bad indices, largest first. Whenever the input falls short of
// a true median ordering, some rotation exposes a backward adjacent pair and
// local search strictly raises the forward count, so the procedure
// terminates. Requires an insertion-locally-optimal input; the result has no
// bad indices, no smaller forward count, and additionally every window with
// edge(x_i -> x_{i-2}) has all three vertices beating x_{i+1}.
Ordering eliminate_bad_indices(const Tournament& t, Ordering ord);

}  // namespace pathpower
