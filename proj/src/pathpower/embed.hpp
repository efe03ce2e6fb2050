#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathpower/ordering.hpp"
#include "pathpower/tournament.hpp"

namespace pathpower {

struct EmbedParams {
  uint32_t k = 2;
  uint64_t t = 0;        // window unit, default 2^{4k+4} * k
  uint64_t a_star = 0;   // working-set size, default 2^{2k}
  uint32_t blocks = 0;   // window block count, default 2k+1
  // Pass budget for the initial insertion local search: kUnlimitedPasses runs
  // to the fixpoint, 0 keeps the identity ordering.
  static constexpr uint64_t kUnlimitedPasses = ~0ull;
  uint64_t ls_pass_budget = kUnlimitedPasses;

  static EmbedParams defaults(uint32_t k);
  void validate() const;
  bool is_default() const;
};

struct KstResult {
  std::vector<uint32_t> subset;  // k vertices, in the order given by A
  std::vector<uint32_t> common;  // their common outneighbours in B, in B order
};

// Scans the C(2k+1, k) subsets of A in lexicographic order and returns the
// first whose common outneighbourhood in B reaches out_threshold.
KstResult kst_select(const Tournament& t, const std::vector<uint32_t>& a,
                     const std::vector<uint32_t>& b, uint32_t k, uint64_t out_threshold);

struct ClaimStepResult {
  std::vector<uint32_t> chunk;          // transitive k-chunk, path order
  uint64_t j = 0;                       // right end of the chosen interval
  std::vector<uint64_t> next_positions; // a_star common outneighbours in [j-t, j)
};

// One step of the embedding loop. i and the position sets are 0-based
// interval indices into ord.perm; A_star must lie in [max(0, i-t), i).
// The ordering is trusted to be insertion-locally-optimal; the degree
// assertion is what actually gets checked.
ClaimStepResult claim_step(const Tournament& t, const Ordering& ord, uint64_t i,
                           const std::vector<uint64_t>& a_star_positions,
                           const EmbedParams& p);

struct TraceStep {
  uint64_t s = 0;
  uint64_t i = 0;
  uint64_t j = 0;
  std::vector<uint64_t> a_positions;
  std::vector<uint32_t> chunk;
};

struct EmbedTrace {
  std::vector<TraceStep> steps;
  std::vector<uint32_t> final_chunk;
  std::string to_jsonl() const;
};

struct EmbedResult {
  Witness witness;  // block-transitive, verified before return
  EmbedTrace trace;
};

// The iterated claim-step embedding. Guaranteed mode requires default
// parameters and yields a witness of >= k*steps + 2k+1 vertices once
// n >= 2^{2k}; heuristic mode accepts any consistent parameters and returns
// the longest verified prefix (flagged partial) if a step fails.
EmbedResult embed_power_path(const Tournament& t, const EmbedParams& p, bool guaranteed,
                             uint32_t median_cap = 20);

// Square-path extraction from a bad-index-free locally optimal ordering;
// the witness has at least ceil(2n/3) vertices and verifies with k=2.
Witness embed_square_path(const Tournament& t, uint32_t median_cap = 20);

// Full locally optimal ordering as a k=1 witness on all n vertices.
Witness hamilton_path(const Tournament& t);

}  // namespace pathpower
