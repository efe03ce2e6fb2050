#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathpower/tournament.hpp"

namespace pathpower {

struct OracleResult {
  uint32_t max_vertices = 0;
  std::vector<uint32_t> witness;
  uint64_t nodes_explored = 0;
};

// Exact longest k-th-power-of-a-path, by vertex count. Dispatches to a
// bitmask DP for k=2 (n <= 20) and a pruned DFS otherwise (n <= 24).
// early_exit_target > 0 stops the search as soon as a sequence of that many
// vertices is found.
OracleResult longest_power_path(const Tournament& t, uint32_t k, uint32_t early_exit_target = 0);

// Minimum of longest_power_path over all 2^{n(n-1)/2} labeled n-vertex
// tournaments. n <= 6 by default; n == 7 needs allow_large. A shard covers
// the tournament codes congruent to shard_index modulo shards.
uint32_t ell_exact(uint32_t n, uint32_t k, bool allow_large = false, uint32_t shards = 1,
                   uint32_t shard_index = 0);

struct AvoiderCertificate {
  Tournament tournament;
  uint32_t k = 0;
  uint32_t m = 0;  // the certificate asserts: no k-th power path on m vertices
  bool verified = false;
  uint64_t seed = 0;  // seed regenerating the tournament via Model::random
  uint64_t trials_used = 0;

  std::string serialize() const;  // tournament text + one JSON metadata line
  static AvoiderCertificate parse(const std::string& text);
};

// Oracle-verifies that t contains no k-th power path on m vertices.
AvoiderCertificate make_certificate(const Tournament& t, uint32_t k, uint32_t m, uint64_t seed = 0);

// Samples seeded random tournaments on 2^{k-1} vertices over the trial index
// range [trial_begin, trial_end) and returns the first verified avoider, or
// an unverified certificate if the budget runs out.
AvoiderCertificate search_avoider(uint32_t k, uint32_t m, uint64_t trial_begin,
                                  uint64_t trial_end, uint64_t seed);

struct UpperBoundResult {
  Tournament tournament;
  uint32_t bound = 0;  // claimed max vertex count of any k-th power path
  bool oracle_checked = false;
  uint32_t oracle_value = 0;
};

// Chains ceil(n / blocksize) copies of the certified block with forward
// composition, truncating the last copy; re-verified by the oracle when n is
// within cap.
UpperBoundResult certify_upper_bound(uint32_t k, uint32_t n, const AvoiderCertificate& block);

}  // namespace pathpower
