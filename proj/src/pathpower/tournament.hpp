#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathpower/errors.hpp"

namespace pathpower {

enum class Model { random, transitive, c3chain, implicit_random };

enum class WitnessMode { plain, block_transitive };

// An n-vertex tournament: exactly one of u->v, v->u for every pair u != v.
// Explicit storage is a bit-packed strict upper triangle (bit set iff
// edge(i->j) for i < j). Implicit storage keeps only (n, seed) and answers
// queries through a keyed pairwise hash; materializing it preserves every
// orientation.
class Tournament {
public:
  // Empty placeholder (n == 0); every generated tournament has n >= 1.
  Tournament() = default;

  static Tournament generate(Model model, uint32_t n, uint64_t seed);
  static Tournament parse(const std::string& text);
  static Tournament compose_forward(const Tournament& t1, const Tournament& t2);

  uint32_t order() const { return n_; }
  bool is_explicit() const { return !implicit_; }
  uint64_t seed() const { return seed_; }

  // true iff the edge u->v is present. u == v or out-of-range is an error.
  bool edge(uint32_t u, uint32_t v) const;

  Tournament materialize() const;

  // Induced subtournament on vertices 0..r-1.
  Tournament prefix(uint32_t r) const;

  std::string serialize() const;

  bool same_orientations(const Tournament& other) const;

private:
  uint64_t pair_index(uint32_t i, uint32_t j) const;  // requires i < j
  bool upper_bit(uint32_t i, uint32_t j) const;       // edge(i->j) for i < j
  void set_upper_bit(uint64_t idx, bool value);

  uint32_t n_ = 0;
  bool implicit_ = false;
  uint64_t seed_ = 0;
  std::vector<uint64_t> bits_;
};

struct Witness {
  uint32_t k = 1;
  WitnessMode mode = WitnessMode::plain;
  std::vector<uint32_t> vertices;
  bool partial = false;

  std::string to_json() const;
  static Witness from_json(const std::string& line);
};

// true iff w is a valid k-th-power-of-a-path witness for the given mode.
// Duplicates make the result false; out-of-range vertices are an error.
bool verify_power_path(const Tournament& t, const std::vector<uint32_t>& w, uint32_t k,
                       WitnessMode mode);

// Number of position pairs p < q with edge(perm[p] -> perm[q]).
uint64_t forward_edges(const Tournament& t, const std::vector<uint32_t>& perm);

// Repeatedly takes a vertex of maximum outdegree within the current set
// (smallest id on ties) and recurses on its outneighbourhood. The result is a
// transitive sequence of length >= floor(log2 |S|) + 1.
std::vector<uint32_t> greedy_transitive(const Tournament& t, const std::vector<uint32_t>& s);

}  // namespace pathpower
