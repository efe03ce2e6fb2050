#include "pathpower/embed.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include <json.hpp>

namespace pathpower {

EmbedParams EmbedParams::defaults(uint32_t k) {
  if (k < 1) fail(Status::invalid_parameter, "EmbedParams: k must be at least 1");
  if (k > 12) fail(Status::invalid_parameter, "EmbedParams: default constants overflow for k > 12");
  EmbedParams p;
  p.k = k;
  p.t = (1ull << (4 * k + 4)) * k;
  p.a_star = 1ull << (2 * k);
  p.blocks = 2 * k + 1;
  return p;
}

void EmbedParams::validate() const {
  if (k < 1) fail(Status::invalid_parameter, "EmbedParams: k must be at least 1");
  if (blocks < 1) fail(Status::invalid_parameter, "EmbedParams: blocks must be at least 1");
  if (t < 1 || a_star < 1 || a_star > t)
    fail(Status::invalid_parameter, "EmbedParams: need 1 <= a_star <= t");
}

bool EmbedParams::is_default() const {
  EmbedParams d = defaults(k);
  return t == d.t && a_star == d.a_star && blocks == d.blocks &&
         ls_pass_budget == kUnlimitedPasses;
}

KstResult kst_select(const Tournament& t, const std::vector<uint32_t>& a,
                     const std::vector<uint32_t>& b, uint32_t k, uint64_t out_threshold) {
  if (k < 1) fail(Status::invalid_parameter, "kst_select: k must be at least 1");
  if (a.size() != 2 * static_cast<size_t>(k) + 1)
    fail(Status::invalid_parameter, "kst_select: |A| must be 2k+1");
  {
    std::unordered_set<uint32_t> seen(a.begin(), a.end());
    if (seen.size() != a.size()) fail(Status::invalid_parameter, "kst_select: A has duplicates");
    for (uint32_t v : b)
      if (seen.count(v)) fail(Status::invalid_parameter, "kst_select: A and B intersect");
  }

  size_t m = b.size();
  size_t words = (m + 63) / 64;
  std::vector<std::vector<uint64_t>> rows(a.size(), std::vector<uint64_t>(words, 0));
  for (size_t ai = 0; ai < a.size(); ++ai) {
    size_t deg = 0;
    for (size_t bi = 0; bi < m; ++bi) {
      if (t.edge(a[ai], b[bi])) {
        rows[ai][bi >> 6] |= 1ull << (bi & 63);
        ++deg;
      }
    }
    // outdeg >= (1 - 1/(2k+1)) |B| / 2 = k|B|/(2k+1), checked exactly.
    if (deg * (2 * static_cast<uint64_t>(k) + 1) < static_cast<uint64_t>(k) * m)
      fail(Status::precondition, "kst_select: vertex " + std::to_string(a[ai]) +
                                     " has too few outneighbours in B");
  }

  // Lexicographic k-subsets of A.
  std::vector<size_t> comb(k);
  for (uint32_t i = 0; i < k; ++i) comb[i] = i;
  std::vector<uint64_t> common(words);
  while (true) {
    common = rows[comb[0]];
    for (uint32_t i = 1; i < k; ++i)
      for (size_t w = 0; w < words; ++w) common[w] &= rows[comb[i]][w];
    uint64_t count = 0;
    for (uint64_t w : common) count += std::popcount(w);
    if (count >= out_threshold) {
      KstResult res;
      for (size_t idx : comb) res.subset.push_back(a[idx]);
      for (size_t bi = 0; bi < m; ++bi)
        if ((common[bi >> 6] >> (bi & 63)) & 1ull) res.common.push_back(b[bi]);
      return res;
    }
    // advance combination
    size_t i = k;
    while (i-- > 0) {
      if (comb[i] != i + a.size() - k) {
        ++comb[i];
        for (size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        break;
      }
      if (i == 0)
        fail(Status::not_found,
             "kst_select: no k-subset reaches " + std::to_string(out_threshold) +
                 " common outneighbours");
    }
  }
}

ClaimStepResult claim_step(const Tournament& t, const Ordering& ord, uint64_t i,
                           const std::vector<uint64_t>& a_star_positions,
                           const EmbedParams& p) {
  p.validate();
  uint64_t n = t.order();
  uint64_t window = static_cast<uint64_t>(p.blocks) * p.t;
  if (i + window > n)
    fail(Status::precondition, "claim_step: i=" + std::to_string(i) + " exceeds n - blocks*t = " +
                                   std::to_string(n >= window ? n - window : 0));
  if (a_star_positions.size() != p.a_star)
    fail(Status::precondition, "claim_step: |A_star| must equal a_star");
  uint64_t lo = i >= p.t ? i - p.t : 0;
  for (uint64_t pos : a_star_positions)
    if (pos < lo || pos >= i)
      fail(Status::precondition, "claim_step: A_star position " + std::to_string(pos) +
                                     " outside [" + std::to_string(lo) + ", " +
                                     std::to_string(i) + ")");

  std::vector<uint32_t> a_star_vertices;
  a_star_vertices.reserve(a_star_positions.size());
  for (uint64_t pos : a_star_positions) a_star_vertices.push_back(ord.perm[pos]);

  std::vector<uint32_t> transitive = greedy_transitive(t, a_star_vertices);
  if (transitive.size() < 2 * static_cast<size_t>(p.k) + 1)
    fail(Status::precondition, "claim_step: no transitive subtournament of size 2k+1 in A_star");
  std::vector<uint32_t> a(transitive.begin(), transitive.begin() + 2 * p.k + 1);

  std::vector<uint32_t> b;
  b.reserve(window);
  for (uint64_t pos = i; pos < i + window; ++pos) b.push_back(ord.perm[pos]);

  // Local optimality forces >= k*t outneighbours in the window: otherwise
  // moving the vertex to the end of the interval gains forward edges.
  for (uint32_t v : a) {
    uint64_t deg = 0;
    for (uint32_t u : b)
      if (t.edge(v, u)) ++deg;
    if (deg < static_cast<uint64_t>(p.k) * p.t)
      fail(Status::not_locally_optimal,
           "claim_step: vertex " + std::to_string(v) + " has only " + std::to_string(deg) +
               " outneighbours in the window (needs " + std::to_string(p.k * p.t) + ")");
  }

  KstResult kst = kst_select(t, a, b, p.k, static_cast<uint64_t>(p.blocks) * p.a_star);

  // Positions of the common outneighbours; kst.common preserves B order.
  std::vector<uint64_t> common_positions;
  common_positions.reserve(kst.common.size());
  {
    size_t ci = 0;
    for (uint64_t bi = 0; bi < b.size() && ci < kst.common.size(); ++bi)
      if (b[bi] == kst.common[ci]) {
        common_positions.push_back(i + bi);
        ++ci;
      }
  }

  // Leftmost block of size t holding at least a_star of them (pigeonhole:
  // the threshold blocks*a_star guarantees one exists).
  for (uint32_t blk = 0; blk < p.blocks; ++blk) {
    uint64_t blk_lo = i + static_cast<uint64_t>(blk) * p.t;
    uint64_t blk_hi = blk_lo + p.t;
    std::vector<uint64_t> in_block;
    for (uint64_t pos : common_positions) {
      if (pos >= blk_hi) break;
      if (pos >= blk_lo) {
        in_block.push_back(pos);
        if (in_block.size() == p.a_star) break;
      }
    }
    if (in_block.size() >= p.a_star) {
      ClaimStepResult res;
      res.chunk = std::move(kst.subset);
      res.j = blk_hi;
      res.next_positions = std::move(in_block);
      return res;
    }
  }
  fail(Status::internal, "claim_step: pigeonhole block selection failed");
}

std::string EmbedTrace::to_jsonl() const {
  std::string out;
  for (const TraceStep& st : steps) {
    nlohmann::json j;
    j["s"] = st.s;
    j["i"] = st.i;
    j["j"] = st.j;
    j["A"] = st.a_positions;
    j["chunk"] = st.chunk;
    out += j.dump();
    out.push_back('\n');
  }
  nlohmann::json j;
  j["final_chunk"] = final_chunk;
  out += j.dump();
  out.push_back('\n');
  return out;
}

namespace {

Ordering embedding_ordering(const Tournament& t, const EmbedParams& p, uint32_t median_cap) {
  uint32_t n = t.order();
  if (n <= median_cap) return exact_median(t, median_cap);
  if (p.ls_pass_budget == 0) {
    Ordering ord;  // identity, forward count untracked (unused downstream)
    ord.perm.resize(n);
    for (uint32_t v = 0; v < n; ++v) ord.perm[v] = v;
    return ord;
  }
  uint64_t passes = p.ls_pass_budget == EmbedParams::kUnlimitedPasses ? 0 : p.ls_pass_budget;
  return insertion_local_search(t, identity_ordering(t), passes);
}

}  // namespace

EmbedResult embed_power_path(const Tournament& t, const EmbedParams& p, bool guaranteed,
                             uint32_t median_cap) {
  p.validate();
  uint64_t n = t.order();

  if (guaranteed) {
    if (!p.is_default())
      fail(Status::invalid_parameter,
           "embed_power_path: guaranteed mode requires default parameters");
    if (n < (1ull << (2 * p.k))) {
      EmbedResult res;
      res.witness = {p.k, WitnessMode::block_transitive, {0}, false};
      return res;
    }
  }

  Ordering ord = embedding_ordering(t, p, median_cap);

  EmbedResult res;
  res.witness.k = p.k;
  res.witness.mode = WitnessMode::block_transitive;

  uint64_t window = static_cast<uint64_t>(p.blocks) * p.t;
  uint64_t i = std::min<uint64_t>(p.a_star, n);
  std::vector<uint64_t> a_positions(i);
  for (uint64_t pos = 0; pos < i; ++pos) a_positions[pos] = pos;

  uint64_t s = 0;
  while (i + window <= n && a_positions.size() == p.a_star) {
    ClaimStepResult step;
    try {
      step = claim_step(t, ord, i, a_positions, p);
    } catch (const Error& e) {
      if (guaranteed)
        fail(Status::internal,
             std::string("embed_power_path: claim step failed in guaranteed mode: ") + e.what());
      res.witness.partial = true;
      break;
    }
    res.trace.steps.push_back({s, i, step.j, a_positions, step.chunk});
    res.witness.vertices.insert(res.witness.vertices.end(), step.chunk.begin(), step.chunk.end());
    i = step.j;
    a_positions = std::move(step.next_positions);
    ++s;
  }

  // Closing transitive chunk out of the final working set.
  std::vector<uint32_t> final_set;
  final_set.reserve(a_positions.size());
  for (uint64_t pos : a_positions) final_set.push_back(ord.perm[pos]);
  std::vector<uint32_t> tail = greedy_transitive(t, final_set);
  size_t keep = std::min(tail.size(), 2 * static_cast<size_t>(p.k) + 1);
  res.trace.final_chunk.assign(tail.begin(), tail.begin() + keep);
  res.witness.vertices.insert(res.witness.vertices.end(), tail.begin(), tail.begin() + keep);

  if (!verify_power_path(t, res.witness.vertices, p.k, WitnessMode::block_transitive))
    fail(Status::verification_failed, "embed_power_path: produced witness failed verification");
  return res;
}

namespace {

std::vector<uint32_t> square_index_set(const Tournament& t, const std::vector<uint32_t>& perm) {
  std::vector<uint32_t> verts;
  uint32_t n = static_cast<uint32_t>(perm.size());
  for (uint32_t idx = 0; idx < n; ++idx) {
    if (idx < 2 || !t.edge(perm[idx], perm[idx - 2])) verts.push_back(perm[idx]);
  }
  return verts;
}

}  // namespace

Witness embed_square_path(const Tournament& t, uint32_t median_cap) {
  uint32_t n = t.order();
  uint64_t need = (2ull * n + 2) / 3;  // ceil(2n/3)

  Ordering ord = n <= median_cap ? exact_median(t, median_cap)
                                 : insertion_local_search(t, identity_ordering(t));
  for (uint32_t round = 0; round <= n; ++round) {
    Ordering clean = eliminate_bad_indices(t, ord);
    Witness w;
    w.k = 2;
    w.mode = WitnessMode::plain;
    w.vertices = square_index_set(t, clean.perm);
    if (w.vertices.size() >= need && verify_power_path(t, w.vertices, 2, WitnessMode::plain))
      return w;
    // Possible only when the ordering is locally optimal but not median and
    // the rotations exposed an improvement; re-optimize and try again.
    Ordering better = insertion_local_search(t, clean);
    if (better.forward_count <= clean.forward_count)
      fail(Status::internal, "embed_square_path: extraction failed at a local-search fixpoint");
    ord = std::move(better);
  }
  fail(Status::internal, "embed_square_path: retry guard exceeded");
}

Witness hamilton_path(const Tournament& t) {
  Ordering ord = insertion_local_search(t, identity_ordering(t));
  Witness w;
  w.k = 1;
  w.mode = WitnessMode::plain;
  w.vertices = ord.perm;
  if (!verify_power_path(t, w.vertices, 1, WitnessMode::plain))
    fail(Status::internal, "hamilton_path: locally optimal ordering is not a directed path");
  return w;
}

}  // namespace pathpower
