#include "pathpower/oracle.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include <json.hpp>

namespace pathpower {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct SearchOut {
  uint32_t best = 0;
  std::vector<uint32_t> witness;
  uint64_t nodes = 0;
};

struct Dfs {
  uint32_t n, k, target;
  const std::vector<uint32_t>& out;
  uint32_t full;
  SearchOut res;
  std::vector<uint32_t> seq;
  bool done = false;

  void run(uint32_t used) {
    ++res.nodes;
    uint32_t len = static_cast<uint32_t>(seq.size());
    if (len > res.best) {
      res.best = len;
      res.witness = seq;
      if (target && res.best >= target) {
        done = true;
        return;
      }
    }
    uint32_t unused = full & ~used;
    if (len + static_cast<uint32_t>(std::popcount(unused)) <= res.best) return;
    uint32_t cand = unused;
    uint32_t back = std::min(k, len);
    for (uint32_t d = 1; d <= back; ++d) cand &= out[seq[len - d]];
    while (cand) {
      uint32_t v = static_cast<uint32_t>(std::countr_zero(cand));
      cand &= cand - 1;
      seq.push_back(v);
      run(used | (1u << v));
      seq.pop_back();
      if (done) return;
    }
  }
};

SearchOut longest_dfs(uint32_t n, const std::vector<uint32_t>& out, uint32_t k,
                      uint32_t target) {
  Dfs d{n, k, target, out, n >= 32 ? 0xffffffffu : ((1u << n) - 1), {}, {}, false};
  d.run(0);
  return d.res;
}

// k=2 dynamic program over (visited set, last, prev): g[mask*n + last] holds
// the set of feasible prev vertices, with the self-bit marking a length-1
// path.
SearchOut longest_square_dp(uint32_t n, const std::vector<uint32_t>& out, uint32_t target) {
  std::vector<uint32_t> in(n, 0);
  for (uint32_t u = 0; u < n; ++u)
    for (uint32_t v = 0; v < n; ++v)
      if (u != v && ((out[u] >> v) & 1u)) in[v] |= 1u << u;

  uint32_t full = (1u << n) - 1;
  std::vector<uint32_t> g(static_cast<size_t>(full + 1) * n, 0);
  SearchOut res;
  uint32_t best_mask = 0, best_last = 0;
  for (uint32_t u = 0; u < n; ++u) {
    g[static_cast<size_t>(1u << u) * n + u] = 1u << u;
    if (res.best == 0) {
      res.best = 1;
      best_mask = 1u << u;
      best_last = u;
    }
  }
  bool done = target > 0 && res.best >= target;
  for (uint32_t mask = 1; mask <= full && !done; ++mask) {
    for (uint32_t last = 0; last < n && !done; ++last) {
      if (!((mask >> last) & 1u)) continue;
      uint32_t prevs = g[static_cast<size_t>(mask) * n + last];
      if (!prevs) continue;
      ++res.nodes;
      uint32_t ext = out[last] & ~mask;
      while (ext) {
        uint32_t v = static_cast<uint32_t>(std::countr_zero(ext));
        ext &= ext - 1;
        if (!(prevs & in[v])) continue;
        uint32_t nmask = mask | (1u << v);
        g[static_cast<size_t>(nmask) * n + v] |= 1u << last;
        uint32_t len = static_cast<uint32_t>(std::popcount(nmask));
        if (len > res.best) {
          res.best = len;
          best_mask = nmask;
          best_last = v;
          if (target && res.best >= target) {
            done = true;
            break;
          }
        }
      }
    }
  }

  // Backtrack one maximizing sequence. The feasible-prev set is narrowed by
  // in[last] at each step so the distance-2 edge constraint is preserved.
  std::vector<uint32_t> seq;
  uint32_t mask = best_mask, last = best_last;
  uint32_t prevs = g[static_cast<size_t>(mask) * n + last];
  seq.push_back(last);
  while (std::popcount(mask) > 1) {
    uint32_t p = static_cast<uint32_t>(std::countr_zero(prevs));
    uint32_t pmask = mask & ~(1u << last);
    uint32_t next_prevs = std::popcount(pmask) == 1
                              ? (1u << p)
                              : (g[static_cast<size_t>(pmask) * n + p] & in[last]);
    seq.push_back(p);
    mask = pmask;
    last = p;
    prevs = next_prevs;
  }
  std::reverse(seq.begin(), seq.end());
  res.witness = std::move(seq);
  return res;
}

std::vector<uint32_t> out_masks(const Tournament& t) {
  uint32_t n = t.order();
  std::vector<uint32_t> out(n, 0);
  for (uint32_t u = 0; u < n; ++u)
    for (uint32_t v = u + 1; v < n; ++v) {
      if (t.edge(u, v))
        out[u] |= 1u << v;
      else
        out[v] |= 1u << u;
    }
  return out;
}

}  // namespace

OracleResult longest_power_path(const Tournament& t, uint32_t k, uint32_t early_exit_target) {
  if (k < 1) fail(Status::invalid_parameter, "longest_power_path: k must be at least 1");
  if (!t.is_explicit())
    fail(Status::unsupported_storage, "longest_power_path: implicit tournament");
  uint32_t n = t.order();
  SearchOut s;
  if (k == 2) {
    if (n > 20) fail(Status::capacity, "longest_power_path: n > 20 for the k=2 DP");
    s = longest_square_dp(n, out_masks(t), early_exit_target);
  } else {
    if (n > 24) fail(Status::capacity, "longest_power_path: n > 24 for the DFS oracle");
    s = longest_dfs(n, out_masks(t), k, early_exit_target);
  }
  return {s.best, std::move(s.witness), s.nodes};
}

uint32_t ell_exact(uint32_t n, uint32_t k, bool allow_large, uint32_t shards,
                   uint32_t shard_index) {
  if (n < 1 || k < 1) fail(Status::invalid_parameter, "ell_exact: n and k must be at least 1");
  if (shards < 1 || shard_index >= shards)
    fail(Status::invalid_parameter, "ell_exact: bad shard arguments");
  if (n > 7 || (n == 7 && !allow_large))
    fail(Status::capacity, "ell_exact: n=" + std::to_string(n) +
                               (n == 7 ? " requires the long-run flag" : " over cap"));
  uint32_t pairs = n * (n - 1) / 2;
  uint64_t total = 1ull << pairs;
  uint32_t cur_min = n;
  std::vector<uint32_t> out(n, 0);
  for (uint64_t code = shard_index; code < total; code += shards) {
    std::fill(out.begin(), out.end(), 0);
    uint32_t bit = 0;
    for (uint32_t i = 0; i + 1 < n; ++i)
      for (uint32_t j = i + 1; j < n; ++j, ++bit) {
        if ((code >> bit) & 1ull)
          out[i] |= 1u << j;
        else
          out[j] |= 1u << i;
      }
    // Early exit at the current minimum: this tournament only matters if it
    // is strictly worse than everything seen so far.
    SearchOut s = longest_dfs(n, out, k, cur_min);
    if (s.best < cur_min) cur_min = s.best;
    if (cur_min == 1) break;
  }
  return cur_min;
}

std::string AvoiderCertificate::serialize() const {
  nlohmann::json j;
  j["k"] = k;
  j["m"] = m;
  j["verified"] = verified;
  j["seed"] = seed;
  return tournament.serialize() + j.dump() + "\n";
}

AvoiderCertificate AvoiderCertificate::parse(const std::string& text) {
  // Tournament rows first: header plus n-1 lines, then one JSON line.
  size_t pos = text.find('\n');
  if (pos == std::string::npos) fail(Status::parse_error, "certificate: missing header line");
  std::istringstream header(text.substr(0, pos));
  std::string magic;
  long long n = -1;
  header >> magic >> n;
  if (magic != "PTv1" || n < 1) fail(Status::parse_error, "certificate: bad tournament header");
  size_t end = pos + 1;
  for (long long i = 0; i + 1 < n; ++i) {
    end = text.find('\n', end);
    if (end == std::string::npos)
      fail(Status::parse_error, "certificate: truncated tournament block");
    ++end;
  }
  AvoiderCertificate cert;
  cert.tournament = Tournament::parse(text.substr(0, end));
  nlohmann::json j = nlohmann::json::parse(text.substr(end), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    fail(Status::parse_error, "certificate: bad metadata line");
  cert.k = j.at("k").get<uint32_t>();
  cert.m = j.at("m").get<uint32_t>();
  cert.verified = j.at("verified").get<bool>();
  cert.seed = j.at("seed").get<uint64_t>();
  return cert;
}

AvoiderCertificate make_certificate(const Tournament& t, uint32_t k, uint32_t m, uint64_t seed) {
  if (m < 2) fail(Status::invalid_parameter, "make_certificate: m must be at least 2");
  AvoiderCertificate cert;
  cert.tournament = t;
  cert.k = k;
  cert.m = m;
  cert.seed = seed;
  OracleResult r = longest_power_path(t, k, m);
  cert.verified = r.max_vertices < m;
  return cert;
}

AvoiderCertificate search_avoider(uint32_t k, uint32_t m, uint64_t trial_begin,
                                  uint64_t trial_end, uint64_t seed) {
  if (k < 2) fail(Status::invalid_parameter, "search_avoider: k must be at least 2");
  if (m < 2) fail(Status::invalid_parameter, "search_avoider: m must be at least 2");
  if (trial_end <= trial_begin)
    fail(Status::invalid_parameter, "search_avoider: empty trial range");
  uint32_t n = 1u << (k - 1);
  if (n > 24) fail(Status::capacity, "search_avoider: block size 2^{k-1} over oracle cap");

  AvoiderCertificate cert;
  for (uint64_t trial = trial_begin; trial < trial_end; ++trial) {
    uint64_t sample_seed = splitmix64(seed ^ splitmix64(trial + 1));
    Tournament t = Tournament::generate(Model::random, n, sample_seed);
    cert = make_certificate(t, k, m, sample_seed);
    cert.trials_used = trial - trial_begin + 1;
    if (cert.verified) return cert;
  }
  cert.verified = false;
  return cert;
}

UpperBoundResult certify_upper_bound(uint32_t k, uint32_t n, const AvoiderCertificate& block) {
  if (!block.verified)
    fail(Status::invalid_certificate, "certify_upper_bound: block certificate not verified");
  if (block.k != k)
    fail(Status::invalid_certificate, "certify_upper_bound: block certified for a different k");
  uint32_t bs = block.tournament.order();
  if (n < bs) fail(Status::invalid_parameter, "certify_upper_bound: n smaller than block size");

  uint32_t copies = (n + bs - 1) / bs;
  uint32_t remainder = n - bs * (copies - 1);
  UpperBoundResult res;
  res.tournament = block.tournament;
  for (uint32_t c = 1; c + 1 < copies; ++c)
    res.tournament = Tournament::compose_forward(res.tournament, block.tournament);
  if (copies > 1)
    res.tournament =
        Tournament::compose_forward(res.tournament, block.tournament.prefix(remainder));
  else
    res.tournament = block.tournament.prefix(remainder);

  uint32_t per_block = std::min(block.m - 1, bs);
  res.bound = (copies - 1) * per_block + std::min(block.m - 1, remainder);

  bool within_cap = (k == 2) ? n <= 20 : n <= 24;
  if (within_cap) {
    OracleResult r = longest_power_path(res.tournament, k);
    res.oracle_checked = true;
    res.oracle_value = r.max_vertices;
    if (r.max_vertices > res.bound)
      fail(Status::internal, "certify_upper_bound: oracle exceeded the claimed bound");
  }
  return res;
}

}  // namespace pathpower
