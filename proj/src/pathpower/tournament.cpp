#include "pathpower/tournament.hpp"

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

// Orientation bit for the pair (i, j), i < j: 1 means edge(i->j). Shared by
// the explicit random generator and the implicit form so the two are
// interchangeable for the same seed.
bool pair_coin(uint64_t seed, uint32_t i, uint32_t j) {
  uint64_t key = (static_cast<uint64_t>(i) << 32) | j;
  return (splitmix64(seed ^ splitmix64(key)) & 1ull) != 0;
}

void check_vertex(const Tournament& t, uint32_t v, const char* what) {
  if (v >= t.order())
    fail(Status::invalid_vertex, std::string(what) + ": vertex " + std::to_string(v) +
                                     " out of range for n=" + std::to_string(t.order()));
}

}  // namespace

uint64_t Tournament::pair_index(uint32_t i, uint32_t j) const {
  // Row-major strict upper triangle.
  uint64_t n = n_;
  uint64_t row = static_cast<uint64_t>(i) * (2 * n - i - 1) / 2;
  return row + (j - i - 1);
}

bool Tournament::upper_bit(uint32_t i, uint32_t j) const {
  if (implicit_) return pair_coin(seed_, i, j);
  uint64_t idx = pair_index(i, j);
  return (bits_[idx >> 6] >> (idx & 63)) & 1ull;
}

void Tournament::set_upper_bit(uint64_t idx, bool value) {
  if (value)
    bits_[idx >> 6] |= 1ull << (idx & 63);
  else
    bits_[idx >> 6] &= ~(1ull << (idx & 63));
}

bool Tournament::edge(uint32_t u, uint32_t v) const {
  check_vertex(*this, u, "edge");
  check_vertex(*this, v, "edge");
  if (u == v) fail(Status::invalid_vertex, "edge: u == v");
  if (u < v) return upper_bit(u, v);
  return !upper_bit(v, u);
}

Tournament Tournament::generate(Model model, uint32_t n, uint64_t seed) {
  if (n < 1) fail(Status::invalid_parameter, "generate: n must be at least 1");
  Tournament t;
  t.n_ = n;
  t.seed_ = seed;
  if (model == Model::implicit_random) {
    t.implicit_ = true;
    return t;
  }
  uint64_t pairs = static_cast<uint64_t>(n) * (n - 1) / 2;
  t.bits_.assign((pairs + 63) / 64, 0);
  switch (model) {
    case Model::random: {
      uint64_t idx = 0;
      for (uint32_t i = 0; i + 1 < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j, ++idx)
          t.set_upper_bit(idx, pair_coin(seed, i, j));
      break;
    }
    case Model::transitive:
      // edge(u->v) iff u < v: all upper bits set.
      for (auto& w : t.bits_) w = ~0ull;
      break;
    case Model::c3chain: {
      if (n % 3 != 0)
        fail(Status::invalid_parameter, "generate: c3chain requires n divisible by 3");
      // All forward except the closing edge of each triple: a+2 -> a.
      for (auto& w : t.bits_) w = ~0ull;
      for (uint32_t a = 0; a < n; a += 3) t.set_upper_bit(t.pair_index(a, a + 2), false);
      break;
    }
    default:
      fail(Status::invalid_parameter, "generate: unknown model");
  }
  return t;
}

Tournament Tournament::materialize() const {
  if (!implicit_) return *this;
  return generate(Model::random, n_, seed_);
}

Tournament Tournament::prefix(uint32_t r) const {
  if (implicit_) fail(Status::unsupported_storage, "prefix: implicit tournament");
  if (r < 1 || r > n_) fail(Status::invalid_parameter, "prefix: size out of range");
  Tournament t;
  t.n_ = r;
  uint64_t pairs = static_cast<uint64_t>(r) * (r - 1) / 2;
  t.bits_.assign((pairs + 63) / 64, 0);
  uint64_t idx = 0;
  for (uint32_t i = 0; i + 1 < r; ++i)
    for (uint32_t j = i + 1; j < r; ++j, ++idx) t.set_upper_bit(idx, upper_bit(i, j));
  return t;
}

Tournament Tournament::compose_forward(const Tournament& t1, const Tournament& t2) {
  if (!t1.is_explicit() || !t2.is_explicit())
    fail(Status::unsupported_storage, "compose_forward: inputs must be explicit");
  Tournament t;
  uint32_t n = t1.n_, m = t2.n_;
  t.n_ = n + m;
  uint64_t pairs = static_cast<uint64_t>(t.n_) * (t.n_ - 1) / 2;
  t.bits_.assign((pairs + 63) / 64, 0);
  uint64_t idx = 0;
  for (uint32_t i = 0; i + 1 < t.n_; ++i) {
    for (uint32_t j = i + 1; j < t.n_; ++j, ++idx) {
      bool bit;
      if (j < n)
        bit = t1.upper_bit(i, j);
      else if (i >= n)
        bit = t2.upper_bit(i - n, j - n);
      else
        bit = true;  // every cross edge runs T1 -> T2
      t.set_upper_bit(idx, bit);
    }
  }
  return t;
}

std::string Tournament::serialize() const {
  if (implicit_) fail(Status::unsupported_storage, "serialize: implicit tournament");
  std::string out = "PTv1 " + std::to_string(n_) + "\n";
  for (uint32_t i = 0; i + 1 < n_; ++i) {
    for (uint32_t j = i + 1; j < n_; ++j) out.push_back(upper_bit(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

Tournament Tournament::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(Status::parse_error, "line 1: empty input");
  std::istringstream header(line);
  std::string magic;
  long long n = -1;
  header >> magic >> n;
  if (magic != "PTv1" || n < 1 || n > 0xffffffffll || !header.eof())
    fail(Status::parse_error, "line 1: expected header 'PTv1 <n>'");
  Tournament t;
  t.n_ = static_cast<uint32_t>(n);
  uint64_t pairs = static_cast<uint64_t>(t.n_) * (t.n_ - 1) / 2;
  t.bits_.assign((pairs + 63) / 64, 0);
  uint64_t idx = 0;
  for (uint32_t i = 0; i + 1 < t.n_; ++i) {
    if (!std::getline(in, line))
      fail(Status::parse_error, "line " + std::to_string(i + 2) + ": missing row");
    if (line.size() != t.n_ - 1 - i)
      fail(Status::parse_error, "line " + std::to_string(i + 2) + ": expected " +
                                    std::to_string(t.n_ - 1 - i) + " characters, got " +
                                    std::to_string(line.size()));
    for (char c : line) {
      if (c != '0' && c != '1')
        fail(Status::parse_error, "line " + std::to_string(i + 2) + ": invalid character '" +
                                      std::string(1, c) + "'");
      t.set_upper_bit(idx++, c == '1');
    }
  }
  if (std::getline(in, line) && !line.empty())
    fail(Status::parse_error,
         "line " + std::to_string(t.n_ + 1) + ": trailing data after last row");
  return t;
}

bool Tournament::same_orientations(const Tournament& other) const {
  if (n_ != other.n_) return false;
  for (uint32_t i = 0; i + 1 < n_; ++i)
    for (uint32_t j = i + 1; j < n_; ++j)
      if (upper_bit(i, j) != other.upper_bit(i, j)) return false;
  return true;
}

std::string Witness::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["mode"] = mode == WitnessMode::plain ? "plain" : "block_transitive";
  j["vertices"] = vertices;
  if (partial) j["partial"] = true;
  return j.dump();
}

Witness Witness::from_json(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("k") || !j.contains("mode") ||
      !j.contains("vertices"))
    fail(Status::parse_error, "witness: expected {\"k\":K,\"mode\":...,\"vertices\":[...]}");
  Witness w;
  w.k = j.at("k").get<uint32_t>();
  std::string mode = j.at("mode").get<std::string>();
  if (mode == "plain")
    w.mode = WitnessMode::plain;
  else if (mode == "block_transitive")
    w.mode = WitnessMode::block_transitive;
  else
    fail(Status::parse_error, "witness: unknown mode '" + mode + "'");
  w.vertices = j.at("vertices").get<std::vector<uint32_t>>();
  w.partial = j.value("partial", false);
  return w;
}

bool verify_power_path(const Tournament& t, const std::vector<uint32_t>& w, uint32_t k,
                       WitnessMode mode) {
  if (k < 1) fail(Status::invalid_parameter, "verify_power_path: k must be at least 1");
  std::vector<bool> seen(t.order(), false);
  for (uint32_t v : w) {
    check_vertex(t, v, "verify_power_path");
    if (seen[v]) return false;
    seen[v] = true;
  }
  size_t m = w.size();
  for (size_t a = 0; a < m; ++a) {
    // In block-transitive mode the required pairs are exactly those with
    // floor(a/k)+1 >= floor(b/k), a superset of the plain pairs b <= a+k.
    size_t hi;
    if (mode == WitnessMode::plain)
      hi = std::min(m, a + k + 1);
    else
      hi = std::min(m, (a / k + 2) * static_cast<size_t>(k));
    for (size_t b = a + 1; b < hi; ++b)
      if (!t.edge(w[a], w[b])) return false;
  }
  return true;
}

uint64_t forward_edges(const Tournament& t, const std::vector<uint32_t>& perm) {
  uint32_t n = t.order();
  if (perm.size() != n) fail(Status::invalid_ordering, "forward_edges: wrong length");
  std::vector<bool> seen(n, false);
  for (uint32_t v : perm) {
    check_vertex(t, v, "forward_edges");
    if (seen[v]) fail(Status::invalid_ordering, "forward_edges: repeated vertex");
    seen[v] = true;
  }
  uint64_t count = 0;
  for (uint32_t p = 0; p < n; ++p)
    for (uint32_t q = p + 1; q < n; ++q)
      if (t.edge(perm[p], perm[q])) ++count;
  return count;
}

namespace {

// Dense |S| x |S| out-adjacency in set-index space; pays off once the
// recursion repeatedly intersects outneighbourhoods.
std::vector<uint32_t> greedy_transitive_bitset(const Tournament& t,
                                               const std::vector<uint32_t>& s) {
  size_t m = s.size();
  size_t words = (m + 63) / 64;
  std::vector<uint64_t> rows(m * words, 0);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b)
      if (a != b && t.edge(s[a], s[b])) rows[a * words + (b >> 6)] |= 1ull << (b & 63);

  std::vector<uint64_t> live(words, 0);
  for (size_t a = 0; a < m; ++a) live[a >> 6] |= 1ull << (a & 63);

  std::vector<uint32_t> seq;
  size_t live_count = m;
  while (live_count > 0) {
    size_t best = m;
    size_t best_deg = 0;
    for (size_t a = 0; a < m; ++a) {
      if (!((live[a >> 6] >> (a & 63)) & 1ull)) continue;
      size_t deg = 0;
      for (size_t w = 0; w < words; ++w) deg += std::popcount(rows[a * words + w] & live[w]);
      if (best == m || deg > best_deg ||
          (deg == best_deg && s[a] < s[best])) {
        best = a;
        best_deg = deg;
      }
    }
    seq.push_back(s[best]);
    for (size_t w = 0; w < words; ++w) live[w] &= rows[best * words + w];
    live_count = 0;
    for (size_t w = 0; w < words; ++w) live_count += std::popcount(live[w]);
  }
  return seq;
}

}  // namespace

std::vector<uint32_t> greedy_transitive(const Tournament& t, const std::vector<uint32_t>& s) {
  if (s.empty()) fail(Status::invalid_parameter, "greedy_transitive: empty set");
  for (uint32_t v : s) check_vertex(t, v, "greedy_transitive");
  if (s.size() <= 16384) return greedy_transitive_bitset(t, s);

  std::vector<uint32_t> cur(s);
  std::vector<uint32_t> seq;
  while (!cur.empty()) {
    uint32_t best = cur[0];
    size_t best_deg = 0;
    bool first = true;
    for (uint32_t v : cur) {
      size_t deg = 0;
      for (uint32_t u : cur)
        if (u != v && t.edge(v, u)) ++deg;
      if (first || deg > best_deg || (deg == best_deg && v < best)) {
        best = v;
        best_deg = deg;
        first = false;
      }
    }
    seq.push_back(best);
    std::vector<uint32_t> next;
    for (uint32_t u : cur)
      if (u != best && t.edge(best, u)) next.push_back(u);
    cur = std::move(next);
  }
  return seq;
}

}  // namespace pathpower
