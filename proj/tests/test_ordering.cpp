#include <algorithm>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "pathpower/ordering.hpp"
#include "pathpower/tournament.hpp"
#include "test_util.hpp"

using namespace pathpower;

namespace {

// Factorial brute force: maximum forward count over all permutations.
uint64_t brute_median(const Tournament& t) {
  std::vector<uint32_t> perm(t.order());
  std::iota(perm.begin(), perm.end(), 0);
  uint64_t best = 0;
  do {
    best = std::max(best, forward_edges(t, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<uint32_t> naive_bad_indices(const Tournament& t, const std::vector<uint32_t>& x) {
  std::vector<uint32_t> out;
  uint32_t n = static_cast<uint32_t>(x.size());
  for (uint32_t i = 3; i + 2 <= n; ++i) {  // 1-based
    bool back = t.edge(x[i - 1], x[i - 3]);
    bool hit = t.edge(x[i + 1], x[i - 1]) || t.edge(x[i + 1], x[i - 2]);
    if (back && hit) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST_CASE("exact_median: examples") {
  CHECK(exact_median(Tournament::generate(Model::c3chain, 3, 0)).forward_count == 2);
  Ordering tr = exact_median(Tournament::generate(Model::transitive, 5, 0));
  CHECK(tr.perm == std::vector<uint32_t>{0, 1, 2, 3, 4});
  CHECK(tr.forward_count == 10);
}

TEST_CASE("exact_median: matches the factorial oracle") {
  for (uint32_t n = 1; n <= 8; ++n)
    for (uint64_t seed = 0; seed < 12; ++seed) {
      Tournament t = Tournament::generate(Model::random, n, seed);
      Ordering ord = exact_median(t);
      CHECK(forward_edges(t, ord.perm) == ord.forward_count);
      CHECK(ord.forward_count == brute_median(t));
    }
}

TEST_CASE("exact_median: capacity error above the cap") {
  Tournament t = Tournament::generate(Model::random, 21, 0);
  CHECK_THROWS_AS(exact_median(t), Error);
  try {
    exact_median(t);
  } catch (const Error& e) {
    CHECK(e.status() == Status::capacity);
  }
}

TEST_CASE("insertion_local_search: sorts a reversed transitive tournament") {
  Tournament t = Tournament::generate(Model::transitive, 6, 0);
  Ordering init = make_ordering(t, {5, 4, 3, 2, 1, 0});
  Ordering out = insertion_local_search(t, init);
  CHECK(out.perm == std::vector<uint32_t>{0, 1, 2, 3, 4, 5});
  CHECK(out.forward_count == 15);
}

TEST_CASE("insertion_local_search: fixpoints are left unchanged") {
  Tournament c6 = Tournament::generate(Model::c3chain, 6, 0);
  Ordering id = identity_ordering(c6);
  Ordering out = insertion_local_search(c6, id);
  CHECK(out.perm == id.perm);
  CHECK(out.forward_count == 13);

  for (uint64_t seed = 0; seed < 10; ++seed) {
    Tournament t = Tournament::generate(Model::random, 30, seed);
    Ordering once = insertion_local_search(t, identity_ordering(t));
    Ordering twice = insertion_local_search(t, once);
    CHECK(twice.perm == once.perm);
  }
}

TEST_CASE("insertion_local_search: never decreases the count, output is optimal") {
  for (uint64_t seed = 0; seed < 15; ++seed) {
    Tournament t = Tournament::generate(Model::random, 25, seed);
    Ordering init = identity_ordering(t);
    Ordering out = insertion_local_search(t, init);
    CHECK(out.forward_count >= init.forward_count);
    CHECK(forward_edges(t, out.perm) == out.forward_count);
    OrderingReport rep = check_properties(t, out);
    CHECK(rep.interval_move_violations.empty());
    CHECK(rep.is_adjacent_forward);
  }
  CHECK_THROWS_AS(
      insertion_local_search(Tournament::generate(Model::random, 4, 0), Ordering{{0, 1, 2}, 0}),
      Error);
}

TEST_CASE("insertion_local_search: pass budget caps the work") {
  Tournament t = Tournament::generate(Model::transitive, 8, 0);
  Ordering init = make_ordering(t, {7, 6, 5, 4, 3, 2, 1, 0});
  Ordering one = insertion_local_search(t, init, 1);
  Ordering full = insertion_local_search(t, one);
  CHECK(full.forward_count == 28);
  CHECK(one.forward_count <= full.forward_count);
}

TEST_CASE("check_properties: median output admits no improving move") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Tournament t = Tournament::generate(Model::random, 9, seed);
    OrderingReport rep = check_properties(t, exact_median(t));
    CHECK(rep.interval_move_violations.empty());
  }
  Tournament tr = Tournament::generate(Model::transitive, 5, 0);
  CHECK(check_properties(tr, identity_ordering(tr)).bad_indices.empty());
}

TEST_CASE("check_properties: bad indices match a naive rescan") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Tournament t = Tournament::generate(Model::random, 7, seed);
    Ordering ord = insertion_local_search(t, identity_ordering(t));
    OrderingReport rep = check_properties(t, ord);
    CHECK(rep.bad_indices == naive_bad_indices(t, ord.perm));
  }
}

TEST_CASE("check_properties: flags the improving moves of a bad ordering") {
  Tournament t = Tournament::generate(Model::transitive, 5, 0);
  OrderingReport rep = check_properties(t, make_ordering(t, {4, 3, 2, 1, 0}));
  CHECK_FALSE(rep.is_adjacent_forward);
  CHECK_FALSE(rep.interval_move_violations.empty());
  CHECK_THROWS_AS(check_properties(t, Ordering{{0, 1, 2, 3, 4}, 3}), Error);  // stale count
}

TEST_CASE("locally optimal orderings obey the interval degree bound") {
  // Vertex at position p has >= ceil((q-p)/2) outneighbours in positions
  // p+1..q, for every q; otherwise moving it to q would improve.
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Tournament t = Tournament::generate(Model::random, 20, seed);
    Ordering ord = insertion_local_search(t, identity_ordering(t));
    uint32_t n = t.order();
    for (uint32_t p = 0; p < n; ++p) {
      uint32_t deg = 0;
      for (uint32_t q = p + 1; q < n; ++q) {
        if (t.edge(ord.perm[p], ord.perm[q])) ++deg;
        CHECK(2 * deg >= q - p);
      }
    }
  }
}

TEST_CASE("rotate_triple: frozen examples") {
  Tournament c3 = Tournament::generate(Model::c3chain, 3, 0);
  Ordering id = identity_ordering(c3);
  Ordering v1 = rotate_triple(c3, id, 3, 1);
  CHECK(v1.perm == std::vector<uint32_t>{1, 2, 0});
  CHECK(v1.forward_count == 2);
  Ordering v2 = rotate_triple(c3, id, 3, 2);
  CHECK(v2.perm == std::vector<uint32_t>{2, 0, 1});
  CHECK(v2.forward_count == 2);

  Tournament tr = Tournament::generate(Model::transitive, 3, 0);
  try {
    rotate_triple(tr, identity_ordering(tr), 3, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.status() == Status::rotation_precondition);
  }
  CHECK_THROWS_AS(rotate_triple(c3, id, 2, 1), Error);
  CHECK_THROWS_AS(rotate_triple(c3, id, 3, 3), Error);
}

TEST_CASE("rotate_triple: preserves the forward count on every valid call") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Tournament t = Tournament::generate(Model::random, 12, seed);
    Ordering ord = insertion_local_search(t, identity_ordering(t));
    for (uint32_t i = 3; i <= t.order(); ++i) {
      const auto& x = ord.perm;
      if (!t.edge(x[i - 1], x[i - 3])) continue;
      if (!t.edge(x[i - 3], x[i - 2]) || !t.edge(x[i - 2], x[i - 1])) continue;
      for (int variant : {1, 2}) {
        Ordering rot = rotate_triple(t, ord, i, variant);
        CHECK(forward_edges(t, rot.perm) == ord.forward_count);
        CHECK(rot.forward_count == ord.forward_count);
      }
    }
  }
}

TEST_CASE("eliminate_bad_indices: transitive identity is already clean") {
  Tournament t = Tournament::generate(Model::transitive, 10, 0);
  Ordering id = identity_ordering(t);
  Ordering out = eliminate_bad_indices(t, id);
  CHECK(out.perm == id.perm);
}

TEST_CASE("eliminate_bad_indices: median input keeps its count") {
  Tournament t = Tournament::generate(Model::c3chain, 9, 0);
  Ordering med = exact_median(t);
  Ordering out = eliminate_bad_indices(t, med);
  CHECK(out.forward_count == med.forward_count);  // already maximal
  CHECK(check_properties(t, out).bad_indices.empty());
}

TEST_CASE("eliminate_bad_indices: clean output on seeded random tournaments") {
  for (uint32_t n : {5u, 12u, 25u, 40u}) {
    for (uint64_t seed = 0; seed < 50; ++seed) {
      Tournament t = Tournament::generate(Model::random, n, seed * 31 + n);
      Ordering in = insertion_local_search(t, identity_ordering(t));
      Ordering out = eliminate_bad_indices(t, in);
      OrderingReport rep = check_properties(t, out);  // also validates the permutation
      CHECK(rep.bad_indices.empty());
      CHECK(out.forward_count >= in.forward_count);
    }
  }
}

TEST_CASE("eliminate_bad_indices: rejects non-optimal input") {
  Tournament t = Tournament::generate(Model::transitive, 5, 0);
  try {
    eliminate_bad_indices(t, make_ordering(t, {4, 3, 2, 1, 0}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.status() == Status::not_locally_optimal);
  }
}

TEST_CASE("degenerate sizes pass through") {
  for (uint32_t n : {1u, 2u}) {
    Tournament t = Tournament::generate(Model::random, n, 0);
    Ordering opt = insertion_local_search(t, identity_ordering(t));
    CHECK(opt.perm.size() == n);
    CHECK(insertion_local_search(t, opt).perm == opt.perm);
    CHECK(eliminate_bad_indices(t, opt).perm == opt.perm);  // no bad index can exist
    CHECK(check_properties(t, opt).bad_indices.empty());
  }
}
