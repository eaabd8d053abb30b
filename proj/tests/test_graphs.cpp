#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "qent/graphs.hpp"
#include "qent/moments.hpp"

using namespace qent;

namespace {

// [2 2', 1 1']: both in-slots of each vertex fed by the other vertex
const SlotPermutation eye_perm(2, {1, 0, 3, 2});
// [1 2, 1' 2']: the two-vertex cactus
const SlotPermutation cactus2_perm(2, {0, 2, 1, 3});

// leaf removal: drop a vertex carrying a self-loop plus one through-path
// (a,w),(w,b) and reconnect as (a,b)
FeynmanGraph remove_leaf(const FeynmanGraph& g, int w) {
  FeynmanGraph out;
  out.m = g.m - 1;
  int from = -1, to = -1, selfloops = 0;
  std::vector<std::pair<int, int>> rest;
  for (auto [a, b] : g.edges) {
    if (a == w && b == w) {
      ++selfloops;
    } else if (b == w) {
      from = a;
    } else if (a == w) {
      to = b;
    } else {
      rest.push_back({a, b});
    }
  }
  REQUIRE(selfloops == 1);
  REQUIRE(from >= 0);
  REQUIRE(to >= 0);
  rest.push_back({from, to});
  for (auto [a, b] : rest)
    out.edges.emplace_back(a > w ? a - 1 : a, b > w ? b - 1 : b);
  return out;
}

}  // namespace

TEST_CASE("slot permutation validation") {
  CHECK_THROWS_AS(SlotPermutation(2, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(SlotPermutation(2, {0, 0, 1, 2}), std::invalid_argument);
  auto id = SlotPermutation::identity(2);
  CHECK(id.unprimed(1) == 1);
  CHECK(id.primed(1) == 3);
  CHECK(id.owner(3) == 1);
}

TEST_CASE("graph construction: every vertex has two in and two out edges") {
  detail::for_each_slot_permutation(3, [](const SlotPermutation& p) {
    FeynmanGraph g = graph_of_permutation(p);
    std::vector<int> indeg(g.m, 0), outdeg(g.m, 0);
    for (auto [u, v] : g.edges) {
      ++outdeg[u];
      ++indeg[v];
    }
    for (int v = 0; v < g.m; ++v) {
      REQUIRE(indeg[v] == 2);
      REQUIRE(outdeg[v] == 2);
    }
  });
}

TEST_CASE("identity permutation gives the double self-loop vertex") {
  FeynmanGraph g = graph_of_permutation(SlotPermutation::identity(1));
  REQUIRE(g.m == 1);
  REQUIRE(g.edges.size() == 2);
  for (auto [u, v] : g.edges) {
    CHECK(u == 0);
    CHECK(v == 0);
  }
  CHECK(is_cactus(g));
}

TEST_CASE("two-vertex shapes: cactus vs eye") {
  FeynmanGraph cactus = graph_of_permutation(cactus2_perm);
  FeynmanGraph eye = graph_of_permutation(eye_perm);
  CHECK(is_cactus(cactus));
  CHECK_FALSE(is_cactus(eye));
  CHECK(canonical_form(cactus) != canonical_form(eye));
  // the eye: two vertices, two edges each way, no self-loops
  auto adj = eye.adjacency();
  CHECK(adj[0][1] == 2);
  CHECK(adj[1][0] == 2);
  CHECK(adj[0][0] == 0);
  CHECK(adj[1][1] == 0);
}

TEST_CASE("canonical form identifies relabelings") {
  SlotPermutation a(2, {0, 2, 1, 3});   // [1 2, 1' 2']
  SlotPermutation b(2, {2, 0, 3, 1});   // [2 1, 2' 1']
  CHECK(canonical_form(graph_of_permutation(a)) == canonical_form(graph_of_permutation(b)));
}

TEST_CASE("census degeneracies for small orders") {
  auto c1 = census(1);
  REQUIRE(c1.classes.size() == 1);
  CHECK(c1.classes[0].degeneracy == 2);
  CHECK(c1.classes[0].cactus);
  CHECK(c1.total_degeneracy() == 2);

  auto c2 = census(2);
  REQUIRE(c2.classes.size() == 3);
  CHECK(c2.total_degeneracy() == 24);
  std::multiset<std::int64_t> degs;
  for (const auto& cl : c2.classes) degs.insert(cl.degeneracy);
  CHECK(degs == std::multiset<std::int64_t>{4, 4, 16});
  // the degeneracy-16 class is the connected cactus; one of the two
  // degeneracy-4 classes is the eye (non-cactus), the other disconnected
  int cactus4 = 0, noncactus4 = 0;
  for (const auto& cl : c2.classes) {
    if (cl.degeneracy == 16) CHECK(cl.cactus);
    else if (cl.cactus) ++cactus4;
    else ++noncactus4;
  }
  CHECK(cactus4 == 1);
  CHECK(noncactus4 == 1);

  auto c3 = census(3);
  CHECK(c3.total_degeneracy() == 720);
  std::multiset<std::int64_t> nc_degs;
  for (const auto& cl : c3.classes)
    if (!cl.cactus) nc_degs.insert(cl.degeneracy);
  // connected non-cactus classes carry degeneracies 192, 16, 64; one more
  // class is the eye plus an isolated vertex
  CHECK(nc_degs.count(192) == 1);
  CHECK(nc_degs.count(64) == 1);
  CHECK(nc_degs.count(16) == 1);
}

TEST_CASE("census guard") {
  CHECK_THROWS_WITH(census(5), Catch::Matchers::ContainsSubstring("guard"));
  CHECK_THROWS_AS(census(0), std::runtime_error);
}

TEST_CASE("degeneracy bound holds for every class") {
  for (int m = 1; m <= 3; ++m) CHECK(degeneracy_bound_check(census(m)));
  // and explicitly: D <= 4^v v!
  for (int m = 1; m <= 3; ++m) {
    std::int64_t bound = pow_ll(4, m);
    for (int i = 2; i <= m; ++i) bound *= i;
    for (const auto& cl : census(m).classes) CHECK(cl.degeneracy <= bound);
  }
}

TEST_CASE("cactus closed form matches the bracket on every cactus class") {
  for (int m = 1; m <= 3; ++m) {
    auto c = census(m);
    for (auto [n, d] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
      const double N = static_cast<double>(pow_ll(d, n));
      const double NA = static_cast<double>(pow_ll(d, n / 2));
      const double NAbar = static_cast<double>(pow_ll(d, n - n / 2));
      for (const auto& cl : c.classes) {
        if (!cl.cactus) continue;
        FeynmanGraph g = graph_of_permutation(cl.representative);
        const double closed = cactus_value(g, N, NA, NAbar);
        const double brute = square_bracket(cl.representative, n, d);
        CHECK(brute == Catch::Approx(closed).margin(1e-9));
      }
    }
  }
}

TEST_CASE("cactus closed form values at n=2, d=2") {
  const double N = 4, NA = 2, NAbar = 2;
  CHECK(cactus_value(graph_of_permutation(SlotPermutation::identity(1)), N, NA, NAbar) ==
        Catch::Approx(8.0));
  CHECK(cactus_value(graph_of_permutation(cactus2_perm), N, NA, NAbar) == Catch::Approx(16.0));
  // [1 1', 2 2'] is two single-vertex components: (4*2)^2
  SlotPermutation disc(2, {0, 1, 2, 3});
  FeynmanGraph g = graph_of_permutation(disc);
  REQUIRE(g.components().size() == 2);
  CHECK(cactus_value(g, N, NA, NAbar) == Catch::Approx(64.0));
  CHECK(square_bracket(disc, 2, 2) == Catch::Approx(64.0).margin(1e-9));
  CHECK_THROWS_AS(cactus_value(graph_of_permutation(eye_perm), N, NA, NAbar),
                  std::invalid_argument);
}

TEST_CASE("loop bound holds for the eye graph") {
  FeynmanGraph eye = graph_of_permutation(eye_perm);
  CHECK(loop_bound_check(eye, 2, 2));
  CHECK(loop_bound_check(eye, 3, 2));
  CHECK(loop_bound_check(eye, 2, 3));
  CHECK_THROWS_AS(loop_bound_check(graph_of_permutation(SlotPermutation::identity(1)), 2, 2),
                  std::invalid_argument);
}

TEST_CASE("pinching the self-loop of the one-vertex graph grows a leaf") {
  FeynmanGraph g1 = graph_of_permutation(SlotPermutation::identity(1));
  FeynmanGraph daughter = pinch_leaf(g1, 0);
  CHECK(canonical_form(daughter) == canonical_form(graph_of_permutation(cactus2_perm)));
  CHECK(is_cactus(daughter));
}

TEST_CASE("degenerate pinching of the one-vertex graph gives the eye") {
  FeynmanGraph g1 = graph_of_permutation(SlotPermutation::identity(1));
  FeynmanGraph daughter = pinch(g1, 0, 1);
  CHECK(canonical_form(daughter) == canonical_form(graph_of_permutation(eye_perm)));
  CHECK_FALSE(is_cactus(daughter));
}

TEST_CASE("pinch validation and degree preservation") {
  FeynmanGraph g = graph_of_permutation(cactus2_perm);
  CHECK_THROWS_AS(pinch(g, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(pinch(g, 0, 99), std::invalid_argument);
  CHECK_THROWS_AS(pinch_leaf(g, -1), std::invalid_argument);
  FeynmanGraph daughter = pinch(g, 0, 2);
  std::vector<int> indeg(daughter.m, 0), outdeg(daughter.m, 0);
  for (auto [u, v] : daughter.edges) {
    ++outdeg[u];
    ++indeg[v];
  }
  for (int v = 0; v < daughter.m; ++v) {
    CHECK(indeg[v] == 2);
    CHECK(outdeg[v] == 2);
  }
}

TEST_CASE("every connected class is reachable by one pinch from the smaller census") {
  for (int v = 1; v <= 2; ++v) {
    std::set<std::vector<int>> reachable;
    for (const auto& cl : census(v).classes) {
      FeynmanGraph g = graph_of_permutation(cl.representative);
      const int ne = static_cast<int>(g.edges.size());
      for (int e1 = 0; e1 < ne; ++e1) {
        reachable.insert(canonical_form(pinch_leaf(g, e1)));
        for (int e2 = 0; e2 < ne; ++e2)
          if (e1 != e2) reachable.insert(canonical_form(pinch(g, e1, e2)));
      }
    }
    for (const auto& cl : census(v + 1).classes) {
      FeynmanGraph g = graph_of_permutation(cl.representative);
      if (g.components().size() > 1) continue;  // pinching never disconnects
      CHECK(reachable.count(cl.canonical) == 1);
    }
  }
}

TEST_CASE("removing a leaf from a cactus yields a cactus") {
  // grow a leaf on every edge of every cactus representative, then remove it
  for (int m = 1; m <= 3; ++m) {
    for (const auto& cl : census(m).classes) {
      if (!cl.cactus) continue;
      FeynmanGraph g = graph_of_permutation(cl.representative);
      for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        FeynmanGraph grown = pinch_leaf(g, e);
        REQUIRE(is_cactus(grown));
        FeynmanGraph back = remove_leaf(grown, g.m);
        CHECK(is_cactus(back));
        CHECK(canonical_form(back) == cl.canonical);
      }
    }
  }
}
