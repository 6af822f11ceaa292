#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lehmer/emit.hpp"
#include "lehmer/ntuple.hpp"
#include "lehmer/poset.hpp"

using namespace lehmer;

TEST_CASE("componentwise order on tuples") {
  CHECK(componentwise_leq(NTuple{0, 0, 0, 0}, NTuple{1, 5, 7, 11}));
  CHECK(componentwise_leq(NTuple{0, 0, 1, 0}, NTuple{0, 0, 1, 1}));
  // both are maxima of the worked example's ideal, hence incomparable
  CHECK(!componentwise_leq(NTuple{1, 1, 1, 4}, NTuple{1, 1, 6, 0}));
  CHECK(!componentwise_leq(NTuple{1, 1, 6, 0}, NTuple{1, 1, 1, 4}));
  CHECK_THROWS_AS(componentwise_leq(NTuple{1}, NTuple{1, 2}), Error);
  CHECK(sort_tuple(NTuple{1, 5, 3, 15}) == NTuple{1, 3, 5, 15});
  CHECK(sort_tuple(NTuple{0, 0, 0, 0}) == NTuple{0, 0, 0, 0});
}

TEST_CASE("box posets") {
  auto chain = box_poset(NTuple{1});
  CHECK(chain.n == 2);
  CHECK(chain.hasse_edges().size() == 1);

  auto diamond = box_poset(NTuple{1, 1});
  CHECK(diamond.n == 4);
  CHECK(diamond.hasse_edges().size() == 4);

  auto big = box_poset(NTuple{1, 5, 7, 11});
  CHECK(big.n == 1152);
  QPoly f;
  for (int i = 0; i < big.n; ++i) f += QPoly::monomial(1, big.rank[i]);
  CHECK(f == q_analog(2) * q_analog(6) * q_analog(8) * q_analog(12));
}

TEST_CASE("rank truncation") {
  auto big = box_poset(NTuple{1, 5, 7, 11});
  auto c0 = truncate_by_rank(big, 0);
  CHECK(c0.n == 1);
  CHECK(c0.label[0] == NTuple{0, 0, 0, 0});

  auto c6 = truncate_by_rank(big, 6);
  auto r7 = truncate_by_rank(big, 7, /*exact=*/true);
  CHECK(c6.n == 139);
  CHECK(r7.n == 60);

  // layer sizes match the group's layer sizes
  auto t = build_group(CoxeterSystem::F4());
  for (int l = 0; l <= 6; ++l) {
    int box_layer = truncate_by_rank(big, l, true).n;
    CHECK(box_layer == t.layer[l].count());
  }
}

TEST_CASE("hasse edges against transitive closure") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    int k = 1 + int(rng() % 3);
    std::vector<int> caps(k);
    for (auto& c : caps) c = 1 + int(rng() % 3);
    auto p = box_poset(NTuple(caps));
    // closure of the cover relation must rebuild leq exactly
    std::vector<DynBitset> closure(p.n, DynBitset(p.n));
    std::vector<int> order(p.n);
    for (int i = 0; i < p.n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return p.rank[a] < p.rank[b]; });
    auto edges = p.hasse_edges();
    for (int i : order) {
      closure[i].set(i);
      for (auto [lo, hi] : edges)
        if (hi == i) closure[i] |= closure[lo];
    }
    for (int i = 0; i < p.n; ++i) CHECK(closure[i] == p.below[i]);
  }
}

TEST_CASE("lattice reports") {
  auto chain = box_poset(NTuple{4});
  auto r = lattice_report(chain);
  CHECK(r.is_lattice);
  CHECK(r.is_distributive == true);

  // box posets are distributive lattices
  std::mt19937 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> caps(1 + rng() % 3);
    for (auto& c : caps) c = 1 + int(rng() % 2);
    auto p = box_poset(NTuple(caps));
    if (p.n > 64) continue;
    auto rep = lattice_report(p);
    CHECK(rep.is_lattice);
    CHECK(rep.is_distributive == true);
  }

  // two incomparable atoms with no bottom: not a meet-semilattice
  auto pair = tuple_poset({NTuple{1, 0}, NTuple{0, 1}});
  auto rep = lattice_report(pair);
  CHECK(!rep.is_meet_semilattice);
  CHECK(rep.meet_failure.has_value());

  // the same four tuples through the generic builder
  auto diamond = tuple_poset(
      {NTuple{0, 0}, NTuple{1, 0}, NTuple{0, 1}, NTuple{1, 1}});
  auto rep2 = lattice_report(diamond);
  CHECK(rep2.is_lattice);
  CHECK(rep2.is_distributive == true);
}

TEST_CASE("meets and joins") {
  auto p = box_poset(NTuple{2, 2});
  int a = p.index_of(NTuple{2, 0});
  int b = p.index_of(NTuple{0, 2});
  auto m = p.meet(a, b);
  auto j = p.join(a, b);
  REQUIRE(m.has_value());
  REQUIRE(j.has_value());
  CHECK(p.label[*m] == NTuple{0, 0});
  CHECK(p.label[*j] == NTuple{2, 2});
}

TEST_CASE("DOT and JSON emission are deterministic") {
  auto p = box_poset(NTuple{1, 1});
  auto dot1 = poset_to_dot(p, "diamond");
  auto dot2 = poset_to_dot(box_poset(NTuple{1, 1}), "diamond");
  CHECK(dot1 == dot2);
  CHECK(dot1.find("rankdir=BT") != std::string::npos);
  CHECK(dot1.find("t0_0 -> t0_1") != std::string::npos);

  auto j1 = poset_to_json(p).dump();
  auto j2 = poset_to_json(box_poset(NTuple{1, 1})).dump();
  CHECK(j1 == j2);
  CHECK(poset_to_json(p)["nodes"].size() == 4);
  CHECK(poset_to_json(p)["edges"].size() == 4);
}
