#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lehmer/bitset.hpp"
#include "lehmer/coxeter.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/ntuple.hpp"

namespace lehmer {

// A finite poset with per-element downsets.  Nodes may carry NTuple labels
// (box posets and figure posets do); Bruhat posets label nodes by element id
// through `source_id` instead.
struct FinitePoset {
  int n = 0;
  std::vector<DynBitset> below;  // below[i] includes i
  std::vector<DynBitset> above;  // above[i] includes i
  std::vector<int> rank;
  std::vector<NTuple> label;      // empty or size n
  std::vector<int> source_id;     // empty or size n: id in the originating table

  bool leq(int i, int j) const { return below[j].test(i); }

  bool has_labels() const { return !label.empty(); }

  int index_of(const NTuple& t) const {
    auto it = std::lower_bound(label.begin(), label.end(), t, RankLexLess{});
    if (it == label.end() || !(*it == t)) return -1;
    return int(it - label.begin());
  }

  void build_above_from_below() {
    above.assign(n, DynBitset(n));
    for (int j = 0; j < n; ++j)
      below[j].for_each([&](int i) { above[i].set(j); });
  }

  // Coatoms of i inside this poset: maximal elements of below[i] - {i}.
  std::vector<int> coatoms(int i) const {
    std::vector<int> out;
    DynBitset strict = below[i];
    strict.reset(i);
    strict.for_each([&](int j) {
      DynBitset between = above[j] & strict;
      between.reset(j);
      if (between.none()) out.push_back(j);
    });
    return out;
  }

  // All cover pairs (lower, upper), sorted by (upper, lower) index order.
  std::vector<std::pair<int, int>> hasse_edges() const {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j : coatoms(i)) edges.emplace_back(j, i);
    std::sort(edges.begin(), edges.end(),
              [](auto& a, auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
    return edges;
  }

  // Unique maximal element of the common-lower-bound set, if any.
  std::optional<int> meet(int i, int j) const {
    DynBitset common = below[i] & below[j];
    return unique_maximal(common);
  }
  std::optional<int> join(int i, int j) const {
    DynBitset common = above[i] & above[j];
    return unique_minimal(common);
  }

  std::optional<int> unique_maximal(const DynBitset& set) const {
    int found = -1;
    bool unique = true;
    set.for_each([&](int v) {
      DynBitset up = above[v] & set;
      up.reset(v);
      if (up.none()) {
        if (found >= 0) unique = false;
        else found = v;
      }
    });
    if (found < 0 || !unique) return std::nullopt;
    return found;
  }
  std::optional<int> unique_minimal(const DynBitset& set) const {
    int found = -1;
    bool unique = true;
    set.for_each([&](int v) {
      DynBitset down = below[v] & set;
      down.reset(v);
      if (down.none()) {
        if (found >= 0) unique = false;
        else found = v;
      }
    });
    if (found < 0 || !unique) return std::nullopt;
    return found;
  }
};

// Box [0,caps_1] x ... x [0,caps_k] under the componentwise order, nodes in
// (rank, lex) order.
inline FinitePoset box_poset(const NTuple& caps) {
  for (int x : caps.c)
    if (x < 0) throw Error(errc::shape_mismatch, "box caps must be nonnegative");
  FinitePoset p;
  auto tuples = box_tuples(caps);
  p.n = int(tuples.size());
  p.label = std::move(tuples);
  p.rank.resize(p.n);
  for (int i = 0; i < p.n; ++i) p.rank[i] = p.label[i].rank();
  p.below.assign(p.n, DynBitset(p.n));
  for (int j = 0; j < p.n; ++j)
    for (int i = 0; i < p.n; ++i)
      if (p.rank[i] <= p.rank[j] && componentwise_leq(p.label[i], p.label[j])) p.below[j].set(i);
  p.build_above_from_below();
  return p;
}

// Arbitrary finite set of tuples under the componentwise order.
inline FinitePoset tuple_poset(const NTupleSet& s) {
  FinitePoset p;
  p.label = rank_lex_sorted(s);
  p.n = int(p.label.size());
  p.rank.resize(p.n);
  for (int i = 0; i < p.n; ++i) p.rank[i] = p.label[i].rank();
  p.below.assign(p.n, DynBitset(p.n));
  for (int j = 0; j < p.n; ++j)
    for (int i = 0; i < p.n; ++i)
      if (p.rank[i] <= p.rank[j] && componentwise_leq(p.label[i], p.label[j])) p.below[j].set(i);
  p.build_above_from_below();
  return p;
}

// Whole group under Bruhat order; node i is element id i.
inline FinitePoset bruhat_poset(const GroupTable& t) {
  FinitePoset p;
  p.n = t.n;
  p.rank.assign(t.length.begin(), t.length.end());
  p.below = t.below;
  p.source_id.resize(t.n);
  for (int i = 0; i < t.n; ++i) p.source_id[i] = i;
  p.build_above_from_below();
  return p;
}

// Induced subposet on the given nodes (kept in the given order).
inline FinitePoset induced_subposet(const FinitePoset& p, const std::vector<int>& nodes) {
  FinitePoset q;
  q.n = int(nodes.size());
  std::vector<int> new_id(p.n, -1);
  for (int i = 0; i < q.n; ++i) new_id[nodes[i]] = i;
  q.below.assign(q.n, DynBitset(q.n));
  q.rank.resize(q.n);
  for (int i = 0; i < q.n; ++i) {
    q.rank[i] = p.rank[nodes[i]];
    p.below[nodes[i]].for_each([&](int v) {
      if (new_id[v] >= 0) q.below[i].set(new_id[v]);
    });
  }
  if (p.has_labels()) {
    q.label.resize(q.n);
    for (int i = 0; i < q.n; ++i) q.label[i] = p.label[nodes[i]];
  }
  if (!p.source_id.empty()) {
    q.source_id.resize(q.n);
    for (int i = 0; i < q.n; ++i) q.source_id[i] = p.source_id[nodes[i]];
  }
  q.build_above_from_below();
  return q;
}

// Elements of rank <= k, or of rank exactly k when `exact` is set.
inline FinitePoset truncate_by_rank(const FinitePoset& p, int k, bool exact = false) {
  std::vector<int> keep;
  for (int i = 0; i < p.n; ++i)
    if (exact ? p.rank[i] == k : p.rank[i] <= k) keep.push_back(i);
  return induced_subposet(p, keep);
}

struct LatticeReport {
  bool is_meet_semilattice = false;
  bool is_join_semilattice = false;
  bool is_lattice = false;
  std::optional<bool> is_distributive;  // unset when the poset exceeds the triple-check limit
  std::optional<std::pair<int, int>> meet_failure;
  std::optional<std::pair<int, int>> join_failure;
  std::optional<std::array<int, 3>> distributivity_failure;
};

// Pairwise meet/join existence; distributivity via the identity
// a /\ (b \/ c) = (a /\ b) \/ (a /\ c) on all triples, for posets small
// enough that the cubic sweep is free.
inline LatticeReport lattice_report(const FinitePoset& p, int distributivity_limit = 64) {
  LatticeReport r;
  r.is_meet_semilattice = true;
  r.is_join_semilattice = true;
  std::vector<int> meet_tab, join_tab;
  bool tables_ok = true;
  meet_tab.assign(size_t(p.n) * p.n, -1);
  join_tab.assign(size_t(p.n) * p.n, -1);
  for (int i = 0; i < p.n && (r.is_meet_semilattice || r.is_join_semilattice); ++i) {
    for (int j = i; j < p.n; ++j) {
      auto m = p.meet(i, j);
      auto jn = p.join(i, j);
      if (!m) {
        if (r.is_meet_semilattice) r.meet_failure = {i, j};
        r.is_meet_semilattice = false;
        tables_ok = false;
      } else {
        meet_tab[size_t(i) * p.n + j] = meet_tab[size_t(j) * p.n + i] = *m;
      }
      if (!jn) {
        if (r.is_join_semilattice) r.join_failure = {i, j};
        r.is_join_semilattice = false;
        tables_ok = false;
      } else {
        join_tab[size_t(i) * p.n + j] = join_tab[size_t(j) * p.n + i] = *jn;
      }
    }
  }
  r.is_lattice = r.is_meet_semilattice && r.is_join_semilattice;
  if (r.is_lattice && tables_ok && p.n <= distributivity_limit) {
    r.is_distributive = true;
    auto meet = [&](int a, int b) { return meet_tab[size_t(a) * p.n + b]; };
    auto join = [&](int a, int b) { return join_tab[size_t(a) * p.n + b]; };
    for (int a = 0; a < p.n && *r.is_distributive; ++a)
      for (int b = 0; b < p.n && *r.is_distributive; ++b)
        for (int c = 0; c < p.n; ++c) {
          if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) {
            r.is_distributive = false;
            r.distributivity_failure = {{a, b, c}};
            break;
          }
        }
  } else if (r.is_lattice) {
    r.is_distributive = std::nullopt;
  } else {
    r.is_distributive = false;
  }
  return r;
}

}  // namespace lehmer
