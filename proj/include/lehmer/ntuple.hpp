#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "lehmer/errors.hpp"

namespace lehmer {

// A point of N^k.  operator<=> is lexicographic and is only used for
// canonical storage order; the partial (componentwise) order of the domain is
// componentwise_leq below.
struct NTuple {
  std::vector<int> c;

  NTuple() = default;
  NTuple(std::initializer_list<int> init) : c(init) {}
  explicit NTuple(std::vector<int> v) : c(std::move(v)) {}

  int dim() const { return int(c.size()); }
  int rank() const { return std::accumulate(c.begin(), c.end(), 0); }
  int operator[](int i) const { return c[i]; }

  auto operator<=>(const NTuple&) const = default;
};

inline bool componentwise_leq(const NTuple& x, const NTuple& y) {
  if (x.dim() != y.dim())
    throw Error(errc::length_mismatch, "componentwise order needs equal-length tuples");
  for (int i = 0; i < x.dim(); ++i)
    if (x.c[i] > y.c[i]) return false;
  return true;
}

inline NTuple componentwise_meet(const NTuple& x, const NTuple& y) {
  if (x.dim() != y.dim())
    throw Error(errc::length_mismatch, "componentwise meet needs equal-length tuples");
  NTuple m = x;
  for (int i = 0; i < m.dim(); ++i) m.c[i] = std::min(m.c[i], y.c[i]);
  return m;
}

inline NTuple sort_tuple(const NTuple& x) {
  NTuple s = x;
  std::sort(s.c.begin(), s.c.end());
  return s;
}

// All y obtained from x by decrementing one positive coordinate.
inline std::vector<NTuple> decrements(const NTuple& x) {
  std::vector<NTuple> out;
  for (int i = 0; i < x.dim(); ++i) {
    if (x.c[i] > 0) {
      NTuple y = x;
      --y.c[i];
      out.push_back(std::move(y));
    }
  }
  return out;
}

using NTupleSet = std::set<NTuple>;

// Canonical ordering used for node lists and DOT output: rank first, then lex.
struct RankLexLess {
  bool operator()(const NTuple& a, const NTuple& b) const {
    int ra = a.rank(), rb = b.rank();
    if (ra != rb) return ra < rb;
    return a < b;
  }
};

inline std::vector<NTuple> rank_lex_sorted(const NTupleSet& s) {
  std::vector<NTuple> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), RankLexLess{});
  return v;
}

// All tuples of N^k that are componentwise <= caps, sorted by (rank, lex).
inline std::vector<NTuple> box_tuples(const NTuple& caps) {
  std::vector<NTuple> out;
  NTuple cur;
  cur.c.assign(caps.dim(), 0);
  while (true) {
    out.push_back(cur);
    int i = caps.dim() - 1;
    while (i >= 0 && cur.c[i] == caps.c[i]) {
      cur.c[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur.c[i];
  }
  std::sort(out.begin(), out.end(), RankLexLess{});
  return out;
}

}  // namespace lehmer
