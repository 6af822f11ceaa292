#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lehmer/ntuple.hpp"
#include "lehmer/qpoly.hpp"

namespace lehmer {

struct MulticomplexCheck {
  bool ok = false;
  // On failure: the first (in lex order of the set) member x together with the
  // missing decrement y < x.
  std::optional<std::pair<NTuple, NTuple>> witness;
};

// A finite S subset of N^k is a multicomplex iff it is downward closed, which
// reduces to closure under single-coordinate decrements.
inline MulticomplexCheck is_multicomplex(const NTupleSet& s) {
  for (const NTuple& x : s) {
    for (int i = 0; i < x.dim(); ++i) {
      if (x.c[i] == 0) continue;
      NTuple y = x;
      --y.c[i];
      if (!s.count(y)) return {false, std::make_pair(x, y)};
    }
  }
  return {true, std::nullopt};
}

// Elements of s with no strictly larger element in s, sorted by (rank, lex).
// Scans by descending rank so each element is tested only against the maxima
// found so far.
inline std::vector<NTuple> maximal_elements(const NTupleSet& s) {
  std::vector<NTuple> desc(s.begin(), s.end());
  std::sort(desc.begin(), desc.end(), [](const NTuple& a, const NTuple& b) {
    int ra = a.rank(), rb = b.rank();
    if (ra != rb) return ra > rb;
    return a < b;
  });
  std::vector<NTuple> maxima;
  for (const NTuple& x : desc) {
    bool dominated = false;
    for (const NTuple& m : maxima) {
      if (componentwise_leq(x, m)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maxima.push_back(x);
  }
  std::sort(maxima.begin(), maxima.end(), RankLexLess{});
  return maxima;
}

inline std::vector<long long> f_vector(const NTupleSet& s) {
  std::vector<long long> f;
  for (const NTuple& x : s) {
    int r = x.rank();
    if (r >= int(f.size())) f.resize(r + 1, 0);
    ++f[r];
  }
  return f;
}

inline QPoly f_polynomial(const NTupleSet& s) { return QPoly(f_vector(s)); }

namespace detail {

// C(a, j), saturating at INT64_MAX.
inline long long binom_sat(long long a, int j) {
  if (j < 0 || a < j) return 0;
  __int128 r = 1;
  for (int t = 1; t <= j; ++t) {
    r = r * (a - j + t) / t;
    if (r > INT64_MAX) return INT64_MAX;
  }
  return (long long)r;
}

}  // namespace detail

// The i-th Macaulay representation of f > 0:
//   f = C(a_i, i) + C(a_{i-1}, i-1) + ... + C(a_j, j)
// with a_i > a_{i-1} > ... > a_j >= j >= 1, chosen greedily from the top.
// Returned as (a, j) pairs, top term first.
inline std::vector<std::pair<long long, int>> macaulay_decomposition(long long f, int i) {
  std::vector<std::pair<long long, int>> terms;
  for (int j = i; j >= 1 && f > 0; --j) {
    long long lo = j, hi = j;
    // C(a, j) >= a for j >= 1, so the greedy a never exceeds f + j.
    while (hi < f + j && detail::binom_sat(hi + 1, j) <= f) hi = std::min(hi * 2 + 1, f + j);
    while (lo < hi) {  // largest a with C(a, j) <= f
      long long mid = lo + (hi - lo + 1) / 2;
      if (detail::binom_sat(mid, j) <= f) lo = mid;
      else hi = mid - 1;
    }
    terms.emplace_back(lo, j);
    f -= detail::binom_sat(lo, j);
  }
  return terms;
}

// Macaulay pseudo-power f^<i>: shift every binomial in the representation.
inline long long macaulay_pseudo_power(long long f, int i) {
  if (f <= 0) return 0;
  long long bound = 0;
  for (auto [a, j] : macaulay_decomposition(f, i)) {
    long long term = detail::binom_sat(a + 1, j + 1);
    if (bound > INT64_MAX - term) return INT64_MAX;
    bound += term;
  }
  return bound;
}

// Macaulay's numerical criterion: seq is the f-vector of a (nonempty)
// multicomplex iff seq[0] == 1 and seq[i+1] <= seq[i]^<i> for all i >= 1.
inline bool is_m_sequence(std::span<const long long> seq) {
  if (seq.empty() || seq[0] != 1) return false;
  for (long long v : seq)
    if (v < 0) return false;
  for (size_t i = 1; i + 1 < seq.size(); ++i)
    if (seq[i + 1] > macaulay_pseudo_power(seq[i], int(i))) return false;
  return true;
}

inline bool is_m_sequence(const std::vector<long long>& seq) {
  return is_m_sequence(std::span<const long long>(seq));
}

}  // namespace lehmer
