#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lehmer/bitset.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/qpoly.hpp"

/*
  Finite Coxeter groups as explicit tables.

  Elements are enumerated breadth-first through an exact reflection
  representation on simple-root coordinates: integer matrices for the
  crystallographic types (Cartan integers), and matrices over Z[phi]
  (phi = golden ratio, phi^2 = phi + 1) when an edge label 5 is present.
  No floating point anywhere, so rebuilt tables are bit-identical.

  Element ids are canonical: sorted by (length, lexicographically least
  reduced word).  The identity is id 0 and the longest element is id n-1.
*/

namespace lehmer {

struct CoxeterSystem {
  int rank = 0;
  std::vector<std::vector<int>> m;  // Coxeter matrix
  std::string name;                 // display tag: "A3", "B2", "H3", "F4", ...

  void validate() const {
    if (rank <= 0 || int(m.size()) != rank)
      throw Error(errc::wrong_type, "Coxeter matrix has wrong shape");
    for (int i = 0; i < rank; ++i) {
      if (int(m[i].size()) != rank)
        throw Error(errc::wrong_type, "Coxeter matrix has wrong shape");
      if (m[i][i] != 1) throw Error(errc::wrong_type, "m(s,s) must be 1");
      for (int j = 0; j < rank; ++j) {
        if (i != j && (m[i][j] < 2 || m[i][j] != m[j][i]))
          throw Error(errc::wrong_type, "off-diagonal entries must be symmetric and >= 2");
      }
    }
  }

  bool has_label_5() const {
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j)
        if (m[i][j] == 5) return true;
    return false;
  }

  uint64_t matrix_hash() const {
    uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&](uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(uint64_t(rank));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) mix(uint64_t(m[i][j]));
    return h;
  }

  // The path with labels 3, 4, 3 (generators s1 s2 s3 s4).
  bool is_f4_shape() const {
    if (rank != 4) return false;
    static const int want[4][4] = {{1, 3, 2, 2}, {3, 1, 4, 2}, {2, 4, 1, 3}, {2, 2, 3, 1}};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (m[i][j] != want[i][j]) return false;
    return true;
  }

  static CoxeterSystem path(const std::string& name, const std::vector<int>& labels) {
    CoxeterSystem s;
    s.name = name;
    s.rank = int(labels.size()) + 1;
    s.m.assign(s.rank, std::vector<int>(s.rank, 2));
    for (int i = 0; i < s.rank; ++i) s.m[i][i] = 1;
    for (int i = 0; i < int(labels.size()); ++i) s.m[i][i + 1] = s.m[i + 1][i] = labels[i];
    s.validate();
    return s;
  }

  static CoxeterSystem A(int n) {
    if (n < 1) throw Error(errc::wrong_type, "A_n needs n >= 1");
    return path("A" + std::to_string(n), std::vector<int>(n - 1, 3));
  }
  static CoxeterSystem B(int n) {
    if (n < 2) throw Error(errc::wrong_type, "B_n needs n >= 2");
    std::vector<int> labels(n - 1, 3);
    labels.back() = 4;  // s_{n-1} -- s_n carries the 4
    return path("B" + std::to_string(n), labels);
  }
  static CoxeterSystem F4() { return path("F4", {3, 4, 3}); }
  static CoxeterSystem H3() { return path("H3", {5, 3}); }

  static CoxeterSystem by_name(const std::string& name) {
    if (name == "F4") return F4();
    if (name == "H3") return H3();
    if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'B')) {
      int n = std::stoi(name.substr(1));
      return name[0] == 'A' ? A(n) : B(n);
    }
    throw Error(errc::wrong_type, "unknown group type '" + name + "'");
  }
};

struct GroupTable {
  CoxeterSystem system;
  int n = 0;  // |W|
  int k = 0;  // |S|
  std::vector<uint16_t> length;
  std::vector<int> right_mul_;          // n*k: w * s
  std::vector<int> left_mul_;           // n*k: s * w
  std::vector<int> inverse;             // w^{-1}
  std::vector<std::vector<int>> word;   // lexicographically least reduced word, 0-based
  std::vector<std::vector<int>> lower_covers;  // Bruhat coatoms, sorted
  std::vector<DynBitset> below;         // below[w] = { v : v <= w }, reflexive
  std::vector<DynBitset> layer;         // layer[l] = { w : length(w) = l }
  std::vector<int> reflections;         // sorted ids of { v s v^{-1} }
  int max_length = 0;

  int identity() const { return 0; }
  int longest() const { return n - 1; }

  int right_mul(int w, int s) const { return right_mul_[size_t(w) * k + s]; }
  int left_mul(int w, int s) const { return left_mul_[size_t(w) * k + s]; }

  bool bruhat_leq(int u, int w) const { return below[w].test(u); }

  bool is_right_descent(int w, int s) const { return length[right_mul(w, s)] < length[w]; }
  bool is_left_descent(int w, int s) const { return length[left_mul(w, s)] < length[w]; }

  // Product of two arbitrary elements, via the canonical word of b.
  int mul(int a, int b) const {
    int r = a;
    for (int s : word[b]) r = right_mul(r, s);
    return r;
  }

  // Apply a word (0-based generator indices) on the right of the identity.
  int element_from_word(const std::vector<int>& w) const {
    int r = identity();
    for (int s : w) {
      if (s < 0 || s >= k) throw Error(errc::bad_word, "generator index out of range");
      r = right_mul(r, s);
    }
    return r;
  }

  std::vector<int> lower_interval(int w) const { return below[w].to_vector(); }

  // Reduced word with 1-based generator indices, "s4 s3 ..." style input/output.
  std::string word_string(int w) const {
    std::string out;
    for (int s : word[w]) {
      if (!out.empty()) out += ' ';
      out += std::to_string(s + 1);
    }
    return out;
  }
};

namespace detail {

// a + b*phi with phi^2 = phi + 1; exact arithmetic for edge label 5.
struct Golden {
  int64_t a = 0, b = 0;
  friend Golden operator+(Golden x, Golden y) { return {x.a + y.a, x.b + y.b}; }
  friend Golden operator-(Golden x, Golden y) { return {x.a - y.a, x.b - y.b}; }
  friend Golden operator*(Golden x, Golden y) {
    return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
  }
  friend bool operator==(Golden x, Golden y) = default;
  static Golden from_int(int64_t v) { return {v, 0}; }
  static Golden phi() { return {0, 1}; }
  void append_key(std::vector<int64_t>& key) const {
    key.push_back(a);
    key.push_back(b);
  }
};

struct Int64Scalar {
  int64_t a = 0;
  friend Int64Scalar operator+(Int64Scalar x, Int64Scalar y) { return {x.a + y.a}; }
  friend Int64Scalar operator-(Int64Scalar x, Int64Scalar y) { return {x.a - y.a}; }
  friend Int64Scalar operator*(Int64Scalar x, Int64Scalar y) { return {x.a * y.a}; }
  friend bool operator==(Int64Scalar x, Int64Scalar y) = default;
  static Int64Scalar from_int(int64_t v) { return {v}; }
  void append_key(std::vector<int64_t>& key) const { key.push_back(a); }
};

struct KeyHash {
  size_t operator()(const std::vector<int64_t>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (int64_t x : v) {
      h ^= uint64_t(x);
      h *= 1099511628211ull;
    }
    return size_t(h);
  }
};

// Breadth-first closure of the generator matrices.  Fills size, lengths and
// the two multiplication tables with provisional ids; everything else is
// derived afterwards in canonical order.
template <class Scalar>
struct Enumerator {
  int k;
  std::vector<std::vector<Scalar>> gen;  // k matrices, k*k row-major

  std::vector<Scalar> identity_matrix() const {
    std::vector<Scalar> m(k * k, Scalar::from_int(0));
    for (int i = 0; i < k; ++i) m[i * k + i] = Scalar::from_int(1);
    return m;
  }

  std::vector<Scalar> mul(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    std::vector<Scalar> r(k * k, Scalar::from_int(0));
    for (int i = 0; i < k; ++i)
      for (int l = 0; l < k; ++l) {
        Scalar xil = x[i * k + l];
        if (xil == Scalar::from_int(0)) continue;
        for (int j = 0; j < k; ++j) r[i * k + j] = r[i * k + j] + xil * y[l * k + j];
      }
    return r;
  }

  std::vector<int64_t> key(const std::vector<Scalar>& m) const {
    std::vector<int64_t> out;
    out.reserve(m.size() * 2);
    for (const Scalar& s : m) s.append_key(out);
    return out;
  }

  void run(size_t bound, std::vector<uint16_t>& length, std::vector<int>& right,
           std::vector<int>& left) {
    std::unordered_map<std::vector<int64_t>, int, KeyHash> ids;
    std::vector<std::vector<Scalar>> mat;
    mat.push_back(identity_matrix());
    ids.emplace(key(mat[0]), 0);
    length.assign(1, 0);
    std::queue<int> bfs;
    bfs.push(0);
    right.assign(k, -1);
    while (!bfs.empty()) {
      int w = bfs.front();
      bfs.pop();
      for (int s = 0; s < k; ++s) {
        auto prod = mul(mat[w], gen[s]);
        auto [it, fresh] = ids.emplace(key(prod), int(mat.size()));
        if (fresh) {
          if (mat.size() >= bound)
            throw Error(errc::enumeration_bound,
                        "group exceeds the enumeration bound (" + std::to_string(bound) + ")");
          mat.push_back(std::move(prod));
          length.push_back(length[w] + 1);
          right.resize(mat.size() * k, -1);
          bfs.push(int(mat.size()) - 1);
        }
        right[size_t(w) * k + s] = it->second;
      }
    }
    int n = int(mat.size());
    left.assign(size_t(n) * k, -1);
    for (int w = 0; w < n; ++w)
      for (int s = 0; s < k; ++s) {
        auto it = ids.find(key(mul(gen[s], mat[w])));
        left[size_t(w) * k + s] = it->second;
      }
  }
};

}  // namespace detail

namespace detail {

// Lexicographically least reduced words, via least left descents; ids must be
// in nondecreasing length order for the memo to be filled bottom-up.
inline std::vector<std::vector<int>> canonical_words(int n, int k,
                                                     const std::vector<uint16_t>& length,
                                                     const std::vector<int>& left,
                                                     const std::vector<int>& order_by_length) {
  std::vector<std::vector<int>> word(n);
  for (int w : order_by_length) {
    if (length[w] == 0) continue;
    for (int s = 0; s < k; ++s) {
      int sw = left[size_t(w) * k + s];
      if (length[sw] < length[w]) {
        word[w].reserve(length[w]);
        word[w].push_back(s);
        word[w].insert(word[w].end(), word[sw].begin(), word[sw].end());
        break;
      }
    }
  }
  return word;
}

inline void finish_table(GroupTable& t) {
  const int n = t.n, k = t.k;

  // Canonical words, then inverses by folding the reversed word.
  std::vector<int> by_length(n);
  for (int i = 0; i < n; ++i) by_length[i] = i;
  std::stable_sort(by_length.begin(), by_length.end(),
                   [&](int a, int b) { return t.length[a] < t.length[b]; });
  t.word = canonical_words(n, k, t.length, t.left_mul_, by_length);

  t.inverse.assign(n, 0);
  for (int w = 0; w < n; ++w) {
    int r = 0;
    for (auto it = t.word[w].rbegin(); it != t.word[w].rend(); ++it) r = t.right_mul(r, *it);
    t.inverse[w] = r;
  }

  t.max_length = 0;
  for (int w = 0; w < n; ++w) t.max_length = std::max<int>(t.max_length, t.length[w]);
  int top_count = 0;
  for (int w = 0; w < n; ++w)
    if (t.length[w] == t.max_length) ++top_count;
  if (top_count != 1)
    throw Error(errc::wrong_type, "no unique longest element; system is not finite-type data");

  t.layer.assign(t.max_length + 1, DynBitset(n));
  for (int w = 0; w < n; ++w) t.layer[t.length[w]].set(w);

  // Reflections: conjugates v s v^{-1}.
  DynBitset refl(n);
  for (int v = 0; v < n; ++v)
    for (int s = 0; s < k; ++s) {
      int x = t.right_mul(v, s);
      for (auto it = t.word[v].rbegin(); it != t.word[v].rend(); ++it) x = t.right_mul(x, *it);
      refl.set(x);
    }
  t.reflections = refl.to_vector();

  // Bruhat covers: u is a coatom of w iff u = w t for a reflection t and
  // lengths differ by one.  The per-reflection permutation w -> w t is built
  // once by chaining the generator table along t's word.
  t.lower_covers.assign(n, {});
  std::vector<int> perm(n);
  for (int tid : t.reflections) {
    for (int w = 0; w < n; ++w) perm[w] = w;
    for (int s : t.word[tid])
      for (int w = 0; w < n; ++w) perm[w] = t.right_mul(perm[w], s);
    for (int w = 0; w < n; ++w)
      if (t.length[perm[w]] + 1 == t.length[w]) t.lower_covers[w].push_back(perm[w]);
  }
  for (int w = 0; w < n; ++w) {
    std::sort(t.lower_covers[w].begin(), t.lower_covers[w].end());
    if (w != t.identity() && t.lower_covers[w].empty())
      throw Error(errc::structure_failure, "non-identity element without Bruhat coatoms");
  }

  // Downsets, bottom-up.
  t.below.assign(n, DynBitset(n));
  for (int w : by_length) {
    t.below[w].set(w);
    for (int u : t.lower_covers[w]) t.below[w] |= t.below[u];
  }
}

}  // namespace detail

inline GroupTable build_group(const CoxeterSystem& system, size_t bound = 200000) {
  system.validate();
  const int k = system.rank;

  GroupTable t;
  t.system = system;
  t.k = k;

  auto run = [&](auto scalar_tag) {
    using Scalar = decltype(scalar_tag);
    detail::Enumerator<Scalar> e;
    e.k = k;
    // Generator s acts on simple-root coordinates as the identity with row s
    // replaced: entry (s,s) = -1 and (s,j) = -a_{sj}, where the Cartan-type
    // integers satisfy a_{ij} a_{ji} = 4 cos^2(pi/m(i,j)) and a_{ij} <= 0.
    e.gen.assign(k, e.identity_matrix());
    for (int s = 0; s < k; ++s) {
      for (int j = 0; j < k; ++j) {
        if (j == s) {
          e.gen[s][s * k + s] = Scalar::from_int(-1);
          continue;
        }
        int mij = system.m[s][j];
        Scalar a;  // -a_{sj}
        switch (mij) {
          case 2: a = Scalar::from_int(0); break;
          case 3: a = Scalar::from_int(1); break;
          case 4: a = Scalar::from_int(s < j ? 1 : 2); break;
          case 6: a = Scalar::from_int(s < j ? 1 : 3); break;
          case 5:
            if constexpr (std::is_same_v<Scalar, detail::Golden>) {
              a = Scalar::phi();
            } else {
              throw Error(errc::wrong_type, "label 5 needs the golden-ratio representation");
            }
            break;
          default:
            throw Error(errc::wrong_type,
                        "unsupported edge label m = " + std::to_string(mij));
        }
        e.gen[s][s * k + j] = a;
      }
    }
    e.run(bound, t.length, t.right_mul_, t.left_mul_);
  };
  if (system.has_label_5()) run(detail::Golden{});
  else run(detail::Int64Scalar{});

  t.n = int(t.length.size());

  // Renumber into the canonical (length, least reduced word) order.
  {
    std::vector<int> by_length(t.n);
    for (int i = 0; i < t.n; ++i) by_length[i] = i;
    std::stable_sort(by_length.begin(), by_length.end(),
                     [&](int a, int b) { return t.length[a] < t.length[b]; });
    auto words = detail::canonical_words(t.n, k, t.length, t.left_mul_, by_length);
    std::vector<int> order = by_length;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (t.length[a] != t.length[b]) return t.length[a] < t.length[b];
      return words[a] < words[b];
    });
    std::vector<int> new_id(t.n);
    for (int pos = 0; pos < t.n; ++pos) new_id[order[pos]] = pos;

    std::vector<uint16_t> length(t.n);
    std::vector<int> right(size_t(t.n) * k), left(size_t(t.n) * k);
    for (int w = 0; w < t.n; ++w) {
      length[new_id[w]] = t.length[w];
      for (int s = 0; s < k; ++s) {
        right[size_t(new_id[w]) * k + s] = new_id[t.right_mul_[size_t(w) * k + s]];
        left[size_t(new_id[w]) * k + s] = new_id[t.left_mul_[size_t(w) * k + s]];
      }
    }
    t.length = std::move(length);
    t.right_mul_ = std::move(right);
    t.left_mul_ = std::move(left);
  }

  detail::finish_table(t);
  return t;
}

// w = w_J * w^J with w_J in the standard parabolic subgroup generated by J,
// w^J without left descents in J, and additive lengths.  Returns (w_J, w^J).
inline std::pair<int, int> parabolic_decompose(const GroupTable& t, int w,
                                               const std::vector<int>& J) {
  int x = w;
  std::vector<int> prefix;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int s : J) {
      if (s < 0 || s >= t.k) throw Error(errc::bad_word, "generator index out of range in J");
      if (t.is_left_descent(x, s)) {
        prefix.push_back(s);
        x = t.left_mul(x, s);
        moved = true;
        break;
      }
    }
  }
  int wj = t.identity();
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) wj = t.left_mul(wj, *it);
  return {wj, x};
}

inline bool bruhat_leq(const GroupTable& t, int u, int w) { return t.bruhat_leq(u, w); }

inline std::vector<int> lower_interval(const GroupTable& t, int w) { return t.lower_interval(w); }

// The diagram flip s_i -> s_{k+1-i}, applied letterwise to reduced words.
// Only meaningful for the F4 Coxeter matrix (which is flip-symmetric).
inline int psi(const GroupTable& t, int w) {
  if (!t.system.is_f4_shape())
    throw Error(errc::wrong_type, "psi is defined for the F4 system only");
  int r = t.identity();
  for (int s : t.word[w]) r = t.right_mul(r, t.k - 1 - s);
  return r;
}

// The automorphism group of (F4, Bruhat order): {id, inverse, psi, psi o inverse},
// each given as a permutation of element ids.
struct PosetAutomorphisms {
  std::array<std::vector<int>, 4> perm;
  static constexpr std::array<const char*, 4> names = {"id", "inv", "psi", "psi_inv"};
};

inline PosetAutomorphisms aut_group(const GroupTable& t) {
  if (!t.system.is_f4_shape())
    throw Error(errc::wrong_type, "aut_group is defined for the F4 system only");
  PosetAutomorphisms a;
  for (auto& p : a.perm) p.resize(t.n);
  for (int w = 0; w < t.n; ++w) {
    a.perm[0][w] = w;
    a.perm[1][w] = t.inverse[w];
    a.perm[2][w] = psi(t, w);
    a.perm[3][w] = psi(t, t.inverse[w]);
  }
  return a;
}

inline QPoly poincare_polynomial(const GroupTable& t, int w) {
  std::vector<long long> coeff(t.length[w] + 1, 0);
  t.below[w].for_each([&](int v) { ++coeff[t.length[v]]; });
  return QPoly(std::move(coeff));
}

inline QPoly length_generating_function(const GroupTable& t) {
  return poincare_polynomial(t, t.longest());
}

// Exponents e_1 <= ... <= e_k, read off the factorization of the length
// generating function into q-analogues.
inline std::vector<int> exponents(const GroupTable& t) {
  auto ns = factor_q_analogues(length_generating_function(t));
  if (!ns || int(ns->size()) != t.k)
    throw Error(errc::structure_failure, "length generating function is not a q-analogue product");
  std::vector<int> e = *ns;
  for (int& x : e) --x;
  return e;
}

}  // namespace lehmer
