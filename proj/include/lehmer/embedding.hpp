#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "lehmer/coxeter.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/ntuple.hpp"
#include "lehmer/poset.hpp"

/*
  Rank- and cover-preserving injections of a graded tuple poset into a Bruhat
  order, and the coatom obstruction that rules out extending them by one rank.

  The search walks the source in (rank, lex) order.  When node x is placed,
  all of its lower covers already have images, so the candidate set is

      layer[rank(x)]  &  upper-covers(image of c)  for each lower cover c
                      &  ~used

  computed entirely on bitsets.  Exhaustive by construction.
*/

namespace lehmer {

struct EmbeddingMap {
  std::vector<int> assignment;  // source node index -> target element id
  auto operator<=>(const EmbeddingMap&) const = default;
};

struct ObstructionFamily {
  NTuple top;                   // a tuple one rank above the embedded poset
  std::vector<NTuple> coatoms;  // its lower covers inside the box
};

struct SearchOptions {
  int threads = 1;
  // Optional processing order (source node indices); must place every node
  // after all of its lower covers.  Defaults to the canonical (rank, lex)
  // node order of the source.
  std::vector<int> order;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  bool first_only = false;
};

namespace detail {

struct TargetView {
  const GroupTable* t;
  std::vector<DynBitset> upper_covers;  // per element: { w : v is a coatom of w }

  explicit TargetView(const GroupTable& table) : t(&table) {
    upper_covers.assign(t->n, DynBitset(t->n));
    for (int w = 0; w < t->n; ++w)
      for (int u : t->lower_covers[w]) upper_covers[u].set(w);
  }
};

struct SearchFrame {
  const FinitePoset* source;
  const TargetView* target;
  std::vector<int> order;                    // processing order of source nodes
  std::vector<std::vector<int>> placed_covers;  // per order position: order-positions of lower covers

  SearchFrame(const FinitePoset& src, const TargetView& tgt, std::vector<int> ord)
      : source(&src), target(&tgt), order(std::move(ord)) {
    std::vector<int> pos_of(src.n, -1);
    placed_covers.resize(order.size());
    for (size_t p = 0; p < order.size(); ++p) {
      int x = order[p];
      for (int c : src.coatoms(x)) {
        if (pos_of[c] < 0)
          throw Error(errc::shape_mismatch, "processing order places a node before its covers");
        placed_covers[p].push_back(pos_of[c]);
      }
      pos_of[x] = int(p);
    }
  }

  DynBitset candidates(size_t pos, const std::vector<int>& image, const DynBitset& used) const {
    int x = order[pos];
    int r = source->rank[x];
    if (r >= int(target->t->layer.size())) return DynBitset(target->t->n);
    DynBitset cand = target->t->layer[r];
    for (int cpos : placed_covers[pos]) cand &= target->upper_covers[image[cpos]];
    cand.andnot(used);
    return cand;
  }

  // Rank-boundary lookahead: when the next node starts a new rank, require a
  // nonempty candidate set (ignoring usedness) for every node of that rank.
  // Sound because candidate sets only shrink; this is what makes the
  // exhaustive no-completion runs terminate quickly.
  bool rank_feasible(size_t pos, const std::vector<int>& image) const {
    int r = source->rank[order[pos]];
    if (pos > 0 && source->rank[order[pos - 1]] == r) return true;
    for (size_t q = pos; q < order.size() && source->rank[order[q]] == r; ++q) {
      if (r >= int(target->t->layer.size())) return false;
      DynBitset cand = target->t->layer[r];
      for (int cpos : placed_covers[q]) cand &= target->upper_covers[image[cpos]];
      if (cand.none()) return false;
    }
    return true;
  }
};

inline void dfs(const SearchFrame& frame, size_t pos, std::vector<int>& image, DynBitset& used,
                std::vector<EmbeddingMap>& out, const SearchOptions& opt, long long& nodes,
                bool& stop) {
  if (stop) return;
  if (opt.deadline && (++nodes & 0xfff) == 0 &&
      std::chrono::steady_clock::now() > *opt.deadline)
    throw Error(errc::time_budget_exceeded, "embedding search exceeded the time budget");
  if (pos == frame.order.size()) {
    // Report images in source node order, not processing order.
    std::vector<int> assign(frame.order.size());
    for (size_t p = 0; p < frame.order.size(); ++p) assign[frame.order[p]] = image[p];
    out.push_back(EmbeddingMap{std::move(assign)});
    if (opt.first_only) stop = true;
    return;
  }
  if (!frame.rank_feasible(pos, image)) return;
  DynBitset cand = frame.candidates(pos, image, used);
  for (int w = cand.next(); w >= 0; w = cand.next(w + 1)) {
    image[pos] = w;
    used.set(w);
    dfs(frame, pos + 1, image, used, out, opt, nodes, stop);
    used.reset(w);
    if (stop) return;
  }
}

inline std::vector<int> default_order(const FinitePoset& p) {
  std::vector<int> order(p.n);
  for (int i = 0; i < p.n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return p.rank[a] < p.rank[b]; });
  return order;
}

}  // namespace detail

// Every injection of `source` into the Bruhat order of `target` that
// preserves rank and sends covers to covers.  Output is duplicate-free and
// sorted by assignment vector; it does not depend on thread count or on the
// processing order chosen in `opt`.
inline std::vector<EmbeddingMap> enumerate_embeddings(const FinitePoset& source,
                                                      const GroupTable& target,
                                                      SearchOptions opt = {}) {
  int bottoms = 0;
  for (int i = 0; i < source.n; ++i)
    if (source.rank[i] == 0) ++bottoms;
  if (source.n == 0 || bottoms != 1)
    throw Error(errc::shape_mismatch, "source poset must be graded with a unique bottom");

  detail::TargetView view(target);
  std::vector<int> order = opt.order.empty() ? detail::default_order(source) : opt.order;
  detail::SearchFrame frame(source, view, order);

  std::vector<EmbeddingMap> all;
  long long nodes = 0;
  bool stop = false;
  if (opt.threads <= 1) {
    std::vector<int> image(order.size(), -1);
    DynBitset used(target.n);
    detail::dfs(frame, 0, image, used, all, opt, nodes, stop);
  } else {
    // Split work at the end of the first two rank layers (bottom plus atoms):
    // enumerate those partial placements, then farm the tails out round-robin.
    size_t split = 0;
    while (split < order.size() && source.rank[order[split]] <= 1) ++split;
    struct Prefix {
      std::vector<int> image;
      DynBitset used;
    };
    std::vector<Prefix> prefixes;
    {
      std::vector<int> image(order.size(), -1);
      DynBitset used(target.n);
      std::function<void(size_t)> gen = [&](size_t pos) {
        if (pos == split) {
          prefixes.push_back({image, used});
          return;
        }
        DynBitset cand = frame.candidates(pos, image, used);
        for (int w = cand.next(); w >= 0; w = cand.next(w + 1)) {
          image[pos] = w;
          used.set(w);
          gen(pos + 1);
          used.reset(w);
        }
      };
      gen(0);
    }
    int nthreads = std::min(opt.threads, int(std::max<size_t>(prefixes.size(), 1)));
    std::vector<std::vector<EmbeddingMap>> results(prefixes.size());
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nthreads);
    for (int ti = 0; ti < nthreads; ++ti) {
      pool.emplace_back([&, ti] {
        try {
          for (size_t i = next.fetch_add(1); i < prefixes.size(); i = next.fetch_add(1)) {
            auto image = prefixes[i].image;
            auto used = prefixes[i].used;
            long long local_nodes = 0;
            bool local_stop = false;
            detail::dfs(frame, split, image, used, results[i], opt, local_nodes, local_stop);
          }
        } catch (...) {
          errors[ti] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (auto& r : results)
      for (auto& m : r) all.push_back(std::move(m));
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

// Validity of a single map, checked from the definitions (independent of the
// search pruning): injective, rank-preserving, covers to covers.
inline bool is_valid_embedding(const FinitePoset& source, const GroupTable& target,
                               const EmbeddingMap& e) {
  if (int(e.assignment.size()) != source.n) return false;
  DynBitset seen(target.n);
  for (int x = 0; x < source.n; ++x) {
    int w = e.assignment[x];
    if (w < 0 || w >= target.n || seen.test(w)) return false;
    seen.set(w);
    if (target.length[w] != source.rank[x]) return false;
  }
  for (int x = 0; x < source.n; ++x)
    for (int c : source.coatoms(x)) {
      const auto& lc = target.lower_covers[e.assignment[x]];
      if (!std::binary_search(lc.begin(), lc.end(), e.assignment[c])) return false;
    }
  return true;
}

struct ReducedEmbeddings {
  std::vector<EmbeddingMap> representatives;  // lexicographic orbit minima, sorted
  std::vector<int> orbit_size;                // parallel to representatives
};

// One representative per orbit of E -> phi o E over the given automorphisms
// (permutations of target ids).  The representative is the lexicographically
// least assignment vector of the orbit.
inline ReducedEmbeddings reduce_by_automorphism(const std::vector<EmbeddingMap>& embeddings,
                                                const std::vector<std::vector<int>>& auts) {
  std::map<std::vector<int>, int> orbit_count;
  for (const auto& e : embeddings) {
    std::vector<std::vector<int>> images;
    for (const auto& phi : auts) {
      std::vector<int> v(e.assignment.size());
      for (size_t i = 0; i < v.size(); ++i) v[i] = phi[e.assignment[i]];
      images.push_back(std::move(v));
    }
    auto rep = *std::min_element(images.begin(), images.end());
    ++orbit_count[std::move(rep)];
  }
  ReducedEmbeddings out;
  for (auto& [rep, count] : orbit_count) {
    out.representatives.push_back(EmbeddingMap{rep});
    out.orbit_size.push_back(count);
  }
  return out;
}

// One family per box tuple of rank `top_rank`: the tuple together with its
// lower covers (all of which lie in the box and have rank top_rank - 1).
inline std::vector<ObstructionFamily> obstruction_families(const NTuple& caps, int top_rank) {
  std::vector<ObstructionFamily> out;
  for (const NTuple& x : box_tuples(caps)) {
    if (x.rank() != top_rank) continue;
    out.push_back(ObstructionFamily{x, decrements(x)});
  }
  return out;
}

// Smallest element of length = rank(fam.top) dominating every coatom image,
// if one exists.  `tuple_index` maps a tuple to its node in the embedded
// source poset.
template <class TupleIndex>
inline std::optional<int> check_extension(const EmbeddingMap& e, const ObstructionFamily& fam,
                                          const GroupTable& target, TupleIndex&& tuple_index) {
  int r = fam.top.rank();
  if (r >= int(target.layer.size())) return std::nullopt;
  std::vector<int> images;
  for (const NTuple& c : fam.coatoms) {
    int idx = tuple_index(c);
    if (idx < 0) throw Error(errc::shape_mismatch, "coatom missing from the embedded poset");
    images.push_back(e.assignment[idx]);
  }
  for (int w = target.layer[r].next(); w >= 0; w = target.layer[r].next(w + 1)) {
    bool all = true;
    for (int v : images)
      if (!target.below[w].test(v)) {
        all = false;
        break;
      }
    if (all) return w;
  }
  return std::nullopt;
}

// The set of length-(rank(top)) elements dominating every coatom image.
// Lengths differ by one, so domination is exactly a Bruhat cover here.
inline DynBitset extension_candidates(const EmbeddingMap& e, const ObstructionFamily& fam,
                                      const GroupTable& target, const FinitePoset& source) {
  int r = fam.top.rank();
  DynBitset cand(target.n);
  if (r >= int(target.layer.size())) return cand;
  cand = target.layer[r];
  for (const NTuple& c : fam.coatoms) {
    int idx = source.index_of(c);
    if (idx < 0) throw Error(errc::shape_mismatch, "coatom missing from the embedded poset");
    int v = e.assignment[idx];
    DynBitset dom(target.n);
    cand.for_each([&](int w) {
      if (target.below[w].test(v)) dom.set(w);
    });
    cand &= dom;
  }
  return cand;
}

// Non-extendability witness for one embedding: a set S of one-rank-up box
// tuples whose dominator sets cannot be hit injectively, certified by Hall's
// condition |union of dominator sets| < |S|.  A single family with no
// dominating element at all is the |S| = 1 case.
struct ObstructionWitness {
  EmbeddingMap embedding;  // orbit representative
  int orbit_size = 0;
  std::vector<NTuple> tops;          // empty when the embedding extends
  int candidate_union_size = 0;      // strictly less than tops.size() when obstructed
  bool obstructed() const { return !tops.empty(); }
  bool single_family() const { return tops.size() == 1; }
};

struct ObstructionOutcome {
  NTuple caps;
  int rank = 0;  // embeddings live on ranks <= rank; families sit at rank + 1
  int embedding_count = 0;
  std::vector<ObstructionWitness> witnesses;  // one per representative
  bool all_obstructed = false;
};

namespace detail {

// Maximum bipartite matching family -> candidate element, by augmenting paths.
// On failure returns the Hall violator containing the first unmatched family:
// the alternating-reachable families S with |N(S)| = |S| - 1.
struct MatchingResult {
  bool perfect = false;
  std::vector<int> violator;  // family indices
  DynBitset violator_candidates;
};

inline MatchingResult hall_matching(const std::vector<DynBitset>& cand, int universe) {
  MatchingResult res;
  std::vector<int> match_elem(universe, -1);
  std::vector<int> match_fam(cand.size(), -1);
  std::vector<char> visited(universe, 0);
  std::function<bool(int)> augment = [&](int f) -> bool {
    bool found = false;
    cand[f].for_each([&](int w) {
      if (found || visited[w]) return;
      visited[w] = 1;
      if (match_elem[w] < 0 || augment(match_elem[w])) {
        match_elem[w] = f;
        match_fam[f] = w;
        found = true;
      }
    });
    return found;
  };
  for (size_t f = 0; f < cand.size(); ++f) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(int(f))) {
      // Alternating reachability from f touches exactly the families that
      // pin down the deficiency.
      res.violator_candidates = DynBitset(universe);
      res.violator.push_back(int(f));
      for (int w = 0; w < universe; ++w)
        if (visited[w]) {
          res.violator_candidates.set(w);
          res.violator.push_back(match_elem[w]);
        }
      std::sort(res.violator.begin(), res.violator.end());
      return res;
    }
  }
  res.perfect = true;
  return res;
}

}  // namespace detail

// The full pipeline at one rank: enumerate every embedding of the truncated
// box, reduce modulo the given automorphisms, and certify per representative
// that the embedding cannot be continued one rank up: first by a single
// coatom family with no dominating element, else by a Hall violator over the
// dominator sets of all one-rank-up tuples.
inline ObstructionOutcome run_obstruction(const GroupTable& target, const NTuple& caps, int rank,
                                          const std::vector<std::vector<int>>& auts,
                                          SearchOptions opt = {}) {
  ObstructionOutcome out;
  out.caps = caps;
  out.rank = rank;
  FinitePoset source = truncate_by_rank(box_poset(caps), rank);
  auto embeddings = enumerate_embeddings(source, target, opt);
  out.embedding_count = int(embeddings.size());
  auto reduced = reduce_by_automorphism(embeddings, auts);
  auto families = obstruction_families(caps, rank + 1);
  out.all_obstructed = true;
  for (size_t i = 0; i < reduced.representatives.size(); ++i) {
    ObstructionWitness w;
    w.embedding = reduced.representatives[i];
    w.orbit_size = reduced.orbit_size[i];
    std::vector<DynBitset> cand;
    cand.reserve(families.size());
    bool found_single = false;
    for (const auto& fam : families) {
      cand.push_back(extension_candidates(w.embedding, fam, target, source));
      if (cand.back().none()) {
        w.tops = {fam.top};
        w.candidate_union_size = 0;
        found_single = true;
        break;
      }
    }
    if (!found_single) {
      auto match = detail::hall_matching(cand, target.n);
      if (!match.perfect) {
        for (int f : match.violator) w.tops.push_back(families[f].top);
        w.candidate_union_size = match.violator_candidates.count();
      } else {
        out.all_obstructed = false;
      }
    }
    out.witnesses.push_back(std::move(w));
  }
  return out;
}

// Re-derivation of one witness from the group table alone: recompute the
// dominator sets of the listed tops and confirm the Hall inequality.
inline bool verify_obstruction_witness(const GroupTable& target, const NTuple& caps, int rank,
                                       const ObstructionWitness& w) {
  FinitePoset source = truncate_by_rank(box_poset(caps), rank);
  if (!is_valid_embedding(source, target, w.embedding)) return false;
  if (w.tops.empty()) return false;
  DynBitset uni(target.n);
  for (const NTuple& top : w.tops) {
    if (top.rank() != rank + 1 || !componentwise_leq(top, caps)) return false;
    ObstructionFamily fam{top, decrements(top)};
    uni |= extension_candidates(w.embedding, fam, target, source);
  }
  return uni.count() < int(w.tops.size());
}

// Exhaustive search for a full code: a bijective rank-preserving map from the
// box onto the group sending covers to covers.  Its inverse is then
// automatically order-preserving, the box being graded by saturated chains.
inline std::optional<EmbeddingMap> search_full_lehmer_code(const GroupTable& target,
                                                           const NTuple& caps,
                                                           SearchOptions opt = {}) {
  FinitePoset box = box_poset(caps);
  if (box.n != target.n)
    throw Error(errc::shape_mismatch, "box size " + std::to_string(box.n) +
                                          " does not match group size " + std::to_string(target.n));
  std::vector<int> layer_count(target.max_length + 1, 0);
  for (int i = 0; i < box.n; ++i) {
    if (box.rank[i] > target.max_length)
      throw Error(errc::shape_mismatch, "box rank exceeds the maximal length");
    ++layer_count[box.rank[i]];
  }
  for (int l = 0; l <= target.max_length; ++l)
    if (layer_count[l] != target.layer[l].count())
      throw Error(errc::shape_mismatch, "rank generating functions differ at rank " +
                                            std::to_string(l));
  opt.first_only = true;
  auto found = enumerate_embeddings(box, target, opt);
  if (found.empty()) return std::nullopt;
  return found.front();
}

}  // namespace lehmer
