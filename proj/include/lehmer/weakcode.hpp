#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lehmer/coxeter.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/multicomplex.hpp"
#include "lehmer/ntuple.hpp"
#include "lehmer/poset.hpp"
#include "lehmer/qpoly.hpp"

/*
  The weak code machinery for F4.

  W factors as X3 X1 X2 (Y1 u Y2): the triple products run over the parabolic
  subgroup generated by {s1,s2,s3} (type B3, 48 elements) and Y1 u Y2 are the
  24 minimal coset representatives.  Every element w then has a unique
  length-additive factorization w = x3 x1 x2 u, and the two codes read the
  part lengths off in different coordinate orders:

      L1(x3 x1 x2 u) = (l(x1), l(x3), l(x2), l(u))        u in Y1
                       (l(x1), l(x3), l(u),  l(x2))       u in Y2
      L2(x3 x1 x2 u) = (l(x1), l(x3), l(x2), l(u))        u in Y1
                       (l(x1), l(x3), l(x2)+4, l(u)-4)    u in Y2

  Both are rank-preserving injections into the box [1]x[5]x[11]x[15].
*/

namespace lehmer {

struct ChainFamily {
  // Saturated Bruhat chains, as reduced words in 1-based generator indices.
  std::vector<std::vector<int>> x1, x2, x3, y1, y2;

  static ChainFamily f4() {
    ChainFamily c;
    c.x1 = {{}, {2}};
    c.x2 = {{}, {3}, {3, 2}, {3, 2, 3}};
    c.x3 = {{}, {1}, {2, 1}, {3, 2, 1}, {2, 3, 2, 1}, {1, 2, 3, 2, 1}};
    c.y1 = {{},
            {4},
            {4, 3},
            {4, 3, 2},
            {4, 3, 2, 1},
            {4, 3, 2, 3, 1},
            {4, 3, 2, 3, 1, 2},
            {4, 3, 2, 3, 1, 2, 3},
            {4, 3, 2, 3, 1, 2, 3, 4},
            {4, 3, 2, 3, 1, 2, 3, 4, 3},
            {4, 3, 2, 3, 1, 2, 3, 4, 3, 2},
            {4, 3, 2, 3, 1, 2, 3, 4, 3, 2, 3},
            {4, 3, 2, 3, 1, 2, 3, 4, 3, 2, 3, 1},
            {4, 3, 2, 3, 1, 2, 3, 4, 3, 2, 3, 1, 2},
            {4, 3, 2, 3, 1, 2, 3, 4, 3, 2, 3, 1, 2, 3},
            {4, 3, 2, 3, 1, 2, 3, 4, 3, 2, 3, 1, 2, 3, 4}};
    c.y2 = {{4, 3, 2, 3},
            {4, 3, 2, 3, 4},
            {4, 3, 2, 3, 4, 1},
            {4, 3, 2, 3, 4, 1, 2},
            {4, 3, 2, 3, 4, 1, 2, 3},
            {4, 3, 2, 3, 4, 1, 2, 3, 2},
            {4, 3, 2, 3, 4, 1, 2, 3, 2, 1},
            {4, 3, 2, 3, 1, 2, 3, 4, 3, 2, 1}};
    return c;
  }
};

namespace detail {

inline std::vector<int> chain_elements(const GroupTable& t,
                                       const std::vector<std::vector<int>>& words,
                                       const char* name) {
  std::vector<int> ids;
  for (const auto& w1 : words) {
    std::vector<int> w0;
    for (int g : w1) w0.push_back(g - 1);
    int id = t.element_from_word(w0);
    if (t.length[id] != w0.size())
      throw Error(errc::decomposition_failure,
                  std::string(name) + " contains a non-reduced word");
    ids.push_back(id);
  }
  for (size_t i = 1; i < ids.size(); ++i) {
    const auto& lc = t.lower_covers[ids[i]];
    if (!std::binary_search(lc.begin(), lc.end(), ids[i - 1]))
      throw Error(errc::decomposition_failure, std::string(name) + " is not a saturated chain");
  }
  return ids;
}

}  // namespace detail

// Per-element factorization data plus both code images.
struct WeakCode {
  const GroupTable* table = nullptr;
  ChainFamily chains;
  std::vector<int> x1_elems, x2_elems, x3_elems, y_elems;  // y = Y1 then Y2
  int y1_count = 0;

  // per element id: chain indices of the factorization w = x3 x1 x2 u
  std::vector<int> part_x1, part_x2, part_x3, part_u;
  std::vector<NTuple> l1, l2;
  NTuple caps{1, 5, 11, 15};

  bool in_y2(int w) const { return part_u[w] >= y1_count; }

  const NTuple& code(int which, int w) const {
    return which == 1 ? l1[w] : l2[w];
  }
};

inline WeakCode build_weak_code(const GroupTable& t) {
  if (!t.system.is_f4_shape())
    throw Error(errc::wrong_type, "the weak code is defined for the F4 system only");

  WeakCode code;
  code.table = &t;
  code.chains = ChainFamily::f4();
  code.x1_elems = detail::chain_elements(t, code.chains.x1, "X1");
  code.x2_elems = detail::chain_elements(t, code.chains.x2, "X2");
  code.x3_elems = detail::chain_elements(t, code.chains.x3, "X3");
  auto y1 = detail::chain_elements(t, code.chains.y1, "Y1");
  auto y2 = detail::chain_elements(t, code.chains.y2, "Y2");
  code.y1_count = int(y1.size());
  code.y_elems = y1;
  code.y_elems.insert(code.y_elems.end(), y2.begin(), y2.end());

  const std::vector<int> J = {0, 1, 2};

  // The 48 products x3 x1 x2 must exhaust the parabolic subgroup generated by
  // J with additive lengths; that makes the factorization a two-step lookup.
  std::map<int, std::array<int, 3>> parabolic_part;  // element -> (i3, i1, i2)
  for (int i3 = 0; i3 < int(code.x3_elems.size()); ++i3)
    for (int i1 = 0; i1 < int(code.x1_elems.size()); ++i1)
      for (int i2 = 0; i2 < int(code.x2_elems.size()); ++i2) {
        int w = t.mul(t.mul(code.x3_elems[i3], code.x1_elems[i1]), code.x2_elems[i2]);
        int lsum = t.length[code.x3_elems[i3]] + t.length[code.x1_elems[i1]] +
                   t.length[code.x2_elems[i2]];
        if (t.length[w] != lsum)
          throw Error(errc::decomposition_failure, "X3 X1 X2 product is not length-additive");
        if (!parabolic_part.emplace(w, std::array<int, 3>{i3, i1, i2}).second)
          throw Error(errc::decomposition_failure, "X3 X1 X2 products are not distinct");
        if (parabolic_decompose(t, w, J).second != t.identity())
          throw Error(errc::decomposition_failure, "X3 X1 X2 product leaves the parabolic subgroup");
      }

  std::map<int, int> coset_rep;  // element -> index into y_elems
  for (int ui = 0; ui < int(code.y_elems.size()); ++ui) {
    int u = code.y_elems[ui];
    if (parabolic_decompose(t, u, J).first != t.identity())
      throw Error(errc::decomposition_failure, "Y chain element has a left descent in {s1,s2,s3}");
    if (!coset_rep.emplace(u, ui).second)
      throw Error(errc::decomposition_failure, "Y1 and Y2 overlap");
  }

  code.part_x1.resize(t.n);
  code.part_x2.resize(t.n);
  code.part_x3.resize(t.n);
  code.part_u.resize(t.n);
  code.l1.resize(t.n);
  code.l2.resize(t.n);
  for (int w = 0; w < t.n; ++w) {
    auto [wj, u] = parabolic_decompose(t, w, J);
    auto pit = parabolic_part.find(wj);
    auto uit = coset_rep.find(u);
    if (pit == parabolic_part.end() || uit == coset_rep.end())
      throw Error(errc::decomposition_failure, "factorization lookup missed for element " +
                                                   std::to_string(w));
    auto [i3, i1, i2] = pit->second;
    int ui = uit->second;
    code.part_x1[w] = i1;
    code.part_x2[w] = i2;
    code.part_x3[w] = i3;
    code.part_u[w] = ui;

    int lx1 = t.length[code.x1_elems[i1]];
    int lx2 = t.length[code.x2_elems[i2]];
    int lx3 = t.length[code.x3_elems[i3]];
    int lu = t.length[code.y_elems[ui]];
    if (lx1 + lx2 + lx3 + lu != t.length[w])
      throw Error(errc::decomposition_failure, "factorization is not length-additive");
    if (ui < code.y1_count) {
      code.l1[w] = NTuple{lx1, lx3, lx2, lu};
      code.l2[w] = NTuple{lx1, lx3, lx2, lu};
    } else {
      code.l1[w] = NTuple{lx1, lx3, lu, lx2};
      code.l2[w] = NTuple{lx1, lx3, lx2 + 4, lu - 4};
    }
  }
  return code;
}

// The factorization w = x3 x1 x2 u as element ids.
inline std::array<int, 4> decompose_f4(const WeakCode& c, int w) {
  return {c.x3_elems[c.part_x3[w]], c.x1_elems[c.part_x1[w]], c.x2_elems[c.part_x2[w]],
          c.y_elems[c.part_u[w]]};
}

inline const NTuple& eval_code(const WeakCode& c, int which, int w) { return c.code(which, w); }

// { L_which(phi(v)) : v <= w }; phi is a permutation of element ids.
inline NTupleSet interval_image(const WeakCode& c, int which, int w,
                                const std::vector<int>* phi = nullptr) {
  NTupleSet out;
  c.table->below[w].for_each([&](int v) { out.insert(c.code(which, phi ? (*phi)[v] : v)); });
  return out;
}

struct WeakVerifyReport {
  std::array<int, 2> image_size{0, 0};
  std::array<bool, 2> injective{false, false};
  std::array<bool, 2> rank_preserving{false, false};
  bool condition1 = false;

  // (which, element) pairs where the image of the interval has a unique
  // maximum but is not the full box under it.
  std::vector<std::pair<int, int>> condition2_violations;
  bool condition2 = false;

  // Per element: the first (which, aut index) making the interval image a
  // multicomplex, in the fixed order which=1,2 then aut=id,inv,psi,psi_inv.
  std::vector<std::pair<int, int>> witness;
  std::vector<int> condition3_failures;
  bool condition3 = false;

  std::array<std::vector<int>, 2> principal;  // element ids with a unique maximum
};

inline WeakVerifyReport verify_weak_code(const WeakCode& c) {
  const GroupTable& t = *c.table;
  WeakVerifyReport r;

  for (int which = 1; which <= 2; ++which) {
    NTupleSet image;
    bool ranks = true;
    for (int w = 0; w < t.n; ++w) {
      const NTuple& x = c.code(which, w);
      if (x.rank() != t.length[w]) ranks = false;
      image.insert(x);
    }
    r.image_size[which - 1] = int(image.size());
    r.injective[which - 1] = int(image.size()) == t.n;
    r.rank_preserving[which - 1] = ranks;
  }
  r.condition1 = r.injective[0] && r.injective[1] && r.rank_preserving[0] && r.rank_preserving[1];

  for (int which = 1; which <= 2; ++which) {
    for (int w = 0; w < t.n; ++w) {
      NTupleSet ideal = interval_image(c, which, w);
      auto maxima = maximal_elements(ideal);
      if (maxima.size() == 1) {
        r.principal[which - 1].push_back(w);
        long long box_size = 1;
        for (int x : maxima[0].c) box_size *= x + 1;
        if ((long long)ideal.size() != box_size || !is_multicomplex(ideal).ok)
          r.condition2_violations.emplace_back(which, w);
      }
    }
  }
  r.condition2 = r.condition2_violations.empty();

  auto auts = aut_group(t);
  r.witness.assign(t.n, {-1, -1});
  for (int w = 0; w < t.n; ++w) {
    for (int which = 1; which <= 2 && r.witness[w].first < 0; ++which)
      for (int a = 0; a < 4; ++a) {
        NTupleSet ideal = interval_image(c, which, w, &auts.perm[a]);
        if (is_multicomplex(ideal).ok) {
          r.witness[w] = {which, a};
          break;
        }
      }
    if (r.witness[w].first < 0) r.condition3_failures.push_back(w);
  }
  r.condition3 = r.condition3_failures.empty();
  return r;
}

struct IntervalMulticomplex {
  int element = 0;
  int which = 0;  // 1 or 2
  int aut = 0;    // index into aut_group order: id, inv, psi, psi_inv
  NTupleSet ideal;
  std::vector<NTuple> maxima;
  QPoly f_poly;
};

// The multicomplex attached to [e, w]: first (which, aut) in the fixed order
// whose image of the interval is downward closed.  Its f-polynomial equals
// the Poincare polynomial of the interval.
inline IntervalMulticomplex multicomplex_for_interval(const WeakCode& c, int w) {
  const GroupTable& t = *c.table;
  auto auts = aut_group(t);
  for (int which = 1; which <= 2; ++which)
    for (int a = 0; a < 4; ++a) {
      NTupleSet ideal = interval_image(c, which, w, &auts.perm[a]);
      if (is_multicomplex(ideal).ok) {
        IntervalMulticomplex out;
        out.element = w;
        out.which = which;
        out.aut = a;
        out.maxima = maximal_elements(ideal);
        out.f_poly = f_polynomial(ideal);
        out.ideal = std::move(ideal);
        return out;
      }
    }
  throw Error(errc::condition_failure,
              "no (code, automorphism) pair yields a multicomplex for element " +
                  std::to_string(w));
}

inline std::vector<int> principal_elements(const WeakCode& c, int which) {
  const GroupTable& t = *c.table;
  std::vector<int> out;
  for (int w = 0; w < t.n; ++w) {
    NTupleSet ideal = interval_image(c, which, w);
    if (maximal_elements(ideal).size() == 1) out.push_back(w);
  }
  return out;
}

// Orbit of a principal element: principal elements with the same Poincare
// polynomial.  The unimodal representative carries the lex-least code image.
struct OrbitData {
  std::vector<int> principal;
  std::vector<QPoly> h;                       // indexed by element id
  std::vector<std::vector<int>> orbits;       // each sorted; orbits sorted by first element
  std::vector<int> unimodal;                  // one per orbit, sorted by element id
};

inline OrbitData orbit_data(const WeakCode& c, int which) {
  const GroupTable& t = *c.table;
  OrbitData od;
  od.principal = principal_elements(c, which);
  od.h.resize(t.n);
  for (int w = 0; w < t.n; ++w) od.h[w] = poincare_polynomial(t, w);
  std::map<QPoly, std::vector<int>> groups;
  for (int w : od.principal) groups[od.h[w]].push_back(w);
  for (auto& [hw, members] : groups) {
    std::sort(members.begin(), members.end());
    od.orbits.push_back(members);
  }
  std::sort(od.orbits.begin(), od.orbits.end());
  for (const auto& orbit : od.orbits) {
    int best = orbit.front();
    for (int w : orbit)
      if (c.code(which, w) < c.code(which, best)) best = w;
    od.unimodal.push_back(best);
  }
  std::sort(od.unimodal.begin(), od.unimodal.end());
  return od;
}

inline std::vector<int> unimodal_elements(const WeakCode& c, int which) {
  return orbit_data(c, which).unimodal;
}

inline std::vector<int> orbit_of(const WeakCode& c, int which, int w) {
  auto od = orbit_data(c, which);
  for (const auto& orbit : od.orbits)
    if (std::binary_search(orbit.begin(), orbit.end(), w)) return orbit;
  return {};
}

// Deduplicated palindromic Poincare polynomials, sorted by (degree, coeffs).
inline std::vector<QPoly> pal_set(const GroupTable& t) {
  std::set<QPoly> seen;
  for (int w = 0; w < t.n; ++w) {
    QPoly h = poincare_polynomial(t, w);
    if (is_palindromic(h)) seen.insert(std::move(h));
  }
  std::vector<QPoly> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.c < b.c;
  });
  return out;
}

struct PalLattice {
  std::vector<QPoly> polynomials;   // Pal(F4)
  std::vector<int> unimodal;        // U(L1)
  NTupleSet unimodal_image;         // { L1(w) : w in U(L1) } + top
  NTupleSet sorted_image;           // { sort(L1(w)) : w in U(L1) } + top
  FinitePoset image_poset;          // Hasse data behind the second figure
  FinitePoset sorted_poset;         // Hasse data behind the first figure
  LatticeReport image_report;
  LatticeReport sorted_report;
  bool bruhat_isomorphic = false;   // image poset vs Bruhat order on U(L1) + w0
  int principal_count = 0;
  bool principal_meet_semilattice = false;
  bool principal_plus_top_lattice = false;
};

// The lattice of palindromic Poincare polynomials and the two Hasse diagrams
// that present it: the sorted L1-image of the unimodal set (a distributive
// lattice) and the raw L1-image (isomorphic to the Bruhat order on
// U(L1) + w0).  Throws StructureFailure naming the first violated claim.
inline PalLattice build_pal_lattice(const WeakCode& c) {
  const GroupTable& t = *c.table;
  PalLattice out;
  NTuple top{1, 5, 7, 11};

  auto od = orbit_data(c, 1);
  out.unimodal = od.unimodal;
  out.principal_count = int(od.principal.size());
  for (int w : od.unimodal) {
    out.unimodal_image.insert(c.code(1, w));
    out.sorted_image.insert(sort_tuple(c.code(1, w)));
  }
  if (out.unimodal_image.size() != od.unimodal.size() ||
      out.sorted_image.size() != od.unimodal.size())
    throw Error(errc::structure_failure, "unimodal images are not distinct");
  out.unimodal_image.insert(top);
  out.sorted_image.insert(top);

  out.polynomials = pal_set(t);
  if (out.polynomials.size() != od.unimodal.size() + 1)
    throw Error(errc::structure_failure, "|Pal| != |U(L1)| + 1");

  // Every sorted-image node, top included, names the product of q-analogues
  // of its entries; these must biject onto the palindromic polynomials.
  {
    std::set<QPoly> products;
    for (const NTuple& x : out.sorted_image) {
      QPoly p = QPoly::one();
      for (int e : x.c) p *= q_analog(e + 1);
      products.insert(std::move(p));
    }
    std::set<QPoly> pal(out.polynomials.begin(), out.polynomials.end());
    if (products != pal)
      throw Error(errc::structure_failure,
                  "q-analogue products of the sorted image do not match Pal(F4)");
  }

  out.sorted_poset = tuple_poset(out.sorted_image);
  out.sorted_report = lattice_report(out.sorted_poset);
  if (!out.sorted_report.is_lattice || out.sorted_report.is_distributive != true)
    throw Error(errc::structure_failure, "sorted unimodal image is not a distributive lattice");

  out.image_poset = tuple_poset(out.unimodal_image);
  out.image_report = lattice_report(out.image_poset);
  if (!out.image_report.is_lattice)
    throw Error(errc::structure_failure, "unimodal image is not a lattice");

  // Bruhat order on U(L1) + w0 against the componentwise order on the image,
  // matched through L1 (w0 goes to the adjoined top).
  std::vector<int> members = od.unimodal;
  members.push_back(t.longest());
  auto img = [&](int w) { return w == t.longest() ? top : c.code(1, w); };
  out.bruhat_isomorphic = true;
  for (int u : members)
    for (int v : members)
      if (t.bruhat_leq(u, v) != componentwise_leq(img(u), img(v))) {
        out.bruhat_isomorphic = false;
        break;
      }
  if (!out.bruhat_isomorphic)
    throw Error(errc::structure_failure,
                "image order does not match the Bruhat order on the unimodal set");

  // Principal elements: a meet-semilattice, a lattice once the top joins in.
  {
    FinitePoset whole = bruhat_poset(t);
    std::vector<int> pr = od.principal;
    FinitePoset pr_poset = induced_subposet(whole, pr);
    LatticeReport pr_report = lattice_report(pr_poset);
    out.principal_meet_semilattice = pr_report.is_meet_semilattice;
    if (!out.principal_meet_semilattice)
      throw Error(errc::structure_failure, "principal elements are not a meet-semilattice");
    if (std::find(pr.begin(), pr.end(), t.longest()) == pr.end()) pr.push_back(t.longest());
    FinitePoset pr_top = induced_subposet(whole, pr);
    out.principal_plus_top_lattice = lattice_report(pr_top).is_lattice;
    if (!out.principal_plus_top_lattice)
      throw Error(errc::structure_failure, "principal elements plus top are not a lattice");
  }

  return out;
}

}  // namespace lehmer
