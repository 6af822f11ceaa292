#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "lehmer/multicomplex.hpp"
#include "lehmer/ntuple.hpp"
#include "lehmer/poset.hpp"
#include "lehmer/qpoly.hpp"
#include "lehmer/weakcode.hpp"

/*
  Deterministic DOT and JSON emission.  Node order is always (rank, tuple
  lex); nlohmann's default json object keeps keys sorted, so every document
  here is byte-stable across runs and thread counts.
*/

namespace lehmer {

inline std::string tuple_text(const NTuple& x) {
  std::string out = "(";
  for (int i = 0; i < x.dim(); ++i) {
    if (i) out += ",";
    out += std::to_string(x.c[i]);
  }
  return out + ")";
}

inline std::string tuple_node_id(const NTuple& x) {
  std::string out = "t";
  for (int i = 0; i < x.dim(); ++i) {
    if (i) out += "_";
    out += std::to_string(x.c[i]);
  }
  return out;
}

// Hasse diagram of a labelled poset, ranked layout by rank, edges bottom-up.
inline std::string poset_to_dot(const FinitePoset& p, const std::string& name) {
  if (!p.has_labels()) throw Error(errc::structure_failure, "DOT emission needs tuple labels");
  std::string out = "digraph \"" + name + "\" {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  int max_rank = 0;
  for (int r : p.rank) max_rank = std::max(max_rank, r);
  for (int r = 0; r <= max_rank; ++r) {
    std::string layer;
    for (int i = 0; i < p.n; ++i)
      if (p.rank[i] == r) layer += " " + tuple_node_id(p.label[i]) + ";";
    if (!layer.empty()) out += "  { rank=same;" + layer + " }\n";
  }
  for (int i = 0; i < p.n; ++i)
    out += "  " + tuple_node_id(p.label[i]) + " [label=\"" + tuple_text(p.label[i]) + "\"];\n";
  for (auto [lo, hi] : p.hasse_edges())
    out += "  " + tuple_node_id(p.label[lo]) + " -> " + tuple_node_id(p.label[hi]) + ";\n";
  out += "}\n";
  return out;
}

inline nlohmann::json tuple_json(const NTuple& x) { return nlohmann::json(x.c); }

inline nlohmann::json poset_to_json(const FinitePoset& p) {
  if (!p.has_labels()) throw Error(errc::structure_failure, "JSON emission needs tuple labels");
  nlohmann::json nodes = nlohmann::json::array();
  for (int i = 0; i < p.n; ++i) nodes.push_back(tuple_json(p.label[i]));
  nlohmann::json edges = nlohmann::json::array();
  for (auto [lo, hi] : p.hasse_edges())
    edges.push_back({tuple_json(p.label[lo]), tuple_json(p.label[hi])});
  return nlohmann::json{{"nodes", nodes}, {"edges", edges}};
}

inline nlohmann::json qpoly_json(const QPoly& p) { return nlohmann::json(p.c); }

inline nlohmann::json multicomplex_json(const IntervalMulticomplex& mc, const GroupTable& t) {
  nlohmann::json maxima = nlohmann::json::array();
  for (const auto& m : mc.maxima) maxima.push_back(tuple_json(m));
  nlohmann::json ideal = nlohmann::json::array();
  for (const auto& x : rank_lex_sorted(mc.ideal)) ideal.push_back(tuple_json(x));
  return nlohmann::json{{"element", t.word_string(mc.element)},
                        {"code", mc.which},
                        {"automorphism", PosetAutomorphisms::names[mc.aut]},
                        {"size", mc.ideal.size()},
                        {"maxima", maxima},
                        {"ideal", ideal},
                        {"f_polynomial", qpoly_json(mc.f_poly)},
                        {"f_polynomial_text", to_string(mc.f_poly)}};
}

inline nlohmann::json lattice_report_json(const LatticeReport& r, const FinitePoset& p) {
  nlohmann::json j{{"is_meet_semilattice", r.is_meet_semilattice},
                   {"is_join_semilattice", r.is_join_semilattice},
                   {"is_lattice", r.is_lattice}};
  if (r.is_distributive) j["is_distributive"] = *r.is_distributive;
  auto pair_json = [&](std::pair<int, int> w) {
    return nlohmann::json{tuple_json(p.label[w.first]), tuple_json(p.label[w.second])};
  };
  if (r.meet_failure) j["meet_failure"] = pair_json(*r.meet_failure);
  if (r.join_failure) j["join_failure"] = pair_json(*r.join_failure);
  if (r.distributivity_failure)
    j["distributivity_failure"] = {tuple_json(p.label[(*r.distributivity_failure)[0]]),
                                   tuple_json(p.label[(*r.distributivity_failure)[1]]),
                                   tuple_json(p.label[(*r.distributivity_failure)[2]])};
  return j;
}

inline nlohmann::json pal_lattice_json(const PalLattice& pl, const GroupTable& t) {
  nlohmann::json polys = nlohmann::json::array();
  for (const auto& p : pl.polynomials)
    polys.push_back({{"coeffs", qpoly_json(p)}, {"text", to_string(p)}});
  nlohmann::json unimodal = nlohmann::json::array();
  for (int w : pl.unimodal) unimodal.push_back(t.word_string(w));
  return nlohmann::json{{"polynomials", polys},
                        {"unimodal_elements", unimodal},
                        {"unimodal_count", pl.unimodal.size()},
                        {"principal_count", pl.principal_count},
                        {"principal_meet_semilattice", pl.principal_meet_semilattice},
                        {"principal_plus_top_lattice", pl.principal_plus_top_lattice},
                        {"bruhat_isomorphic", pl.bruhat_isomorphic},
                        {"sorted_image",
                         {{"poset", poset_to_json(pl.sorted_poset)},
                          {"report", lattice_report_json(pl.sorted_report, pl.sorted_poset)}}},
                        {"image",
                         {{"poset", poset_to_json(pl.image_poset)},
                          {"report", lattice_report_json(pl.image_report, pl.image_poset)}}}};
}

inline nlohmann::json weak_verify_json(const WeakVerifyReport& r, const GroupTable& t) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (int w = 0; w < int(r.witness.size()); ++w)
    witnesses.push_back({{"element", t.word_string(w)},
                         {"code", r.witness[w].first},
                         {"automorphism", r.witness[w].second < 0
                                              ? "none"
                                              : PosetAutomorphisms::names[r.witness[w].second]}});
  nlohmann::json violations = nlohmann::json::array();
  for (auto [which, w] : r.condition2_violations)
    violations.push_back({{"code", which}, {"element", t.word_string(w)}});
  return nlohmann::json{
      {"condition1",
       {{"holds", r.condition1},
        {"image_size_l1", r.image_size[0]},
        {"image_size_l2", r.image_size[1]},
        {"rank_preserving_l1", r.rank_preserving[0]},
        {"rank_preserving_l2", r.rank_preserving[1]}}},
      {"condition2",
       {{"holds", r.condition2},
        {"violations", violations},
        {"principal_count_l1", r.principal[0].size()},
        {"principal_count_l2", r.principal[1].size()}}},
      {"condition3", {{"holds", r.condition3}, {"witnesses", witnesses}}}};
}

}  // namespace lehmer
