// Acceptance suite: one line per criterion, [PASS]/[FAIL], nonzero exit when
// anything fails.  Each check pins its expected values and tolerances in
// code; every comparison is exact.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "lehmer/cache.hpp"
#include "lehmer/certificate.hpp"
#include "lehmer/coxeter.hpp"
#include "lehmer/embedding.hpp"
#include "lehmer/emit.hpp"
#include "lehmer/multicomplex.hpp"
#include "lehmer/weakcode.hpp"
#include "oracles.hpp"

using namespace lehmer;
using nlohmann::json;

#ifndef LEHMER_TEST_DATA_DIR
#define LEHMER_TEST_DATA_DIR "tests/data"
#endif

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("[%s] %2d. %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  if (!ok) ++failures;
}

void note(const std::string& what) { std::printf("       %s\n", what.c_str()); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

using NodeSet = std::set<std::vector<int>>;
using EdgeSet = std::set<std::pair<std::vector<int>, std::vector<int>>>;

std::pair<NodeSet, EdgeSet> load_golden(const std::string& name) {
  std::ifstream in(std::string(LEHMER_TEST_DATA_DIR) + "/" + name);
  if (!in) throw Error(errc::io_error, "missing golden file " + name);
  json j;
  in >> j;
  NodeSet nodes;
  for (auto& n : j.at("nodes")) nodes.insert(n.get<std::vector<int>>());
  EdgeSet edges;
  for (auto& e : j.at("edges"))
    edges.insert({e.at(0).get<std::vector<int>>(), e.at(1).get<std::vector<int>>()});
  return {nodes, edges};
}

std::pair<NodeSet, EdgeSet> poset_sets(const FinitePoset& p) {
  NodeSet nodes;
  for (const auto& l : p.label) nodes.insert(l.c);
  EdgeSet edges;
  for (auto [lo, hi] : p.hasse_edges()) edges.insert({p.label[lo].c, p.label[hi].c});
  return {nodes, edges};
}

}  // namespace

int main() {
  auto t_total = std::chrono::steady_clock::now();
  auto f4 = build_group(CoxeterSystem::F4());
  auto auts = aut_group(f4);
  std::vector<std::vector<int>> perms(auts.perm.begin(), auts.perm.end());
  NTuple caps{1, 5, 7, 11};

  // 1. group construction
  {
    auto t0 = std::chrono::steady_clock::now();
    auto fresh = build_group(CoxeterSystem::F4());
    double dt = seconds_since(t0);
    bool ok = fresh.n == 1152 && fresh.max_length == 24 &&
              length_generating_function(fresh) ==
                  q_analog(2) * q_analog(6) * q_analog(8) * q_analog(12) &&
              dt < 5.0;
    report(1, ok,
           "F4 has 1152 elements, longest length 24, length generating function "
           "[2]q[6]q[8]q[12]q (built in " +
               std::to_string(dt) + " s, limit 5 s)");
  }

  // 2. the 264 embeddings
  std::vector<EmbeddingMap> embeddings;
  {
    auto source = truncate_by_rank(box_poset(caps), 6);
    auto t0 = std::chrono::steady_clock::now();
    embeddings = enumerate_embeddings(source, f4);
    double dt1 = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    SearchOptions opt8;
    opt8.threads = 8;
    auto with8 = enumerate_embeddings(source, f4, opt8);
    double dt8 = seconds_since(t0);
    bool ok = embeddings.size() == 264 && with8 == embeddings && dt1 <= 1800.0 && dt8 <= 300.0;
    report(2, ok,
           "enumerate_embeddings(C(6), F4) returns exactly 264 maps (" +
               std::to_string(embeddings.size()) + "; single-threaded " + std::to_string(dt1) +
               " s, 8 workers " + std::to_string(dt8) + " s, identical output)");
  }

  // 3. the non-existence certificate
  {
    auto outcome = run_obstruction(f4, caps, 6, perms);
    int single = 0;
    for (const auto& w : outcome.witnesses)
      if (w.obstructed() && w.single_family()) ++single;
    // the criterion as stated: every representative admits a single coatom
    // family with no dominating element in the rank-7 layer
    bool single_family_everywhere = single == int(outcome.witnesses.size());

    bool replay_ok = false;
    if (outcome.all_obstructed) {
      auto cert = make_certificate(f4, outcome);
      auto path = std::filesystem::temp_directory_path() / "lehmer-acceptance-cert.json";
      write_certificate(cert, f4, path.string());
      auto reread = read_certificate(path.string());
      replay_ok = verify_certificate(reread, f4).ok;
      std::filesystem::remove(path);
    }
    report(3, single_family_everywhere && replay_ok,
           "every representative admits a blocking coatom family and the certificate "
           "replays from disk");
    note("observed: " + std::to_string(single) + " of " +
         std::to_string(outcome.witnesses.size()) +
         " representatives are blocked by a single family; the remaining " +
         std::to_string(outcome.witnesses.size() - single) +
         " admit a dominating element for every family and are blocked only by the "
         "injective-extension (Hall) witness");
    note("corrected claim: all representatives obstructed one rank up = " +
         std::string(outcome.all_obstructed ? "true" : "false") +
         "; certificate replay from disk = " + std::string(replay_ok ? "ok" : "failed"));
    auto c7 = truncate_by_rank(box_poset(caps), 7);
    bool no_c7 = enumerate_embeddings(c7, f4).empty();
    note(std::string("direct check that no C(7) -> F4(7) embedding exists: ") +
         (no_c7 ? "confirmed" : "REFUTED"));
  }

  auto code = build_weak_code(f4);

  // 4. weak code verification
  {
    auto rep = verify_weak_code(code);
    bool ok = rep.condition1 && rep.image_size[0] == 1152 && rep.image_size[1] == 1152 &&
              rep.condition2 && rep.condition3;
    report(4, ok,
           "L1 and L2 are rank-preserving injections (images 1152/1152), condition 2 has "
           "no violations, condition 3 covers all of W");
  }

  // 5. the worked example
  {
    int w = f4.element_from_word({3, 2, 0, 1, 2, 3, 1, 0});
    auto mc = multicomplex_for_interval(code, w);
    std::vector<NTuple> expect = {NTuple{0, 5, 1, 1}, NTuple{1, 1, 0, 5}, NTuple{1, 1, 1, 4},
                                  NTuple{1, 1, 3, 1}, NTuple{1, 1, 6, 0}, NTuple{1, 2, 1, 2},
                                  NTuple{1, 3, 1, 1}};
    std::sort(expect.begin(), expect.end(), RankLexLess{});
    bool ok = f4.below[w].count() == 100 && eval_code(code, 1, w) == NTuple{1, 1, 6, 0} &&
              mc.maxima == expect;
    report(5, ok,
           "for w = s4 s3 s1 s2 s3 s4 s2 s1: |[e,w]| = 100, L1(w) = (1,1,6,0), and the "
           "ideal has the seven listed maxima");
  }

  // 6. interval <-> multicomplex identity, exhaustively
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int w = 0; w < f4.n && ok; ++w) {
      auto mc = multicomplex_for_interval(code, w);
      ok = mc.f_poly == poincare_polynomial(f4, w);
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 120.0;
    report(6, ok,
           "f-polynomial of multicomplex_for_interval(w) equals the Poincare polynomial "
           "for all 1152 elements (" +
               std::to_string(dt) + " s, limit 120 s)");
  }

  // 7. the pal lattice and the two figures
  {
    auto pl = build_pal_lattice(code);
    bool counts = pl.polynomials.size() == pl.unimodal.size() + 1;

    auto [sorted_nodes, sorted_edges] = poset_sets(pl.sorted_poset);
    auto [golden_sorted_nodes, golden_sorted_edges] = load_golden("pal_sorted_lattice.json");
    bool sorted_nodes_ok = sorted_nodes == golden_sorted_nodes;
    bool sorted_edges_ok = sorted_edges == golden_sorted_edges;
    bool sorted_distributive = pl.sorted_report.is_distributive == true;

    auto [image_nodes, image_edges] = poset_sets(pl.image_poset);
    auto [golden_image_nodes, golden_image_edges] = load_golden("pal_image_lattice.json");
    bool image_nodes_ok = image_nodes == golden_image_nodes;
    bool image_edges_ok = image_edges == golden_image_edges;

    int a = pl.image_poset.index_of(NTuple{0, 0, 1, 1});
    int b = pl.image_poset.index_of(NTuple{1, 2, 2, 0});
    auto m = (a >= 0 && b >= 0) ? pl.image_poset.meet(a, b) : std::nullopt;
    bool witness_ok = m.has_value() && pl.image_poset.label[*m] == NTuple{0, 0, 0, 0} &&
                      componentwise_meet(NTuple{0, 0, 1, 1}, NTuple{1, 2, 2, 0}) ==
                          NTuple{0, 0, 1, 0};

    bool ok = counts && sorted_nodes_ok && sorted_edges_ok && sorted_distributive &&
              image_nodes_ok && image_edges_ok && pl.image_report.is_lattice &&
              pl.bruhat_isomorphic && witness_ok;
    report(7, ok,
           "|Pal(F4)| = |U(L1)| + 1; sorted image matches the first diagram and is a "
           "distributive lattice; raw image matches the second diagram, is a lattice, is "
           "Bruhat-isomorphic, and has the stated meet witness");
    note("sub-checks: counts=" + std::to_string(counts) +
         " sorted_nodes=" + std::to_string(sorted_nodes_ok) +
         " sorted_edges=" + std::to_string(sorted_edges_ok) +
         " sorted_distributive=" + std::to_string(sorted_distributive) +
         " image_nodes=" + std::to_string(image_nodes_ok) +
         " image_edges=" + std::to_string(image_edges_ok) +
         " image_lattice=" + std::to_string(pl.image_report.is_lattice) +
         " bruhat_iso=" + std::to_string(pl.bruhat_isomorphic) +
         " meet_witness=" + std::to_string(witness_ok));
    if (!image_edges_ok) {
      for (const auto& e : image_edges)
        if (!golden_image_edges.count(e))
          note("computed Hasse edge missing from the transcribed diagram: (" +
               tuple_text(NTuple(e.first)) + " < " + tuple_text(NTuple(e.second)) + ")");
      for (const auto& e : golden_image_edges)
        if (!image_edges.count(e))
          note("transcribed edge not a Hasse edge of the computed order: (" +
               tuple_text(NTuple(e.first)) + " < " + tuple_text(NTuple(e.second)) + ")");
    }
  }

  // 8. the second code's unimodal set
  {
    auto uni2 = unimodal_elements(code, 2);
    auto pal = pal_set(f4);
    FinitePoset sub = induced_subposet(bruhat_poset(f4), uni2);
    auto rep = lattice_report(sub);
    bool not_lattice = !rep.is_lattice;
    bool have_witness = rep.meet_failure.has_value() || rep.join_failure.has_value();
    bool ok = uni2.size() < pal.size() - 1 && not_lattice && have_witness;
    report(8, ok,
           "|U(L2)| = " + std::to_string(uni2.size()) + " < |Pal(F4)| - 1 = " +
               std::to_string(pal.size() - 1) +
               " and the Bruhat order on U(L2) is not a lattice (witness pair returned)");
    if (have_witness) {
      auto [x, y] = rep.meet_failure ? *rep.meet_failure : *rep.join_failure;
      note(std::string("witness pair without a ") + (rep.meet_failure ? "meet" : "join") + ": [" +
           f4.word_string(sub.source_id[x]) + "] and [" + f4.word_string(sub.source_id[y]) + "]");
    }
  }

  // 9. the M-sequence criterion
  {
    bool neg = !is_m_sequence({1, 3, 6, 12});
    bool agree = true;
    oracles::BruteForceMSequence oracle;
    std::vector<long long> seq;
    std::function<void()> sweep = [&] {
      if (!seq.empty() && agree) agree = is_m_sequence(seq) == oracle.exists(seq);
      if (seq.size() == 4 || !agree) return;
      for (long long v = 0; v <= 6 && agree; ++v) {
        seq.push_back(v);
        sweep();
        seq.pop_back();
      }
    };
    sweep();
    report(9, neg && agree,
           "(1,3,6,12) is not an M-sequence; criterion matches the brute-force "
           "multicomplex search on every sequence with entries <= 6 and length <= 4");
  }

  // 10. positive and negative full-code searches
  {
    auto h3 = build_group(CoxeterSystem::H3());
    auto t0 = std::chrono::steady_clock::now();
    auto h3_code = search_full_lehmer_code(h3, NTuple{1, 5, 9});
    double dt_h3 = seconds_since(t0);
    bool h3_ok = h3_code.has_value() && dt_h3 <= 600.0;
    bool h3_valid = h3_ok && is_valid_embedding(box_poset(NTuple{1, 5, 9}), h3, *h3_code);
    auto f4_code = search_full_lehmer_code(f4, caps);
    report(10, h3_ok && h3_valid && !f4_code.has_value(),
           "a full code exists for H3 onto the box (1,5,9) (" + std::to_string(dt_h3) +
               " s, limit 600 s) and none exists for F4");
  }

  // 11. the orbit example
  {
    int cs1 = f4.element_from_word({0, 1, 2, 3, 0});
    int cs2 = f4.element_from_word({0, 1, 2, 3, 1});
    int cs3 = f4.element_from_word({0, 1, 2, 3, 2});
    auto orbit = orbit_of(code, 1, cs1);
    std::vector<int> expect = {cs1, cs2, cs3};
    std::sort(expect.begin(), expect.end());
    auto uni = unimodal_elements(code, 1);
    bool ok = orbit == expect && eval_code(code, 1, cs1) == NTuple{1, 2, 1, 1} &&
              eval_code(code, 1, cs2) == NTuple{1, 1, 2, 1} &&
              eval_code(code, 1, cs3) == NTuple{1, 1, 1, 2} &&
              std::binary_search(uni.begin(), uni.end(), cs3) &&
              !std::binary_search(uni.begin(), uni.end(), cs1) &&
              !std::binary_search(uni.begin(), uni.end(), cs2);
    report(11, ok,
           "O(c s1) = {c s1, c s2, c s3} with L1 values (1,2,1,1), (1,1,2,1), (1,1,1,2) "
           "and unimodal representative c s3");
  }

  std::printf("%d of 11 criteria passed in %.1f s\n", 11 - failures, seconds_since(t_total));
  if (failures) {
    std::printf(
        "criteria 3 and 7 assert stronger statements than actually hold; the notes above "
        "give the exact discrepancies and the corrected statements, which do hold\n");
  }
  return failures == 0 ? 0 : 1;
}
