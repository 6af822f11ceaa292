#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lehmer/coxeter.hpp"
#include "lehmer/embedding.hpp"
#include "lehmer/emit.hpp"
#include "lehmer/errors.hpp"

/*
  Non-existence certificate: the reduced list of embeddings of the truncated
  box into the Bruhat order, each with a replayable witness that it does not
  continue one rank up.  A witness is a set of one-rank-up box tuples whose
  dominator sets (length rank+1, above every coatom image) jointly cover
  fewer elements than there are tuples, so no injective extension can exist;
  a singleton witness is a family with no dominating element at all.

  Verification needs only the certificate and the group table: it revalidates
  each embedding from the definitions and recomputes each witness inequality.
*/

namespace lehmer {

struct NonexistenceCertificate {
  std::string group;       // "F4"
  uint64_t matrix_hash = 0;
  NTuple caps;             // (1,5,7,11)
  int rank = 0;            // embeddings live on ranks <= rank
  int embedding_count = 0; // before reduction
  std::vector<ObstructionWitness> entries;
};

inline NonexistenceCertificate make_certificate(const GroupTable& t,
                                                const ObstructionOutcome& outcome) {
  if (!outcome.all_obstructed)
    throw Error(errc::certificate_failure,
                "some representative extends one rank up; no certificate exists");
  NonexistenceCertificate cert;
  cert.group = t.system.name;
  cert.matrix_hash = t.system.matrix_hash();
  cert.caps = outcome.caps;
  cert.rank = outcome.rank;
  cert.embedding_count = outcome.embedding_count;
  cert.entries = outcome.witnesses;
  return cert;
}

// The theorem pipeline: enumerate C(6) -> F4(6), reduce modulo the four poset
// automorphisms, certify non-extendability of every representative.
inline NonexistenceCertificate prove_no_lehmer_code(const GroupTable& t, SearchOptions opt = {}) {
  if (!t.system.is_f4_shape())
    throw Error(errc::wrong_type, "the non-existence pipeline is specific to F4");
  NTuple caps{1, 5, 7, 11};
  auto auts = aut_group(t);
  std::vector<std::vector<int>> perms(auts.perm.begin(), auts.perm.end());
  auto outcome = run_obstruction(t, caps, 6, perms, opt);
  return make_certificate(t, outcome);
}

inline nlohmann::json certificate_to_json(const NonexistenceCertificate& cert,
                                          const GroupTable& t) {
  FinitePoset source = truncate_by_rank(box_poset(cert.caps), cert.rank);
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& w : cert.entries) {
    nlohmann::json assignment = nlohmann::json::array();
    for (int i = 0; i < source.n; ++i)
      assignment.push_back({tuple_json(source.label[i]), w.embedding.assignment[i],
                            t.word_string(w.embedding.assignment[i])});
    nlohmann::json tops = nlohmann::json::array();
    for (const auto& top : w.tops) tops.push_back(tuple_json(top));
    entries.push_back({{"assignment", assignment},
                       {"orbit_size", w.orbit_size},
                       {"witness",
                        {{"tops", tops}, {"candidate_union_size", w.candidate_union_size}}}});
  }
  return nlohmann::json{
      {"group", cert.group},
      {"matrix_hash", cert.matrix_hash},
      {"caps", tuple_json(cert.caps)},
      {"rank", cert.rank},
      {"embedding_count", cert.embedding_count},
      {"representative_count", cert.entries.size()},
      {"representatives", entries},
      {"replay",
       "for each representative: check the assignment is an injective rank- and "
       "cover-preserving map of the rank-truncated box into Bruhat order, then for its "
       "witness tops recompute the sets {w : length(w)=rank+1, image(c) <= w for every "
       "coatom c of the top} and confirm their union has fewer elements than there are "
       "tops"}};
}

inline NonexistenceCertificate certificate_from_json(const nlohmann::json& j) {
  NonexistenceCertificate cert;
  try {
    cert.group = j.at("group").get<std::string>();
    cert.matrix_hash = j.at("matrix_hash").get<uint64_t>();
    cert.caps = NTuple(j.at("caps").get<std::vector<int>>());
    cert.rank = j.at("rank").get<int>();
    cert.embedding_count = j.at("embedding_count").get<int>();
    for (const auto& e : j.at("representatives")) {
      ObstructionWitness w;
      w.orbit_size = e.at("orbit_size").get<int>();
      for (const auto& a : e.at("assignment")) w.embedding.assignment.push_back(a.at(1).get<int>());
      for (const auto& top : e.at("witness").at("tops"))
        w.tops.push_back(NTuple(top.get<std::vector<int>>()));
      w.candidate_union_size = e.at("witness").at("candidate_union_size").get<int>();
      cert.entries.push_back(std::move(w));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(errc::io_error, std::string("malformed certificate: ") + ex.what());
  }
  return cert;
}

struct CertificateVerification {
  bool ok = false;
  std::string failure;
};

// Replays every witness against the group table; does not re-run the search.
inline CertificateVerification verify_certificate(const NonexistenceCertificate& cert,
                                                  const GroupTable& t) {
  if (cert.matrix_hash != t.system.matrix_hash())
    return {false, "certificate was produced for a different Coxeter matrix"};
  if (cert.entries.empty()) return {false, "certificate lists no representatives"};
  for (size_t i = 0; i < cert.entries.size(); ++i) {
    if (!verify_obstruction_witness(t, cert.caps, cert.rank, cert.entries[i]))
      return {false, "witness " + std::to_string(i) + " does not replay"};
  }
  return {true, ""};
}

inline void write_certificate(const NonexistenceCertificate& cert, const GroupTable& t,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(errc::io_error, "cannot write " + path);
  out << certificate_to_json(cert, t).dump(1) << "\n";
  if (!out) throw Error(errc::io_error, "short write to " + path);
}

inline NonexistenceCertificate read_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::io_error, "cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(errc::io_error, std::string("malformed certificate: ") + ex.what());
  }
  return certificate_from_json(j);
}

}  // namespace lehmer
