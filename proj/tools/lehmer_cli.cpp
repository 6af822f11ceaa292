// lehmer: exact Bruhat-order computations for F4 and friends.
//
// Verbs: build, no-lehmer, verify-cert, weak-verify, interval, figures, pal,
// msequence, search-code.  All output is deterministic for a fixed
// configuration; --threads changes wall time only.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lehmer/cache.hpp"
#include "lehmer/certificate.hpp"
#include "lehmer/coxeter.hpp"
#include "lehmer/embedding.hpp"
#include "lehmer/emit.hpp"
#include "lehmer/multicomplex.hpp"
#include "lehmer/weakcode.hpp"

using namespace lehmer;
using nlohmann::json;

namespace {

enum class Format { text, json_fmt, dot };

struct Options {
  std::string type = "F4";
  int threads = 1;
  std::string cache_dir;
  Format format = Format::text;
  std::optional<double> time_budget;  // seconds
};

std::filesystem::path cache_dir(const Options& o) {
  if (!o.cache_dir.empty()) return o.cache_dir;
  if (const char* env = std::getenv("LEHMER_CACHE_DIR")) return env;
  return ".lehmer-cache";
}

GroupTable load_table(const Options& o) {
  return load_or_build(CoxeterSystem::by_name(o.type), cache_dir(o)).table;
}

SearchOptions search_options(const Options& o) {
  SearchOptions s;
  s.threads = o.threads;
  if (o.time_budget)
    s.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(*o.time_budget));
  return s;
}

std::vector<int> parse_word(const std::string& text, int rank) {
  std::vector<int> word;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int g;
    try {
      g = std::stoi(tok);
    } catch (...) {
      throw Error(errc::bad_word, "not a generator index: '" + tok + "'");
    }
    if (g < 1 || g > rank)
      throw Error(errc::bad_word, "generator index " + std::to_string(g) + " out of range 1.." +
                                      std::to_string(rank));
    word.push_back(g - 1);
  }
  return word;
}

void emit(const json& j, Format f) {
  if (f == Format::json_fmt) std::cout << j.dump(1) << "\n";
}

int cmd_build(const Options& o) {
  auto loaded = load_or_build(CoxeterSystem::by_name(o.type), cache_dir(o));
  const GroupTable& t = loaded.table;
  auto exps = exponents(t);
  json j{{"type", o.type},
         {"size", t.n},
         {"max_length", t.max_length},
         {"exponents", exps},
         {"reflections", t.reflections.size()},
         {"cache_file", cache_file_for(t.system, cache_dir(o)).string()},
         {"from_cache", loaded.from_cache}};
  if (o.format == Format::text) {
    std::string es;
    for (int e : exps) es += (es.empty() ? "" : ", ") + std::to_string(e);
    std::printf("%s: %d elements, longest element has length %d, exponents %s\n", o.type.c_str(),
                t.n, t.max_length, es.c_str());
    std::printf("length generating function: %s\n",
                to_string(length_generating_function(t)).c_str());
    std::printf("cache: %s%s\n", cache_file_for(t.system, cache_dir(o)).string().c_str(),
                loaded.from_cache ? " (reused)" : " (rebuilt)");
  } else {
    emit(j, o.format);
  }
  return 0;
}

int cmd_no_lehmer(const Options& o, const std::string& out_path) {
  auto t = load_table(o);
  auto cert = prove_no_lehmer_code(t, search_options(o));
  write_certificate(cert, t, out_path);
  int single = 0;
  for (const auto& e : cert.entries)
    if (e.single_family()) ++single;
  if (o.format == Format::text) {
    std::printf("embeddings of the rank-6 truncation: %d\n", cert.embedding_count);
    std::printf("automorphism classes: %zu\n", cert.entries.size());
    std::printf("blocked by a single coatom family: %d\n", single);
    std::printf("blocked by an injective-extension (Hall) witness: %zu\n",
                cert.entries.size() - single);
    std::printf("certificate written to %s\n", out_path.c_str());
  } else {
    emit(json{{"embedding_count", cert.embedding_count},
              {"representative_count", cert.entries.size()},
              {"single_family_witnesses", single},
              {"certificate", out_path}},
         o.format);
  }
  return 0;
}

int cmd_verify_cert(const Options& o, const std::string& path) {
  auto cert = read_certificate(path);
  auto system = CoxeterSystem::by_name(cert.group);
  auto t = load_or_build(system, cache_dir(o)).table;
  auto res = verify_certificate(cert, t);
  if (o.format == Format::text) {
    if (res.ok)
      std::printf("certificate %s replays: %zu representatives, all obstructed\n", path.c_str(),
                  cert.entries.size());
    else
      std::printf("certificate %s FAILS: %s\n", path.c_str(), res.failure.c_str());
  } else {
    emit(json{{"ok", res.ok}, {"failure", res.failure}}, o.format);
  }
  return res.ok ? 0 : 1;
}

int cmd_weak_verify(const Options& o) {
  auto t = load_table(o);
  auto code = build_weak_code(t);
  auto rep = verify_weak_code(code);
  if (o.format == Format::text) {
    std::printf("condition 1 (rank-preserving injections): %s (|im L1|=%d, |im L2|=%d)\n",
                rep.condition1 ? "holds" : "FAILS", rep.image_size[0], rep.image_size[1]);
    std::printf("condition 2 (principal intervals are boxes): %s (%zu violations)\n",
                rep.condition2 ? "holds" : "FAILS", rep.condition2_violations.size());
    std::printf("condition 3 (every interval realizes a multicomplex): %s (%zu failures)\n",
                rep.condition3 ? "holds" : "FAILS", rep.condition3_failures.size());
    std::printf("principal elements: %zu under L1, %zu under L2\n", rep.principal[0].size(),
                rep.principal[1].size());
  } else {
    emit(weak_verify_json(rep, t), o.format);
  }
  return (rep.condition1 && rep.condition2 && rep.condition3) ? 0 : 1;
}

int cmd_interval(const Options& o, const std::string& word_text) {
  auto t = load_table(o);
  auto code = build_weak_code(t);
  int w = t.element_from_word(parse_word(word_text, t.k));
  auto mc = multicomplex_for_interval(code, w);
  if (o.format == Format::text) {
    std::printf("element [%s], length %d, interval size %zu\n", t.word_string(w).c_str(),
                int(t.length[w]), mc.ideal.size());
    std::printf("code L%d, automorphism %s\n", mc.which, PosetAutomorphisms::names[mc.aut]);
    std::printf("f-polynomial: %s\n", to_string(mc.f_poly).c_str());
    std::printf("maxima (%zu):\n", mc.maxima.size());
    for (const auto& m : mc.maxima) std::printf("  %s\n", tuple_text(m).c_str());
  } else {
    emit(multicomplex_json(mc, t), o.format);
  }
  return 0;
}

int cmd_figures(const Options& o, const std::string& out_dir) {
  auto t = load_table(o);
  auto code = build_weak_code(t);
  auto pl = build_pal_lattice(code);
  std::filesystem::create_directories(out_dir);
  auto sorted_path = std::filesystem::path(out_dir) / "pal_sorted_lattice.dot";
  auto image_path = std::filesystem::path(out_dir) / "pal_image_lattice.dot";
  std::ofstream(sorted_path) << poset_to_dot(pl.sorted_poset, "pal_sorted_lattice");
  std::ofstream(image_path) << poset_to_dot(pl.image_poset, "pal_image_lattice");
  json j = pal_lattice_json(pl, t);
  j["sorted_image"]["dot"] = sorted_path.string();
  j["image"]["dot"] = image_path.string();
  if (o.format == Format::text) {
    std::printf("unimodal elements: %zu; palindromic polynomials: %zu; principal: %d\n",
                pl.unimodal.size(), pl.polynomials.size(), pl.principal_count);
    std::printf("sorted image: distributive lattice -> %s\n", sorted_path.string().c_str());
    std::printf("raw image: lattice, isomorphic to the Bruhat order on the unimodal set "
                "plus top -> %s\n",
                image_path.string().c_str());
  } else {
    emit(j, o.format);
  }
  return 0;
}

int cmd_pal(const Options& o) {
  auto t = load_table(o);
  auto code = build_weak_code(t);
  auto pal = pal_set(t);
  auto uni = unimodal_elements(code, 1);
  if (o.format == Format::text) {
    std::printf("palindromic Poincare polynomials: %zu (= %zu unimodal + 1)\n", pal.size(),
                uni.size());
    for (const auto& p : pal) std::printf("  %s\n", to_string(p).c_str());
  } else {
    json arr = json::array();
    for (const auto& p : pal) arr.push_back({{"coeffs", qpoly_json(p)}, {"text", to_string(p)}});
    emit(json{{"count", pal.size()}, {"unimodal_count", uni.size()}, {"polynomials", arr}},
         o.format);
  }
  return 0;
}

int cmd_msequence(const Options& o, const std::vector<long long>& seq) {
  bool ok = is_m_sequence(seq);
  if (o.format == Format::text)
    std::printf("%s\n", ok ? "an M-sequence" : "not an M-sequence");
  else
    emit(json{{"sequence", seq}, {"is_m_sequence", ok}}, o.format);
  return 0;
}

int cmd_search_code(const Options& o) {
  auto t = load_table(o);
  auto exps = exponents(t);
  NTuple caps(std::vector<int>(exps.begin(), exps.end()));
  auto found = search_full_lehmer_code(t, caps, search_options(o));
  if (o.format == Format::text) {
    if (!found) {
      std::printf("%s: no full code onto the box %s exists\n", o.type.c_str(),
                  tuple_text(caps).c_str());
    } else {
      std::printf("%s: full code onto the box %s found\n", o.type.c_str(),
                  tuple_text(caps).c_str());
      FinitePoset box = box_poset(caps);
      for (int i = 0; i < box.n; ++i)
        std::printf("  %s -> [%s]\n", tuple_text(box.label[i]).c_str(),
                    t.word_string(found->assignment[i]).c_str());
    }
  } else {
    json j{{"type", o.type}, {"caps", caps.c}, {"found", bool(found)}};
    if (found) {
      FinitePoset box = box_poset(caps);
      json assignment = json::array();
      for (int i = 0; i < box.n; ++i)
        assignment.push_back({tuple_json(box.label[i]), found->assignment[i],
                              t.word_string(found->assignment[i])});
      j["assignment"] = assignment;
    }
    emit(j, o.format);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Bruhat-order, Lehmer-code and multicomplex computations"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--type", o.type, "group type: F4, H3, A<n>, B<n>")->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads (wall time only, never output)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cache-dir", o.cache_dir,
                 "group table cache directory (default: $LEHMER_CACHE_DIR or ./.lehmer-cache)");
  app.add_option("--time-budget", o.time_budget, "abort searches after this many seconds");
  bool fmt_json = false, fmt_text = false, fmt_dot = false;
  app.add_flag("--json", fmt_json, "JSON output");
  app.add_flag("--text", fmt_text, "plain text output (default)");
  app.add_flag("--dot", fmt_dot, "DOT output where applicable");

  auto* build = app.add_subcommand("build", "build (or load) the group table and print summary");
  auto* nolehmer =
      app.add_subcommand("no-lehmer", "run the full non-existence pipeline and emit a certificate");
  std::string cert_out = "f4-no-lehmer-cert.json";
  nolehmer->add_option("-o,--output", cert_out, "certificate path")->capture_default_str();
  auto* verify = app.add_subcommand("verify-cert", "replay a certificate against the group table");
  std::string cert_in;
  verify->add_option("certificate", cert_in, "certificate JSON path")->required();
  auto* weak = app.add_subcommand("weak-verify", "verify the two-code weak Lehmer conditions");
  auto* interval =
      app.add_subcommand("interval", "multicomplex attached to a lower Bruhat interval");
  std::string word_text;
  interval->add_option("word", word_text,
                       "whitespace-separated 1-based generator indices (empty = identity)");
  auto* figures = app.add_subcommand("figures", "emit the two palindromic-lattice Hasse diagrams");
  std::string fig_dir = ".";
  figures->add_option("-o,--output-dir", fig_dir, "output directory")->capture_default_str();
  auto* pal = app.add_subcommand("pal", "list the palindromic Poincare polynomials");
  auto* mseq = app.add_subcommand("msequence", "test a sequence with the Macaulay criterion");
  std::vector<long long> seq;
  mseq->add_option("entries", seq, "sequence entries")->required();
  auto* search =
      app.add_subcommand("search-code", "exhaustive search for a full code onto the exponent box");

  CLI11_PARSE(app, argc, argv);

  if (int(fmt_json) + int(fmt_text) + int(fmt_dot) > 1) {
    std::fprintf(stderr, "choose at most one of --json/--text/--dot\n");
    return 2;
  }
  o.format = fmt_json ? Format::json_fmt : fmt_dot ? Format::dot : Format::text;

  try {
    if (build->parsed()) return cmd_build(o);
    if (nolehmer->parsed()) return cmd_no_lehmer(o, cert_out);
    if (verify->parsed()) return cmd_verify_cert(o, cert_in);
    if (weak->parsed()) return cmd_weak_verify(o);
    if (interval->parsed()) return cmd_interval(o, word_text);
    if (figures->parsed()) return cmd_figures(o, fig_dir);
    if (pal->parsed()) return cmd_pal(o);
    if (mseq->parsed()) return cmd_msequence(o, seq);
    if (search->parsed()) return cmd_search_code(o);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.code()) {
      case errc::certificate_failure:
      case errc::condition_failure:
      case errc::structure_failure:
        return 1;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
