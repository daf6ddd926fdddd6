// Batch run over a fixture directory with a deterministic JSON report.
#ifndef NSDIAL_CORPUS_HPP
#define NSDIAL_CORPUS_HPP

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nsdial/extract.hpp"
#include "nsdial/sexpr.hpp"

namespace nsdial {

using json = nlohmann::json;

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// error object for the report; exit class 2 for parse/type, 1 otherwise
inline json error_json(const std::exception& e, int* cls = nullptr) {
  json j;
  j["message"] = e.what();
  int c = 1;
  if (auto* s = dynamic_cast<const SyntaxError*>(&e)) {
    j["kind"] = "syntax";
    j["line"] = s->line;
    j["node"] = s->node;
    c = 2;
  } else if (dynamic_cast<const TypeError*>(&e)) {
    j["kind"] = "type";
    c = 2;
  } else if (auto* p = dynamic_cast<const ProofError*>(&e)) {
    j["kind"] = std::string("proof:") + proof_error_name(p->code);
    j["node"] = p->node;
  } else if (auto* x = dynamic_cast<const ExtractError*>(&e)) {
    j["kind"] = "extract";
    j["node"] = x->node;
  } else {
    j["kind"] = "other";
  }
  if (cls) *cls = c;
  return j;
}

inline json grid_json(const Grid& g) { return {{"nat_bound", g.nat_bound}, {"len_bound", g.len_bound}}; }

inline json verdict_json(const Verdict& v) {
  json j{{"verdict", verdict_name(v.kind)}, {"points", v.points}};
  if (v.is_counterexample()) {
    json env = json::array();
    for (const auto& [n, c] : v.env) env.push_back({{"var", n}, {"value", cv_str(c)}});
    j["counterexample"] = env;
  }
  if (v.is_unknown()) j["reason"] = v.reason;
  return j;
}

namespace corpus_detail {

inline std::optional<std::string> golden(const std::filesystem::path& p, const std::string& suffix) {
  auto g = p;
  g.replace_extension(suffix + ".golden");
  if (!std::filesystem::exists(g)) return std::nullopt;
  return slurp(g);
}

inline void compare_golden(json& item, bool& ok, const std::filesystem::path& p, const std::string& suffix, const std::string& got) {
  auto g = golden(p, suffix);
  if (!g) return;
  bool same = *g == got + "\n";
  item["golden" + suffix] = same ? "match" : "mismatch";
  ok = ok && same;
}

// files named *.bad.* are expected to fail
inline bool expect_failure(const std::filesystem::path& p) { return p.stem().extension() == ".bad"; }

inline json run_term(const std::filesystem::path& p, const std::string& src, bool& ok) {
  json j;
  TermP t = read_term(src);
  Context ctx;
  j["type"] = type_str(type_check(t, ctx));
  std::string nf = term_str(normalize(t));
  j["normal_form"] = nf;
  j["roundtrip"] = alpha_eq(read_term(term_str(t)), t);
  ok = j["roundtrip"].get<bool>();
  compare_golden(j, ok, p, ".nf", nf);
  return j;
}

inline json run_formula(const std::filesystem::path& p, const std::string& src, bool& ok) {
  json j;
  FormulaP f = read_formula(src);
  check_formula(f);
  bool rt = formula_alpha_eq(read_formula(formula_str(f)), f);
  j["roundtrip"] = rt;
  ok = rt;
  for (Flavor fl : {Flavor::Dst, Flavor::U}) {
    TranslatedFormula tf = translate(f, fl);
    std::string s = translated_str(tf);
    j[flavor_name(fl)] = s;
    std::string inv = tf_invariant_violation(tf);
    if (!inv.empty()) {
      j[std::string(flavor_name(fl)) + "_invariant"] = inv;
      ok = false;
    }
    compare_golden(j, ok, p, std::string(".") + flavor_name(fl), s);
  }
  return j;
}

inline json run_proof(const std::filesystem::path& p, const std::string& src, const Grid& g, bool& ok) {
  json j;
  ProofFile pf = read_proof(src);
  j["flavor"] = flavor_name(pf.flavor);
  ProofFile again = read_proof(proof_str(pf.proof, pf.flavor));
  j["roundtrip"] = proof_str(again.proof, again.flavor) == proof_str(pf.proof, pf.flavor);
  FormulaP concl = check_proof(pf.proof, pf.flavor);
  j["conclusion"] = formula_str(concl);
  RealiserBundle b = extract(pf.proof, pf.flavor);
  j["bundle"] = bundle_str(b);
  Verdict v = verify_bundle(b, g);
  j["verify"] = verdict_json(v);
  ok = j["roundtrip"].get<bool>() && !v.is_counterexample();
  compare_golden(j, ok, p, ".bundle", bundle_str(b));
  return j;
}

inline json run_bundle(const std::string& src, const Grid& g, bool& ok) {
  json j;
  RealiserBundle b = read_bundle(src);
  j["flavor"] = flavor_name(b.flavor);
  j["roundtrip"] = bundle_str(read_bundle(bundle_str(b))) == bundle_str(b);
  Verdict v = verify_bundle(b, g);
  j["verify"] = verdict_json(v);
  if (v.is_counterexample()) j["replay"] = replay(b, v.env, g) == Truth::False ? "false" : "not-false";
  ok = j["roundtrip"].get<bool>() && !v.is_counterexample();
  return j;
}

// parse, print, parse again; printed forms must agree
inline bool roundtrip(const std::string& ext, const std::string& src) {
  if (ext == "term") return term_str(read_term(term_str(read_term(src)))) == term_str(read_term(src));
  if (ext == "f") return formula_str(read_formula(formula_str(read_formula(src)))) == formula_str(read_formula(src));
  if (ext == "proof") {
    ProofFile a = read_proof(src), b = read_proof(proof_str(a.proof, a.flavor));
    return proof_str(a.proof, a.flavor) == proof_str(b.proof, b.flavor);
  }
  return bundle_str(read_bundle(bundle_str(read_bundle(src)))) == bundle_str(read_bundle(src));
}

}  // namespace corpus_detail

struct CorpusReport {
  json doc;
  std::size_t failures = 0;
};

// one item per fixture, sorted by file name
inline CorpusReport run_corpus(const std::filesystem::path& dir, const Grid& g) {
  namespace fs = std::filesystem;
  using namespace corpus_detail;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    auto ext = e.path().extension().string();
    if (e.is_regular_file() && (ext == ".term" || ext == ".f" || ext == ".proof" || ext == ".bundle")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  CorpusReport rep;
  json items = json::array();
  std::map<std::string, std::size_t> kinds;
  for (const auto& p : files) {
    std::string ext = p.extension().string().substr(1);
    json item;
    bool ok = false;
    try {
      std::string src = slurp(p);
      if (ext == "term") item = run_term(p, src, ok);
      else if (ext == "f") item = run_formula(p, src, ok);
      else if (ext == "proof") item = run_proof(p, src, g, ok);
      else item = run_bundle(src, g, ok);
    } catch (const std::exception& e) {
      item["error"] = error_json(e);
      ok = false;
      try {
        item["roundtrip"] = roundtrip(ext, slurp(p));
      } catch (const std::exception&) {
      }
    }
    bool expected_bad = expect_failure(p);
    if (expected_bad && item.contains("verify")) {
      // a corrupted bundle passes only with a counterexample that replays to false
      ok = item["verify"]["verdict"] == "CounterexampleFound" && item.value("replay", "") == "false";
    } else if (expected_bad) {
      ok = !ok;
    }
    item["file"] = p.filename().string();
    item["kind"] = ext;
    item["expect"] = expected_bad ? "failure" : "success";
    item["ok"] = ok;
    ++kinds[ext];
    if (!ok) ++rep.failures;
    items.push_back(std::move(item));
  }
  json summary{{"items", files.size()}, {"failures", rep.failures}};
  for (auto& [k, n] : kinds) summary["by_kind"][k] = n;
  rep.doc = {{"command", "corpus run"}, {"grid", grid_json(g)}, {"items", items}, {"summary", summary}};
  rep.doc["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// report text without the timing field
inline std::string report_without_time(json doc) {
  doc.erase("wall_ms");
  return doc.dump(2);
}

}  // namespace nsdial

#endif
