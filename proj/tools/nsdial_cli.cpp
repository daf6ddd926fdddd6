// nsdial command-line front end.
#include <CLI11.hpp>
#include <iostream>

#include "nsdial/corpus.hpp"
#include "nsdial/fixtures.hpp"

using namespace nsdial;

namespace {

struct Ctx {
  std::string json_path;
  std::string file;
};

void write_json(const Ctx& c, json doc) {
  if (c.json_path.empty()) return;
  std::ofstream out(c.json_path, std::ios::binary);
  out << doc.dump(2) << "\n";
}

// file:line: error: message (node)
int fail(const Ctx& c, const std::exception& e, json doc) {
  int cls = 1;
  json err = error_json(e, &cls);
  std::cerr << c.file;
  if (err.contains("line")) std::cerr << ":" << err["line"].get<int>();
  std::cerr << ": error: " << e.what();
  if (err.contains("node") && !err["node"].get<std::string>().empty()) std::cerr << " [node " << err["node"].get<std::string>() << "]";
  std::cerr << "\n";
  doc["file"] = c.file;
  doc["error"] = err;
  doc["exit"] = cls;
  write_json(c, doc);
  return cls;
}

Flavor pick(bool dst, bool u, Flavor dflt) { return dst ? Flavor::Dst : u ? Flavor::U : dflt; }

int check_term(const Ctx& c) {
  json doc{{"command", "check-term"}};
  try {
    TermP t = read_term(slurp(c.file));
    Context ctx;
    std::string ty = type_str(type_check(t, ctx));
    std::string nf = term_str(normalize(t));
    std::cout << nf << "\n";
    doc.update({{"file", c.file}, {"type", ty}, {"normal_form", nf}, {"exit", 0}});
    write_json(c, doc);
    return 0;
  } catch (const std::exception& e) {
    return fail(c, e, doc);
  }
}

int translate_cmd(const Ctx& c, Flavor fl) {
  json doc{{"command", "translate"}, {"flavor", flavor_name(fl)}};
  try {
    FormulaP f = read_formula(slurp(c.file));
    check_formula(f);
    std::string s = translated_str(translate(f, fl));
    std::cout << s << "\n";
    doc.update({{"file", c.file}, {"translated", s}, {"exit", 0}});
    write_json(c, doc);
    return 0;
  } catch (const std::exception& e) {
    return fail(c, e, doc);
  }
}

int check_proof_cmd(const Ctx& c) {
  json doc{{"command", "check-proof"}};
  try {
    ProofFile pf = read_proof(slurp(c.file));
    std::string concl = formula_str(check_proof(pf.proof, pf.flavor));
    std::cout << "ok " << flavor_name(pf.flavor) << " " << concl << "\n";
    doc.update({{"file", c.file}, {"flavor", flavor_name(pf.flavor)}, {"conclusion", concl}, {"exit", 0}});
    write_json(c, doc);
    return 0;
  } catch (const std::exception& e) {
    return fail(c, e, doc);
  }
}

int extract_cmd(const Ctx& c, bool dst, bool u) {
  json doc{{"command", "extract"}};
  try {
    ProofFile pf = read_proof(slurp(c.file));
    Flavor fl = pick(dst, u, pf.flavor);
    RealiserBundle b = extract(pf.proof, fl);
    std::string s = bundle_str(b);
    std::cout << s << "\n";
    doc.update({{"file", c.file}, {"flavor", flavor_name(fl)}, {"bundle", s}, {"exit", 0}});
    write_json(c, doc);
    return 0;
  } catch (const std::exception& e) {
    return fail(c, e, doc);
  }
}

int verify_cmd(const Ctx& c, const Grid& g) {
  json doc{{"command", "verify"}, {"grid", grid_json(g)}};
  try {
    RealiserBundle b = read_bundle(slurp(c.file));
    Verdict v = verify_bundle(b, g);
    std::cout << verdict_name(v.kind) << " (" << v.points << " points)\n";
    if (v.is_counterexample()) std::cout << "counterexample: " << assignment_str(v.env) << "\n";
    if (v.is_unknown()) std::cout << "reason: " << v.reason << "\n";
    int code = v.is_valid() ? 0 : 1;
    doc.update({{"file", c.file}, {"result", verdict_json(v)}, {"exit", code}});
    write_json(c, doc);
    return code;
  } catch (const std::exception& e) {
    return fail(c, e, doc);
  }
}

int corpus_cmd(const Ctx& c, const Grid& g) {
  try {
    CorpusReport r = run_corpus(c.file, g);
    for (const auto& it : r.doc["items"]) {
      std::cout << (it["ok"].get<bool>() ? "ok   " : "FAIL ") << it["file"].get<std::string>();
      if (it.contains("error")) std::cout << "  (" << it["error"]["message"].get<std::string>() << ")";
      std::cout << "\n";
    }
    std::cout << r.doc["summary"]["items"] << " items, " << r.failures << " failures\n";
    write_json(c, r.doc);
    return r.failures == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    return fail(c, e, {{"command", "corpus run"}});
  }
}

int emit_fixture(const std::string& name) {
  if (name == "doubling") std::cout << proof_str(fixtures::doubling_proof(), Flavor::U) << "\n";
  else if (name == "doubling-dst") std::cout << proof_str(fixtures::doubling_proof(Flavor::Dst), Flavor::Dst) << "\n";
  else if (name == "ir-st") std::cout << proof_str(fixtures::ir_st_proof(), Flavor::U) << "\n";
  else if (name == "ir-st-dst") std::cout << proof_str(fixtures::ir_st_proof(Flavor::Dst), Flavor::Dst) << "\n";
  else if (name == "bad-overspill") std::cout << bundle_str(fixtures::bad_overspill()) << "\n";
  else if (name == "bad-doubling") std::cout << bundle_str(fixtures::bad_doubling()) << "\n";
  else if (name == "bad-underspill") std::cout << bundle_str(fixtures::bad_underspill()) << "\n";
  else {
    std::cerr << "unknown fixture " << name << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nsdial: functional interpretations with sequences"};
  app.require_subcommand(1);
  Ctx c;
  Grid g;
  app.add_option("--json", c.json_path, "write a JSON report to PATH");

  auto* ct = app.add_subcommand("check-term", "parse, type and normalise a term");
  ct->add_option("FILE", c.file)->required();
  ct->fallthrough();

  bool dst = false, u = false;
  auto* tr = app.add_subcommand("translate", "print the translated formula");
  auto* fd = tr->add_flag("--dst", dst);
  auto* fu = tr->add_flag("--u", u);
  fd->excludes(fu);
  tr->add_option("FILE", c.file)->required();
  tr->fallthrough();

  auto* cp = app.add_subcommand("check-proof", "check a proof");
  cp->add_option("FILE", c.file)->required();
  cp->fallthrough();

  auto* ex = app.add_subcommand("extract", "extract a realiser bundle from a proof");
  auto* ed = ex->add_flag("--dst", dst);
  auto* eu = ex->add_flag("--u", u);
  ed->excludes(eu);
  ex->add_option("PROOF_FILE", c.file)->required();
  ex->fallthrough();

  auto* vf = app.add_subcommand("verify", "verify a bundle on a finite grid");
  vf->add_option("BUNDLE_FILE", c.file)->required();
  vf->add_option("--nat-bound", g.nat_bound, "largest natural number")->capture_default_str();
  vf->add_option("--len-bound", g.len_bound, "longest sequence")->capture_default_str();
  vf->fallthrough();

  auto* co = app.add_subcommand("corpus", "fixture corpus");
  auto* run = co->add_subcommand("run", "run every fixture in DIR");
  run->add_option("DIR", c.file)->required();
  run->add_option("--nat-bound", g.nat_bound)->capture_default_str();
  run->add_option("--len-bound", g.len_bound)->capture_default_str();
  run->fallthrough();
  co->fallthrough();
  co->require_subcommand(1);

  std::string fixture;
  auto* em = app.add_subcommand("emit-fixture", "");
  em->group("");
  em->add_option("NAME", fixture)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*ct) return check_term(c);
  if (*tr) {
    if (!dst && !u) {
      std::cerr << "translate: one of --dst or --u is required\n";
      return 2;
    }
    return translate_cmd(c, dst ? Flavor::Dst : Flavor::U);
  }
  if (*cp) return check_proof_cmd(c);
  if (*ex) return extract_cmd(c, dst, u);
  if (*vf) return verify_cmd(c, g);
  if (*run) return corpus_cmd(c, g);
  if (*em) return emit_fixture(fixture);
  return 2;
}
