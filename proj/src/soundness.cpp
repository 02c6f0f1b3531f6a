#include "approx/soundness.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace approx {

Json CheckReport::to_json() const {
  Json j;
  j["schema"] = "approxc.check-report/1";
  j["program"] = program;
  j["family"] = fam_str(family);
  if (bound) j["bound"] = *bound;
  Json v = verdict.to_json();
  for (auto it = v.begin(); it != v.end(); ++it) j[it.key()] = it.value();
  return j;
}

CheckReport check_soundness(const std::string& program, const Expr& e, const CompileResult& r, const SampleConfig& cfg) {
  CheckReport rep;
  rep.program = program;
  rep.family = r.family;
  rep.verdict = appr_member(r.family, r.err, r.approx, e, cfg);
  if (fam_scalar(r.family)) rep.bound = eval_error(r.err, {}, cfg.eval).str();
  return rep;
}

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rational rational_field(const Json& j, const char* key) {
  if (!j.is_string()) throw Error(std::string("sidecar field '") + key + "' must be a string");
  auto r = parse_rational(j.get<std::string>());
  if (!r || *r < 0) throw Error(std::string("sidecar field '") + key + "' is not a nonnegative rational");
  return *r;
}

}  // namespace

FileOptions load_sidecar(const std::filesystem::path& program, const CompileOpts& base) {
  FileOptions fo;
  fo.compile = base;
  std::filesystem::path side = program;
  side.replace_extension(".opts.json");
  if (!std::filesystem::exists(side)) return fo;
  Json j;
  try {
    j = Json::parse(slurp(side));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(side.filename().string() + ": " + ex.what());
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "perforate") {
      for (auto p = it->begin(); p != it->end(); ++p) fo.compile.perforation[p.key()] = p->get<std::uint64_t>();
    } else if (k == "subst_sin") {
      fo.compile.enable_sin_subst = it->get<bool>();
    } else if (k == "weaken_by") {
      fo.compile.weaken_by = rational_field(*it, "weaken_by");
    } else if (k == "weaken_to") {
      fo.compile.weaken_to = parse(it->get<std::string>());
    } else if (k == "real_bound") {
      fo.real_bound = rational_field(*it, "real_bound");
    } else {
      throw Error(side.filename().string() + ": unknown field '" + k + "'");
    }
  }
  return fo;
}

Json FileReport::to_json() const {
  Json j;
  j["file"] = file;
  j["status"] = status;
  if (!message.empty()) j["message"] = message;
  j["rules"] = rules;
  if (report) j["report"] = report->to_json();
  return j;
}

int CorpusReport::exit_code() const {
  bool fail = false, err = false;
  for (const auto& f : files) {
    fail |= f.status == "fail";
    err |= f.status == "error";
  }
  return fail ? 1 : err ? 2 : 0;
}

Json CorpusReport::to_json() const {
  Json j;
  j["schema"] = "approxc.corpus-report/1";
  int counts[4] = {0, 0, 0, 0};
  Json fs = Json::array();
  for (const auto& f : files) {
    fs.push_back(f.to_json());
    if (f.status == "pass") ++counts[0];
    if (f.status == "fail") ++counts[1];
    if (f.status == "inconclusive") ++counts[2];
    if (f.status == "error") ++counts[3];
  }
  j["programs"] = files.size();
  j["passed"] = counts[0];
  j["failed"] = counts[1];
  j["inconclusive"] = counts[2];
  j["errors"] = counts[3];
  j["files"] = fs;
  return j;
}

FileReport check_file(const std::filesystem::path& program, const CompileOpts& base, const SampleConfig& cfg) {
  FileReport fr;
  fr.file = program.filename().string();
  try {
    FileOptions fo = load_sidecar(program, base);
    Expr e = parse(slurp(program));
    CompileResult r = compile_program(e, fo.compile);
    std::vector<std::string> rules;
    r.derivation.collect_rules(rules);
    std::set<std::string> uniq(rules.begin(), rules.end());
    fr.rules.assign(uniq.begin(), uniq.end());
    SampleConfig sc = cfg;
    if (fo.real_bound) sc.real_bound = fo.real_bound;
    fr.report = check_soundness(program.stem().string(), e, r, sc);
    fr.status = to_string(fr.report->verdict.status);
  } catch (const std::exception& ex) {
    fr.status = "error";
    fr.message = ex.what();
  }
  return fr;
}

CorpusReport check_rule_corpus(const std::filesystem::path& dir, const CompileOpts& opts, const SampleConfig& cfg) {
  if (!std::filesystem::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& ent : std::filesystem::directory_iterator(dir))
    if (ent.is_regular_file() && ent.path().extension() == ".ax") files.push_back(ent.path());
  std::sort(files.begin(), files.end());
  CorpusReport rep;
  for (const auto& f : files) rep.files.push_back(check_file(f, opts, cfg));
  return rep;
}

}  // namespace approx
