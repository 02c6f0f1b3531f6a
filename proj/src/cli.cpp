#include "approx/cli.hpp"

#include "approx/soundness.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

namespace approx {

namespace fs = std::filesystem;

bool parse_perforate(const std::string& spec, std::map<std::string, std::uint64_t>& out) {
  auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) return false;
  std::string site = spec.substr(0, eq), k = spec.substr(eq + 1);
  if (k.find_first_not_of("0123456789") != std::string::npos || k.size() > 18) return false;
  std::uint64_t v = std::stoull(k);
  if (v == 0) return false;
  out[site] = v;
  return true;
}

namespace {

class ConfigError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream o(p, std::ios::binary);
  if (!o) throw ConfigError("cannot write " + p.string());
  o << text;
  if (!o) throw ConfigError("cannot write " + p.string());
}

CompileOpts base_opts(const CliConfig& c) {
  CompileOpts o;
  o.enable_sin_subst = c.subst_sin;
  o.perforation = c.perforate;
  o.seed = c.seed;
  o.eval.fuel = c.fuel;
  o.eval.precision_bits = c.precision_bits;
  return o;
}

SampleConfig sample_cfg(const CliConfig& c) {
  SampleConfig s;
  s.trials = c.trials;
  s.seed = c.seed;
  s.eval.fuel = c.fuel;
  s.eval.precision_bits = c.precision_bits;
  s.max_precision_bits = std::max(1024, c.precision_bits);
  return s;
}

void emit_result(const CliConfig& c, const fs::path& input, const CompileResult& r) {
  fs::path dir(c.out);
  std::string stem = input.stem().string();
  bool all = c.emit == "all";
  if (all || c.emit == "approx") write_file(dir / (stem + ".approx.ax"), print(r.approx) + "\n");
  if (all || c.emit == "err") write_file(dir / (stem + ".err.ax"), print(r.err) + "\n");
  if (all || c.emit == "derivation") write_file(dir / (stem + ".derivation.json"), r.derivation.to_json().dump(2) + "\n");
}

std::vector<std::string> rules_of(const CompileResult& r) {
  std::vector<std::string> rules;
  r.derivation.collect_rules(rules);
  std::set<std::string> u(rules.begin(), rules.end());
  return {u.begin(), u.end()};
}

int compile_one(const CliConfig& c, const fs::path& input, std::ostream& out, std::ostream& err, bool check) {
  if (!fs::is_regular_file(input)) throw ConfigError("no such file: " + input.string());
  std::string text = read_file(input);
  FileOptions fo = load_sidecar(input, base_opts(c));
  CompileResult r;
  Expr e;
  try {
    e = parse(text);
    r = compile_program(e, fo.compile);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    err << input.string() << ": " << ex.what() << "\n";
    if (c.json) {
      Json j{{"schema", "approxc.error/1"}, {"file", input.filename().string()}, {"message", ex.what()}};
      out << j.dump() << "\n";
    }
    return 2;
  }
  emit_result(c, input, r);
  if (!check) {
    if (c.json) {
      Json j;
      j["schema"] = "approxc.compile/1";
      j["file"] = input.filename().string();
      j["family"] = fam_str(r.family);
      j["approx"] = print(r.approx);
      j["err"] = print(r.err);
      j["rules"] = rules_of(r);
      out << j.dump() << "\n";
    } else {
      out << input.filename().string() << ": " << fam_str(r.family) << "\n  approx: " << print(r.approx)
          << "\n  err:    " << print(r.err) << "\n";
    }
    return 0;
  }
  SampleConfig sc = sample_cfg(c);
  if (fo.real_bound) sc.real_bound = fo.real_bound;
  CheckReport rep = check_soundness(input.stem().string(), e, r, sc);
  Json j = rep.to_json();
  write_file(fs::path(c.out) / (input.stem().string() + ".report.json"), j.dump(2) + "\n");
  const Verdict& v = rep.verdict;
  if (c.json) {
    out << j.dump() << "\n";
  } else {
    out << input.filename().string() << ": " << to_string(v.status) << " (" << v.passes << "/" << v.trials
        << " passed, " << v.slack_passes << " within oracle slack, family " << fam_str(r.family) << ")\n";
    for (const auto& f : v.failures)
      out << "  trial " << f.trial << ": distance " << f.distance << " > bound " << f.bound << "\n";
  }
  return v.status == VStatus::Fail ? 1 : 0;
}

int check_dir(const CliConfig& c, const fs::path& dir, std::ostream& out) {
  CorpusReport rep = check_rule_corpus(dir, base_opts(c), sample_cfg(c));
  Json j = rep.to_json();
  write_file(fs::path(c.out) / "corpus.report.json", j.dump(2) + "\n");
  if (c.json) {
    out << j.dump() << "\n";
  } else {
    for (const auto& f : rep.files) {
      out << f.file << ": " << f.status;
      if (f.report) out << " (" << f.report->verdict.passes << "/" << f.report->verdict.trials << ")";
      if (!f.message.empty()) out << ": " << f.message;
      out << "\n";
    }
  }
  return rep.exit_code();
}

struct AxiomJob {
  std::string name;
  std::function<AxiomReport()> run;
};

int run_axioms(const CliConfig& c, std::ostream& out) {
  SampleConfig sc = sample_cfg(c);
  EvalConfig ev = sc.eval;
  std::vector<AxiomJob> jobs = {
      {"q_reals", [&] { return check_quant_axioms(q_reals(), c.trials, c.seed, ev); }},
      {"q_fl_fun", [&] { return check_quant_axioms(q_lifted({real_ty(), err_ty()}), c.trials, c.seed, ev); }},
      {"fl", [&] { return check_approx_axioms(fl_family(), sc); }},
      {"fl_fl", [&] { return check_approx_axioms(pi_family(fl_family(), fl_family()), sc); }},
      {"nat", [&] { return check_approx_axioms(nat_family(), sc); }},
      {"bool", [&] { return check_approx_axioms(bool_family(), sc); }},
      {"nat_fl", [&] { return check_approx_axioms(pi_family(nat_family(), fl_family()), sc); }},
  };
  bool ok = true;
  for (const auto& job : jobs) {
    AxiomReport rep = job.run();
    Json j = rep.to_json();
    write_file(fs::path(c.out) / ("axioms." + job.name + ".json"), j.dump(2) + "\n");
    ok &= rep.ok();
    if (c.json) {
      out << j.dump() << "\n";
    } else {
      out << rep.subject << ": " << (rep.ok() ? "ok" : "FAILED") << "\n";
      for (const auto& r : rep.results) {
        out << "  " << r.axiom << ": " << r.status;
        if (!r.witness.empty()) out << " [" << r.witness << "]";
        out << "\n";
      }
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const CliConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command != "compile" && c.command != "check" && c.command != "axioms")
      throw ConfigError("unknown command '" + c.command + "'");
    if (c.emit != "approx" && c.emit != "err" && c.emit != "derivation" && c.emit != "all")
      throw ConfigError("--emit must be approx, err, derivation or all");
    if (c.trials <= 0) throw ConfigError("--trials must be positive");
    if (c.precision_bits < 16) throw ConfigError("--precision-bits must be at least 16");
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (!fs::is_directory(c.out)) throw ConfigError("cannot create output directory " + c.out);

    if (c.command == "axioms") return run_axioms(c, out);
    if (c.inputs.empty()) throw ConfigError("no input files");
    int code = 0;
    for (const auto& in : c.inputs) {
      int rc;
      if (c.command == "check" && fs::is_directory(in))
        rc = check_dir(c, in, out);
      else
        rc = compile_one(c, in, out, err, c.command == "check");
      // failures dominate errors
      if (rc == 1 || (rc == 2 && code == 0)) code = rc;
    }
    return code;
  } catch (const std::exception& ex) {
    std::string msg = ex.what();
    for (auto& ch : msg)
      if (ch == '\n') ch = ' ';
    err << "approxc: " << msg << "\n";
    return 2;
  }
}

}  // namespace approx
