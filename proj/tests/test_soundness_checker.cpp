#include "approx/soundness.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace approx;
namespace fs = std::filesystem;

namespace {

SampleConfig sc(int trials) {
  SampleConfig c;
  c.trials = trials;
  return c;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("approx_sc_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

fs::path corpus_dir() { return fs::path(APPROX_SOURCE_DIR) / "corpus"; }

}  // namespace

TEST(CheckSoundness, Doubling) {
  Expr e = parse("(lam (x Real) (+r x x))");
  CheckReport rep = check_soundness("double", e, compile_program(e, {}), sc(1000));
  EXPECT_EQ(rep.verdict.status, VStatus::Pass);
  EXPECT_EQ(rep.verdict.passes, 1000);
  EXPECT_EQ(rep.verdict.trials, 1000);
}

TEST(CheckSoundness, ThirdIsTight) {
  Expr e = parse("1/3");
  CompileResult r = compile_program(e, {});
  CheckReport rep = check_soundness("third", e, r, sc(1));
  EXPECT_EQ(rep.verdict.status, VStatus::Pass);
  ASSERT_TRUE(rep.bound);
  EXPECT_EQ(*rep.bound, "1/54043195528445952");
  // any smaller bound fails: the distance equals the bound
  CompileResult tighter = r;
  tighter.err = err_lit(Rational(1, 54043195528445952) - Rational(1, Integer("1000000000000000000000000", 10)));
  EXPECT_EQ(check_soundness("third", e, tighter, sc(1)).verdict.status, VStatus::Fail);
}

TEST(CheckSoundness, HalvedBoundFailsWithReplay) {
  Expr e = parse("1/3");
  CompileResult r = compile_program(e, {});
  r.err = err_lit(r.err->rational / 2);
  CheckReport rep = check_soundness("third", e, r, sc(1000));
  EXPECT_EQ(rep.verdict.status, VStatus::Fail);
  ASSERT_EQ(rep.verdict.failures.size(), 1u);
  const Replay& f = rep.verdict.failures[0];
  EXPECT_EQ(f.distance, "1/54043195528445952");
  EXPECT_EQ(f.bound, "1/108086391056891904");
  EXPECT_EQ(f.approx, "0.3333333333333333");
  auto j = rep.to_json();
  EXPECT_EQ(j["schema"], "approxc.check-report/1");
  EXPECT_EQ(j["failures"].size(), 1u);
}

TEST(CheckSoundness, CountsAddUp) {
  Expr e = parse("(lam (x Real) (+r x x))");
  CompileResult r = compile_program(e, {});
  r.err = parse("(lam (x Real) (lam (x^q ErrReal) x^q))");
  CheckReport rep = check_soundness("bad", e, r, sc(400));
  const Verdict& v = rep.verdict;
  int failed = rep.to_json()["failed"].get<int>();
  EXPECT_EQ(v.passes + failed + v.inconclusive, v.trials);
  EXPECT_GT(failed, 0);
  EXPECT_LE(v.failures.size(), 20u);
}

TEST(Property, ReplayFidelity) {
  Expr e = parse("(lam (x Real) (lam (y Real) (*r x y)))");
  CompileResult r = compile_program(e, {});
  r.err = parse("(lam (x Real) (lam (x^q ErrReal) (lam (y Real) (lam (y^q ErrReal) (+q x^q y^q)))))");
  CheckReport rep = check_soundness("mul", e, r, sc(300));
  ASSERT_FALSE(rep.verdict.failures.empty());
  for (const Replay& f : rep.verdict.failures) {
    SampleConfig c = sc(1);
    c.seed = f.seed;
    c.first_trial = f.trial;
    CheckReport again = check_soundness("mul", e, r, c);
    ASSERT_EQ(again.verdict.failures.size(), 1u);
    EXPECT_EQ(again.verdict.failures[0].to_json().dump(), f.to_json().dump());
  }
}

TEST(Property, HarnessWeakening) {
  for (const char* src : {"(lam (x Real) (*r x 1/3))", "(lam (x Real) (sinr x))", "(lam (n Nat) (/r (nat2real n) 3.0))"}) {
    Expr e = parse(src);
    CompileResult r = compile_program(e, {});
    CheckReport base = check_soundness("p", e, r, sc(300));
    CompileResult w = r;
    w.err = fam_add(r.family, r.err, fam_const(r.family, Rational(1, 1000)));
    CheckReport weak = check_soundness("p", e, w, sc(300));
    EXPECT_GE(weak.verdict.passes, base.verdict.passes) << src;
    EXPECT_NE(weak.verdict.status, VStatus::Fail) << src;
  }
}

TEST(Corpus, EmptyDirectory) {
  fs::path d = scratch("empty");
  CorpusReport rep = check_rule_corpus(d, {}, sc(10));
  EXPECT_TRUE(rep.files.empty());
  EXPECT_EQ(rep.exit_code(), 0);
  EXPECT_EQ(rep.to_json()["programs"], 0);
}

TEST(Corpus, UnparsableFileIsFlagged) {
  fs::path d = scratch("broken");
  write(d / "a_good.ax", "(+r 0.1 0.2)");
  write(d / "b_bad.ax", "(+r 0.1");
  write(d / "c_good.ax", "(lam (x Real) x)");
  write(d / "notes.txt", "ignored");
  CorpusReport rep = check_rule_corpus(d, {}, sc(20));
  ASSERT_EQ(rep.files.size(), 3u);
  EXPECT_EQ(rep.files[0].status, "pass");
  EXPECT_EQ(rep.files[1].status, "error");
  EXPECT_FALSE(rep.files[1].message.empty());
  EXPECT_EQ(rep.files[2].status, "pass");
  EXPECT_EQ(rep.exit_code(), 2);
}

TEST(Corpus, RejectedWeakeningIsAnError) {
  fs::path d = scratch("fail");
  write(d / "a.ax", "1/3");
  write(d / "a.opts.json", R"({"weaken_to": "#q0"})");
  write(d / "b.ax", "(+r 0.1");
  CorpusReport rep = check_rule_corpus(d, {}, sc(5));
  // weakening to 0 is rejected at compile time, so this is an error
  EXPECT_EQ(rep.files[0].status, "error");
  EXPECT_NE(rep.files[0].message.find("side condition"), std::string::npos);
}

TEST(Corpus, SidecarUnknownKey) {
  fs::path d = scratch("sidecar");
  write(d / "p.ax", "1.0");
  write(d / "p.opts.json", R"({"perforate": {"L0": 2}, "colour": 1})");
  EXPECT_THROW(load_sidecar(d / "p.ax", {}), Error);
  write(d / "p.opts.json", R"({"perforate": {"L0": 2}, "subst_sin": true, "weaken_by": "1/100", "real_bound": "1/5"})");
  FileOptions fo = load_sidecar(d / "p.ax", {});
  EXPECT_EQ(fo.compile.perforation.at("L0"), 2u);
  EXPECT_TRUE(fo.compile.enable_sin_subst);
  EXPECT_EQ(*fo.compile.weaken_by, Rational(1, 100));
  EXPECT_EQ(*fo.real_bound, Rational(1, 5));
}

TEST(Corpus, ShippedCorpusPasses) {
  CorpusReport rep = check_rule_corpus(corpus_dir(), {}, sc(200));
  EXPECT_GE(rep.files.size(), 20u);
  for (const auto& f : rep.files) EXPECT_EQ(f.status, "pass") << f.file << ": " << f.message;
  EXPECT_EQ(rep.exit_code(), 0);
}

TEST(Corpus, CoversEveryRule) {
  CorpusReport rep = check_rule_corpus(corpus_dir(), {}, sc(5));
  std::set<std::string> seen;
  for (const auto& f : rep.files) seen.insert(f.rules.begin(), f.rules.end());
  for (const char* r : {"A-Weak", "A-Var", "A-Lam", "A-App", "A-TLam", "A-TApp", "A-Fix", "A-If", "R-Lit", "R-Op",
                        "R-SinSubst", "R-Perforate"})
    EXPECT_TRUE(seen.count(r)) << r;
}
