#include "approx/errops.hpp"
#include "approx/soundness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace approx;
namespace fs = std::filesystem;

namespace {

fs::path corpus_dir() { return fs::path(APPROX_SOURCE_DIR) / "corpus"; }

SampleConfig sc(int trials) {
  SampleConfig c;
  c.trials = trials;
  c.seed = 42;
  return c;
}

struct Outcome {
  bool ok;
  std::string detail;
};

Outcome pi_example() {
  const char* pi = "3.1415926535897932384626433832795028841971";
  auto m = [&](const char* q) { return appr_member(fl_family(), parse(q), parse("#f3.0"), parse(pi), sc(1)).status; };
  VStatus a = m("#q0.1415927"), b = m("#q0.14159266"), c = m("#q0.1415926");
  bool ok = a == VStatus::Pass && b == VStatus::Pass && c == VStatus::Fail;
  return {ok, "0.1415927 " + to_string(a) + ", 0.14159266 " + to_string(b) + ", 0.1415926 " + to_string(c)};
}

Outcome axiom_suites() {
  std::vector<AxiomReport> reps{
      check_quant_axioms(q_reals(), 1000, 42),
      check_quant_axioms(q_lifted({real_ty(), err_ty()}), 1000, 42),
      check_approx_axioms(fl_family(), sc(1000)),
      check_approx_axioms(pi_family(fl_family(), fl_family()), sc(1000)),
  };
  int failed = 0, clauses = 0;
  std::string first;
  for (const auto& r : reps)
    for (const auto& a : r.results) {
      ++clauses;
      if (a.status == "fail") {
        ++failed;
        if (first.empty()) first = r.subject + ": " + a.axiom;
      }
    }
  return {failed == 0, std::to_string(clauses) + " clauses, " + std::to_string(failed) + " failed" +
                           (first.empty() ? "" : " (" + first + ")")};
}

std::vector<double> floats_in(const Rational& c, const Rational& r, int n) {
  double lo = round_up(c - r), hi = round_down(c + r);
  std::vector<double> out{lo, hi};
  for (int i = 1; i + 1 < n; ++i) {
    double d = round_nearest(c - r + 2 * r * Rational(i, n - 1));
    out.push_back(std::clamp(d, lo, hi));
  }
  return out;
}

Outcome float_op_grid() {
  std::vector<Rational> centers{Rational(-3, 2), Rational(1, 8), 1, Rational(5, 2), 40};
  std::vector<Rational> radii{0, pow2(-40), Rational(1, 64), Rational(1, 4), 1};
  std::ostringstream detail;
  bool ok = true;
  for (char op : {'+', '-', '*', '/'}) {
    int cells = 0, unbounded = 0, tight = 0, violations = 0;
    for (const auto& xe : centers)
      for (const auto& xq : radii)
        for (const auto& ye : centers)
          for (const auto& yq : radii) {
            ++cells;
            ErrValue b = float_op_err(op, RealEnclosure::point(xe, 128), ErrValue::exact(xq),
                                      RealEnclosure::point(ye, 128), ErrValue::exact(yq));
            if (b.hi_inf) {
              ++unbounded;
              continue;
            }
            Rational exact = op == '+' ? Rational(xe + ye) : op == '-' ? Rational(xe - ye) : op == '*' ? Rational(xe * ye) : Rational(xe / ye);
            Rational worst = 0;
            for (double xa : floats_in(xe, xq, 8))
              for (double ya : floats_in(ye, yq, 8)) {
                double fa = op == '+' ? xa + ya : op == '-' ? xa - ya : op == '*' ? xa * ya : xa / ya;
                Rational d = std::isfinite(fa) ? abs_of(exact - exact_value(fa)) : Rational(-1);
                if (d < 0 || d > b.hi) ++violations;
                if (d > worst) worst = d;
              }
            if (b.hi > 0 && b.hi - worst <= ulp_of(abs_of(exact) + b.hi)) ++tight;
          }
    if (violations || !tight) ok = false;
    detail << op << ": " << cells << " cells, " << violations << " violations, " << tight << " tight, "
           << unbounded << " unbounded" << (op == '/' ? "" : "; ");
  }
  return {ok, detail.str()};
}

// 0.1 - sin 0.1 by its alternating series, truncated when the next term is tiny.
std::pair<Rational, Rational> taylor_gap(const Rational& x) {
  Rational sum = 0, term = x * x * x / 6;
  int k = 3;
  for (int sign = 1; term > pow2(-200); sign = -sign) {
    sum += sign * term;
    term = term * x * x / ((k + 1) * (k + 2));
    k += 2;
  }
  return {sum, term};
}

Outcome sin_subst() {
  CompileOpts o;
  o.enable_sin_subst = true;
  Expr e = parse("(lam (x Real) (sinr x))");
  CompileResult r = compile_program(e, o);
  SampleConfig c = sc(1000);
  c.real_bound = Rational(1, 5);
  Verdict v = appr_member(r.family, r.err, r.approx, e, c);
  ErrValue b = eval_error(app(app(r.err, real_lit(Rational(1, 10))), err_lit(0)), {}, {});
  auto [mid, rad] = taylor_gap(Rational(1, 10));
  bool agrees = !b.hi_inf && b.lo <= mid + rad && b.hi >= mid - rad && b.hi - b.lo < pow2(-100);
  return {v.status == VStatus::Pass && v.passes == 1000 && agrees,
          std::to_string(v.passes) + "/1000 samples, bound at 0.1 = " + approx_decimal(b.lo, 6) + ", Taylor " +
              approx_decimal(mid, 6)};
}

Outcome perforation() {
  CompileOpts o;
  o.perforation["L0"] = 2;
  Expr e8 = parse("(redseq +r 8 (lam (i Nat) (nat2real i)))");
  CompileResult r8 = compile_program(e8, o);
  ErrValue b8 = eval_error(r8.err, {}, {});
  auto a8 = eval_approx(r8.approx, {}, {});
  auto x8 = eval_exact(e8, {}, {});
  bool tight = b8.is_point() && b8.lo == 4 && a8 && (*a8)->flt() == 24.0 && x8 && (*x8)->real().contains(Rational(28));

  Expr e7 = parse("(redseq +r 7 (lam (i Nat) (nat2real i)))");
  CompileResult r7 = compile_program(e7, o);
  bool side = false;
  std::vector<const Derivation*> stack{&r7.derivation};
  while (!stack.empty()) {
    const Derivation* d = stack.back();
    stack.pop_back();
    for (const auto& s : d->side_conditions)
      if (s->description.find("q'") != std::string::npos && s->verdict && s->verdict->status == VStatus::Pass)
        side = true;
    for (const auto& p : d->premises) stack.push_back(&p);
  }
  Verdict v7 = appr_member(r7.family, r7.err, r7.approx, e7, sc(100));
  return {tight && side && v7.status == VStatus::Pass,
          "e2=8 bound " + b8.str() + ", approx " + (a8 ? format_double((*a8)->flt()) : "diverged") +
              "; e2=7 side condition " + (side ? "validated" : "missing") + ", " + std::to_string(v7.passes) +
              "/100"};
}

std::set<std::string> all_rules() {
  return {"A-Weak", "A-Var", "A-Lam", "A-App", "A-TLam", "A-TApp", "A-Fix", "A-If", "R-Lit", "R-Op", "R-SinSubst",
          "R-Perforate"};
}

Outcome corpus_soundness(const CorpusReport& rep) {
  int pass = 0;
  std::set<std::string> seen;
  std::string bad;
  for (const auto& f : rep.files) {
    if (f.status == "pass") ++pass;
    else if (bad.empty()) bad = " (" + f.file + ": " + f.status + ")";
    seen.insert(f.rules.begin(), f.rules.end());
  }
  std::string missing;
  for (const auto& r : all_rules())
    if (!seen.count(r)) missing += " " + r;
  bool ok = pass == static_cast<int>(rep.files.size()) && rep.files.size() >= 20 && missing.empty();
  return {ok, std::to_string(pass) + "/" + std::to_string(rep.files.size()) + " programs pass at 1000 trials" + bad +
                  (missing.empty() ? "" : ", rules missing:" + missing)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome weakening(const CorpusReport& base) {
  int held = 0, total = 0;
  std::string bad;
  for (const auto& f : base.files) {
    ++total;
    fs::path p = corpus_dir() / f.file;
    try {
      FileOptions fo = load_sidecar(p, {});
      Expr e = parse(slurp(p));
      CompileResult r = compile_program(e, fo.compile);
      CompileResult w = weaken(r, fam_add(r.family, r.err, fam_const(r.family, Rational(1, 1000))), fo.compile);
      SampleConfig c = sc(1000);
      if (fo.real_bound) c.real_bound = fo.real_bound;
      Verdict v = check_soundness(f.file, e, w, c).verdict;
      if (f.report && v.passes >= f.report->verdict.passes && v.status != VStatus::Fail) ++held;
      else if (bad.empty()) bad = " (" + f.file + ")";
    } catch (const std::exception& ex) {
      if (bad.empty()) bad = " (" + f.file + ": " + ex.what() + ")";
    }
  }
  return {held == total, std::to_string(held) + "/" + std::to_string(total) + " programs keep their passes" + bad};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const std::string& name, auto&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++failures;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << n << " " << name << " [" << t.str() << " s] " << o.detail
              << std::endl;
  };

  report(1, "pi example", pi_example);
  report(2, "axiom suites", axiom_suites);
  report(3, "float-op brute force", float_op_grid);
  report(4, "sin substitution", sin_subst);
  report(5, "perforation", perforation);
  CorpusReport first;
  report(6, "corpus soundness", [&] {
    first = check_rule_corpus(corpus_dir(), {}, sc(1000));
    return corpus_soundness(first);
  });
  report(7, "metamorphic weakening", [&] { return weakening(first); });
  report(8, "determinism", [&] {
    CorpusReport second = check_rule_corpus(corpus_dir(), {}, sc(1000));
    std::string a = first.to_json().dump(2), b = second.to_json().dump(2);
    return Outcome{a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "differ")};
  });
  return failures ? 1 : 0;
}
