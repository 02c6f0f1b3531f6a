#include "approx/quant.hpp"

#include "approx/typing.hpp"

#include <algorithm>

namespace approx {

// ------------------------------
// sampling
// ------------------------------

Expr sample_err_literal(Rng& rng) {
  switch (rng.below(10)) {
    case 0:
    case 1: return err_lit(0);
    case 2: return err_lit(rng.range(1, 10));
    case 3: return err_lit(pow2(-static_cast<long>(rng.range(1, 80))));
    case 4: return err_lit(Rational(rng.range(1, 10)) * pow2(static_cast<long>(rng.range(20, 120))));
    case 5: return err_inf();
    default: {
      Rational r(rng.range(0, 1000), rng.range(1, 1000));
      r.canonicalize();
      return err_lit(r);
    }
  }
}

Expr sample_real_literal(Rng& rng) {
  Rational r;
  switch (rng.below(5)) {
    case 0: r = rng.range(-20, 20); break;
    case 1: {
      // dyadic next to a binade boundary
      long e = rng.range(-30, 30);
      r = pow2(e) + Rational(rng.range(-3, 3)) * pow2(e - 52);
      if (rng.chance(1, 2)) r = -r;
      break;
    }
    case 2: r = Rational(rng.range(-1000000, 1000000), rng.range(1, 1000)); break;
    case 3: r = Rational(rng.range(-1000, 1000)) * pow2(-static_cast<long>(rng.range(20, 70))); break;
    default: r = Rational(rng.range(-1000, 1000), rng.range(1, 997)); break;
  }
  r.canonicalize();
  return real_lit(r);
}

Expr sample_probe(const Ty& t, Rng& rng) {
  switch (t->kind) {
    case TyKind::Real: return sample_real_literal(rng);
    case TyKind::ErrReal: return sample_err_literal(rng);
    case TyKind::Nat: return nat_lit(rng.below(30));
    case TyKind::Bool: return bool_lit(rng.chance(1, 2));
    case TyKind::Float64: return float_lit(round_nearest(sample_real_literal(rng)->rational));
    default: throw Error("no probe sampler for type " + print_ty(t));
  }
}

// ------------------------------
// instances
// ------------------------------

Ty QuantInstance::carrier() const {
  Ty t = err_ty();
  for (auto it = domain.rbegin(); it != domain.rend(); ++it) t = arrow(*it, t);
  return t;
}

namespace {

std::string arg_name(std::size_t i) { return "y" + std::to_string(i); }

Expr wrap_lams(const std::vector<Ty>& domain, Expr body) {
  for (std::size_t i = domain.size(); i > 0; --i) body = lam(arg_name(i - 1), domain[i - 1], body);
  return body;
}

Expr applied(const Expr& f, std::size_t n) {
  Expr e = f;
  for (std::size_t i = 0; i < n; ++i) e = app_fold(e, var(arg_name(i)));
  return e;
}

Expr random_lifted(const std::vector<Ty>& domain, Rng& rng) {
  std::vector<Expr> atoms;
  atoms.push_back(sample_err_literal(rng));
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (domain[i]->kind == TyKind::ErrReal && rng.chance(2, 3)) atoms.push_back(var(arg_name(i)));
    if (domain[i]->kind == TyKind::Real && rng.chance(1, 2)) {
      atoms.push_back(rng.chance(1, 2) ? builtin("absr", {var(arg_name(i))})
                                       : builtin("dr", {var(arg_name(i)), sample_real_literal(rng)}));
    }
  }
  std::size_t keep = 1 + rng.below(atoms.size());
  Expr body = atoms[rng.below(atoms.size())];
  for (std::size_t k = 1; k < keep; ++k) body = builtin("+q", {body, atoms[rng.below(atoms.size())]});
  return wrap_lams(domain, body);
}

ErrValue eval_scalar(const Expr& q, const EvalConfig& cfg) { return eval_error(q, nullptr, cfg); }

}  // namespace

QuantInstance q_reals() {
  QuantInstance q;
  q.name = "Q_R";
  q.zero = err_lit(0);
  q.plus = [](const Expr& a, const Expr& b) { return builtin("+q", {a, b}); };
  q.sample = [](Rng& rng) { return sample_err_literal(rng); };
  return q;
}

QuantInstance q_lifted(std::vector<Ty> domain) {
  QuantInstance q;
  std::string name = "Q_R";
  for (auto it = domain.rbegin(); it != domain.rend(); ++it) name = print_ty(*it) + "=>" + name;
  q.name = name;
  q.domain = domain;
  q.zero = wrap_lams(domain, err_lit(0));
  q.plus = [domain](const Expr& a, const Expr& b) {
    return wrap_lams(domain, builtin("+q", {applied(a, domain.size()), applied(b, domain.size())}));
  };
  q.sample = [domain](Rng& rng) { return random_lifted(domain, rng); };
  return q;
}

Expr q_plus(const QuantInstance& inst, const Expr& q1, const Expr& q2) { return inst.plus(q1, q2); }

namespace {

// Yes / No at one probe input (all inputs for the scalar instance).
Tri leq_at(const QuantInstance& inst, const Expr& q1, const Expr& q2, const std::vector<Expr>& probe,
           const EvalConfig& cfg) {
  Expr a = q1, b = q2;
  for (const auto& p : probe) {
    a = app(a, p);
    b = app(b, p);
  }
  (void)inst;
  return err_leq(eval_scalar(a, cfg), eval_scalar(b, cfg));
}

std::vector<Expr> sample_probes(const QuantInstance& inst, Rng& rng) {
  std::vector<Expr> out;
  for (const auto& t : inst.domain) out.push_back(sample_probe(t, rng));
  return out;
}

std::string show_probe(const std::vector<Expr>& probe) {
  std::string s;
  for (const auto& p : probe) s += (s.empty() ? "" : " ") + print(p);
  return s;
}

}  // namespace

QVerdict q_leq(const QuantInstance& inst, const Expr& q1, const Expr& q2, int trials, std::uint64_t seed,
               const EvalConfig& cfg) {
  if (inst.scalar()) {
    Tri t = leq_at(inst, q1, q2, {}, cfg);
    if (t == Tri::No) return {QStatus::No, print(q1) + " > " + print(q2)};
    return {QStatus::Yes, ""};
  }
  for (int i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    auto probe = sample_probes(inst, rng);
    if (leq_at(inst, q1, q2, probe, cfg) == Tri::No) return {QStatus::No, "at " + show_probe(probe)};
  }
  return {QStatus::YesOnSamples, ""};
}

bool AxiomReport::ok() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) {
    return r.status == "pass" || r.status == "pass-on-samples";
  });
}

Json AxiomReport::to_json() const {
  Json j;
  j["schema"] = "approxc.axiom-report/1";
  j["subject"] = subject;
  j["trials"] = trials;
  j["seed"] = seed;
  j["ok"] = ok();
  Json arr = Json::array();
  for (const auto& r : results) {
    Json o;
    o["axiom"] = r.axiom;
    o["status"] = r.status;
    o["checked"] = r.checked;
    if (!r.witness.empty()) o["witness"] = r.witness;
    arr.push_back(o);
  }
  j["results"] = arr;
  return j;
}

namespace {

// Candidate simplifications of an error literal, simplest first.
std::vector<Expr> shrink_candidates(const Expr& e) {
  std::vector<Expr> out;
  if (e->kind != ExprKind::ErrLit) return out;
  if (e->infinite) {
    out.push_back(err_lit(0));
    out.push_back(err_lit(1));
    return out;
  }
  const Rational& r = e->rational;
  if (r == 0) return out;
  out.push_back(err_lit(0));
  if (r != 1) out.push_back(err_lit(1));
  Rational f(floor_of(r));
  if (f != r && f != 0) out.push_back(err_lit(f));
  out.push_back(err_lit(r / 2));
  return out;
}

// Greedy shrinking of a failing tuple of scalar elements.
std::vector<Expr> shrink(std::vector<Expr> xs, const std::function<bool(const std::vector<Expr>&)>& fails) {
  bool progress = true;
  for (int rounds = 0; progress && rounds < 200; ++rounds) {
    progress = false;
    for (std::size_t i = 0; i < xs.size() && !progress; ++i) {
      for (const auto& c : shrink_candidates(xs[i])) {
        auto ys = xs;
        ys[i] = c;
        if (fails(ys)) {
          xs = ys;
          progress = true;
          break;
        }
      }
    }
  }
  return xs;
}

std::string show_elements(const std::vector<Expr>& xs) {
  std::string s;
  const char* names[] = {"e1", "e2", "e3", "e4"};
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + std::string(names[i % 4]) + "=" + print(xs[i]);
  return s;
}

// Grid of scalar elements checked exhaustively for Q_R.
std::vector<Expr> scalar_grid() {
  return {err_lit(0), err_lit(pow2(-60)), err_lit(Rational(1, 3)), err_lit(Rational(1, 2)),
          err_lit(1), err_lit(5), err_lit(Rational(Integer("100000000000000000000"))), err_inf()};
}

struct Clause {
  std::string name;
  int arity;
  // true when the clause holds for the elements at the probe
  std::function<Tri(const std::vector<Expr>&, const std::vector<Expr>&)> holds;
};

// larger element: e + d for d >= 0, built without the instance's plus
Expr bump(const QuantInstance& inst, const Expr& e, const Expr& d) {
  if (inst.scalar()) return builtin("+q", {e, d});
  return wrap_lams(inst.domain, builtin("+q", {applied(e, inst.domain.size()), d}));
}

}  // namespace

AxiomReport check_quant_axioms(const QuantInstance& inst, int trials, std::uint64_t seed, const EvalConfig& cfg) {
  AxiomReport report;
  report.subject = inst.name;
  report.trials = trials;
  report.seed = seed;

  auto leq = [&](const Expr& a, const Expr& b, const std::vector<Expr>& probe) {
    return leq_at(inst, a, b, probe, cfg);
  };
  auto both = [](Tri a, Tri b) {
    if (a == Tri::No || b == Tri::No) return Tri::No;
    if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
    return Tri::Yes;
  };
  const auto& P = inst.plus;

  std::vector<Clause> clauses = {
      {"Closedness", 2,
       [&](const std::vector<Expr>& e, const std::vector<Expr>& probe) {
         Expr s = P(e[0], e[1]);
         if (!inst.scalar()) {
           try {
             if (!ty_equal(infer_type(TyCtx{}, s), inst.carrier())) return Tri::No;
           } catch (const Error&) {
             return Tri::No;
           }
         }
         Expr a = s;
         for (const auto& p : probe) a = app(a, p);
         ErrValue v = eval_scalar(a, cfg);
         return (v.lo_inf || v.lo >= 0) ? Tri::Yes : Tri::No;
       }},
      {"Monotonicity", 4,
       [&](const std::vector<Expr>& e, const std::vector<Expr>& probe) {
         // e[2], e[3] are the increments
         Expr e1p = bump(inst, e[0], e[2]);
         Expr e2p = bump(inst, e[1], e[3]);
         return leq(P(e[0], e[1]), P(e1p, e2p), probe);
       }},
      {"Leastness of 0", 1,
       [&](const std::vector<Expr>& e, const std::vector<Expr>& probe) { return leq(inst.zero, e[0], probe); }},
      {"Identity", 1,
       [&](const std::vector<Expr>& e, const std::vector<Expr>& probe) {
         Expr s = P(e[0], inst.zero);
         return both(leq(s, e[0], probe), leq(e[0], s, probe));
       }},
      {"Commutativity", 2,
       [&](const std::vector<Expr>& e, const std::vector<Expr>& probe) {
         Expr a = P(e[0], e[1]), b = P(e[1], e[0]);
         return both(leq(a, b, probe), leq(b, a, probe));
       }},
      {"Associativity", 3,
       [&](const std::vector<Expr>& e, const std::vector<Expr>& probe) {
         Expr a = P(e[0], P(e[1], e[2])), b = P(P(e[0], e[1]), e[2]);
         return both(leq(a, b, probe), leq(b, a, probe));
       }},
  };

  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    const Clause& c = clauses[ci];
    AxiomResult res;
    res.axiom = c.name;
    bool failed = false;
    bool unknown = false;
    auto record_failure = [&](std::vector<Expr> elems, const std::vector<Expr>& probe) {
      if (inst.scalar()) {
        elems = shrink(elems, [&](const std::vector<Expr>& xs) { return c.holds(xs, probe) == Tri::No; });
      }
      res.witness = show_elements(elems);
      if (!probe.empty()) res.witness += " at " + show_probe(probe);
      failed = true;
    };
    if (inst.scalar()) {
      // exhaustive over the grid
      auto grid = scalar_grid();
      std::vector<std::size_t> idx(static_cast<std::size_t>(c.arity), 0);
      while (!failed) {
        std::vector<Expr> elems;
        for (auto i : idx) elems.push_back(grid[i]);
        ++res.checked;
        Tri t = c.holds(elems, {});
        if (t == Tri::No) record_failure(elems, {});
        if (t == Tri::Unknown) unknown = true;
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == grid.size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
    for (int t = 0; t < trials && !failed; ++t) {
      Rng rng(derive_seed(derive_seed(seed, ci), static_cast<std::uint64_t>(t)));
      std::vector<Expr> elems;
      for (int k = 0; k < c.arity; ++k) {
        // increments for Monotonicity are scalar
        bool increment = c.name == "Monotonicity" && k >= 2;
        elems.push_back(increment ? sample_err_literal(rng) : inst.sample(rng));
      }
      auto probe = sample_probes(inst, rng);
      ++res.checked;
      Tri r = c.holds(elems, probe);
      if (r == Tri::No) record_failure(elems, probe);
      if (r == Tri::Unknown) unknown = true;
    }
    if (failed) {
      res.status = "fail";
    } else if (unknown) {
      res.status = "inconclusive";
    } else {
      res.status = inst.scalar() ? "pass" : "pass-on-samples";
    }
    report.results.push_back(res);
  }
  return report;
}

}  // namespace approx
