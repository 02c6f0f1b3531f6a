#include "approx/transform.hpp"

#include <cmath>

namespace approx {

Json Derivation::to_json() const {
  Json j;
  j["rule"] = rule;
  if (!site.empty()) j["site"] = site;
  j["span"] = {span.begin, span.end};
  j["context"] = context;
  j["exact"] = print(exact);
  j["approx"] = print(approx);
  j["error"] = print(err);
  j["family"] = fam_str(family);
  Json sc = Json::array();
  for (const auto& s : side_conditions) {
    Json c;
    c["description"] = s->description;
    c["method"] = s->method;
    if (s->verdict) c["verdict"] = s->verdict->to_json();
    sc.push_back(c);
  }
  j["side_conditions"] = sc;
  Json ps = Json::array();
  for (const auto& p : premises) ps.push_back(p.to_json());
  j["premises"] = ps;
  return j;
}

void Derivation::collect_rules(std::vector<std::string>& out) const {
  out.push_back(rule);
  for (const auto& p : premises) p.collect_rules(out);
}

namespace {

void label_sites(const Expr& e, std::map<const ExprNode*, std::string>& out) {
  if (e->kind == ExprKind::RedSeq) out[e.get()] = "L" + std::to_string(out.size());
  for (const auto& k : e->kids) label_sites(k, out);
}

bool is_zero_err(const Expr& q) {
  return (q->kind == ExprKind::ErrLit && !q->infinite && q->rational == 0) ||
         (q->kind == ExprKind::NatLit && q->nat == 0);
}

void check_names(const Expr& e) {
  auto bad = [](const std::string& n) {
    return n.find('^') != std::string::npos || n.find('\'') != std::string::npos;
  };
  if ((e->kind == ExprKind::Var || e->kind == ExprKind::Lam || e->kind == ExprKind::TyLam) && bad(e->name))
    throw Error("identifier '" + e->name + "' uses a reserved character");
  for (const auto& k : e->kids) check_names(k);
}

struct OpRule {
  const char* exact;
  const char* approx;
  const char* err;
};

const OpRule* find_op_rule(const std::string& op) {
  static const OpRule rules[] = {
      {"+r", "+f", "+err"},       {"-r", "-f", "-err"},     {"*r", "*f", "*err"},
      {"/r", "/f", "/err"},       {"sinr", "sinf", "sinerr"}, {"leqr", "leqf", "leqerr"},
      {"nat2real", "nat2float", "n2rerr"},
      {"+n", "+n", "+nq"},        {"-n", "-n", "+nq"},      {"dn", "dn", "+nq"},
      {"*n", "*n", "*nq"},        {"eqn", "eqn", "eqnerr"}, {"leqn", "leqn", "leqnerr"},
  };
  for (const auto& r : rules)
    if (op == r.exact) return &r;
  return nullptr;
}

Expr nat(std::uint64_t n) { return nat_lit(n); }

struct Pending {
  std::shared_ptr<SideCondition> slot;
  ApproxCtx ctx;
  ProbeFn fn;
};

std::optional<ValuePtr> ev(EvalMode m, const Expr& e, const Env& env, const EvalConfig& ec) {
  return evaluate(m, e, env, ec);
}

class Compiler {
 public:
  Compiler(const CompileOpts& opts, std::map<const ExprNode*, std::string> labels)
      : opts_(opts), labels_(std::move(labels)) {}

  Derivation run(const ApproxCtx& ctx, const Expr& e) {
    switch (e->kind) {
      case ExprKind::Var: return var_rule(ctx, e);
      case ExprKind::Lam: return lam_rule(ctx, e, nullptr);
      case ExprKind::App: {
        Derivation f = run(ctx, e->kids[0]);
        Derivation x = run(ctx, e->kids[1]);
        return app_rule(ctx, e, std::move(f), std::move(x));
      }
      case ExprKind::TyLam: return tylam_rule(ctx, e);
      case ExprKind::TyApp: return tyapp_rule(ctx, e);
      case ExprKind::Fix: return fix_rule(ctx, e);
      case ExprKind::If: return if_rule(ctx, e);
      case ExprKind::RealLit:
      case ExprKind::NatLit:
      case ExprKind::BoolLit: return lit_rule(ctx, e);
      case ExprKind::Builtin: return builtin_rule(ctx, e);
      case ExprKind::RedSeq: return perforate(ctx, e);
      default: throw NoRuleApplies(print(e), e->span);
    }
  }

  void validate() {
    SampleConfig cfg;
    cfg.trials = opts_.sample_budget_for_side_conditions;
    cfg.seed = opts_.seed;
    cfg.eval = opts_.eval;
    for (auto& p : pending_) {
      Verdict v = check_probes(p.ctx, cfg, p.fn);
      p.slot->verdict = v;
      if (v.status == VStatus::Fail)
        throw SideConditionFailed(p.slot->description, v.failures.front().to_json().dump());
    }
    pending_.clear();
  }

  void add_pending(std::shared_ptr<SideCondition> slot, ApproxCtx ctx, ProbeFn fn) {
    pending_.push_back({std::move(slot), std::move(ctx), std::move(fn)});
  }

  const CompileOpts& opts() const { return opts_; }

 private:
  Derivation node(std::string rule, const ApproxCtx& ctx, const Expr& e, Expr a, Expr q, ApproxTy f,
                  std::vector<Derivation> premises = {}) {
    Ty ta = infer_type(ctx.approx_ctx(), a);
    if (!ty_equal(ta, approx_type(f)))
      throw Error("internal: " + rule + " produced approximation of type " + print_ty(ta) + ", expected " +
                  print_ty(approx_type(f)));
    Ty tq = infer_type(ctx.error_ctx(), q);
    if (!ty_equal(tq, err_type(f)))
      throw Error("internal: " + rule + " produced error of type " + print_ty(tq) + ", expected " +
                  print_ty(err_type(f)));
    Derivation d;
    d.rule = std::move(rule);
    d.span = e->span;
    d.context = ctx.str();
    d.exact = e;
    d.approx = std::move(a);
    d.err = std::move(q);
    d.family = std::move(f);
    d.premises = std::move(premises);
    return d;
  }

  static std::shared_ptr<SideCondition> condition(Derivation& d, std::string description, std::string method) {
    auto s = std::make_shared<SideCondition>(SideCondition{std::move(description), std::move(method), {}});
    d.side_conditions.push_back(s);
    return s;
  }

  Derivation var_rule(const ApproxCtx& ctx, const Expr& e) {
    const ValTriple* v = ctx.lookup(e->name);
    if (!v) throw UnboundVariable(e->name);
    return node("A-Var", ctx, e, var(v->xa), var(v->xq), v->family);
  }

  Derivation lam_rule(const ApproxCtx& ctx, const Expr& e, std::shared_ptr<FixBinding> fix) {
    ApproxTy dom = family_of(e->ty);
    ApproxCtx inner = ctx.with_value(e->name, dom, std::move(fix));
    Derivation body = run(inner, e->kids[0]);
    Expr a = lam(e->name, approx_type(dom), body.approx);
    Expr q = lam(e->name, e->ty, lam(err_var(e->name), err_type(dom), body.err));
    ApproxTy f = pi_family(dom, body.family);
    std::vector<Derivation> ps;
    ps.push_back(std::move(body));
    return node("A-Lam", ctx, e, a, q, f, std::move(ps));
  }

  Derivation app_rule(const ApproxCtx& ctx, const Expr& e, Derivation f, Derivation x) {
    if (f.family->kind != FamKind::Pi) throw TypeMismatch("function family", fam_str(f.family), print(e));
    if (!fam_equal(f.family->dom, x.family)) throw TypeMismatch(fam_str(f.family->dom), fam_str(x.family), print(e));
    Expr a = app_fold(f.approx, x.approx);
    Expr q = app_fold(app_fold(f.err, x.exact), x.err);
    ApproxTy out = f.family->body;
    std::vector<Derivation> ps;
    ps.push_back(std::move(f));
    ps.push_back(std::move(x));
    return node("A-App", ctx, e, a, q, out, std::move(ps));
  }

  Derivation tylam_rule(const ApproxCtx& ctx, const Expr& e) {
    const std::string& X = e->name;
    Derivation body = run(ctx.with_type(X), e->kids[0]);
    Ty xq = tyvar(err_tyvar(X));
    Expr a = tylam(X, body.approx);
    Expr q = tylam(X, tylam(err_tyvar(X), lam(zero_name(X), xq, lam(plus_name(X), arrow(xq, arrow(xq, xq)), body.err))));
    ApproxTy f = poly_family(X, body.family);
    std::vector<Derivation> ps;
    ps.push_back(std::move(body));
    return node("A-TLam", ctx, e, a, q, f, std::move(ps));
  }

  Derivation tyapp_rule(const ApproxCtx& ctx, const Expr& e) {
    Derivation p = run(ctx, e->kids[0]);
    if (p.family->kind != FamKind::PiTy) throw TypeMismatch("polymorphic family", fam_str(p.family), print(e));
    ApproxTy g = family_of(e->ty);
    Expr a = tyapp(p.approx, approx_type(g));
    Expr q = app(app(tyapp(tyapp(p.err, exact_type(g)), err_type(g)), fam_zero(g)), fam_plus(g));
    ApproxTy f = instantiate_poly(p.family, g);
    std::vector<Derivation> ps;
    ps.push_back(std::move(p));
    return node("A-TApp", ctx, e, a, q, f, std::move(ps));
  }

  Derivation fix_rule(const ApproxCtx& ctx, const Expr& e) {
    const Expr& fn = e->kids[0];
    auto binding = std::make_shared<FixBinding>();
    Derivation p = fn->kind == ExprKind::Lam ? lam_rule(ctx, fn, binding) : run(ctx, fn);
    if (p.family->kind != FamKind::Pi || !fam_equal(p.family->dom, p.family->body))
      throw TypeMismatch("endofunction family", fam_str(p.family), print(e));
    binding->exact = fn;
    binding->approx = p.approx;
    binding->err = p.err;
    binding->ready = true;
    Expr a = fix(p.approx);
    Expr q = fix(app(p.err, fix(fn)));
    ApproxTy f = p.family->body;
    std::vector<Derivation> ps;
    ps.push_back(std::move(p));
    return node("A-Fix", ctx, e, a, q, f, std::move(ps));
  }

  Expr cross_term(const ApproxTy& f, const Expr& t, const Expr& e) {
    switch (f->kind) {
      case FamKind::Fl: return builtin("dr", {t, e});
      case FamKind::Nat: return builtin("dn", {t, e});
      case FamKind::Bool: return if_(t, if_(e, err_lit(0), err_inf()), if_(e, err_inf(), err_lit(0)));
      default: return fam_top(f);
    }
  }

  Derivation if_rule(const ApproxCtx& ctx, const Expr& e) {
    Derivation c = run(ctx, e->kids[0]);
    Derivation t = run(ctx, e->kids[1]);
    Derivation f = run(ctx, e->kids[2]);
    if (c.family->kind != FamKind::Bool) throw TypeMismatch("Bool", fam_str(c.family), print(e));
    if (!fam_equal(t.family, f.family)) throw TypeMismatch(fam_str(t.family), fam_str(f.family), print(e));
    ApproxTy fam = t.family;
    Expr a = if_(c.approx, t.approx, f.approx);
    Expr agree = if_(e->kids[0], t.err, f.err);
    bool exact_cond = is_zero_err(c.err);
    Expr q = exact_cond ? agree
                        : if_(builtin("iszeroq", {c.err}), agree,
                              fam_add(fam, fam_add(fam, t.err, f.err), cross_term(fam, e->kids[1], e->kids[2])));
    Expr ce = e->kids[0], te = e->kids[1], fe = e->kids[2];
    Expr ca = c.approx, ta = t.approx, fa = f.approx, cq = c.err;
    std::vector<Derivation> ps;
    ps.push_back(std::move(c));
    ps.push_back(std::move(t));
    ps.push_back(std::move(f));
    Derivation d = node("A-If", ctx, e, a, q, fam, std::move(ps));
    if (exact_cond) {
      condition(d, "condition compiled with error 0, so both programs take the same branch", "static");
      return d;
    }
    auto slot = condition(d, "branch error covers the taken branch and, when the condition error is nonzero, the crossed branch",
                          "sampled");
    add_pending(slot, ctx, [=](const Substitution& s, const EvalConfig& ec, Rng&) {
      std::vector<Probe> out;
      auto qv = ev(EvalMode::Error, q, s.err, ec);
      auto cv = ev(EvalMode::Exact, ce, s.exact, ec);
      if (!cv) {
        out.push_back({ProbeKind::Member, fam, std::nullopt, ev(EvalMode::Approx, a, s.approx, ec), qv});
        return out;
      }
      bool b = (*cv)->boolean();
      auto eb = ev(EvalMode::Exact, b ? te : fe, s.exact, ec);
      out.push_back({ProbeKind::Member, fam, eb, ev(EvalMode::Approx, b ? ta : fa, s.approx, ec), qv});
      auto cqv = ev(EvalMode::Error, cq, s.err, ec);
      if (!cqv || !as_err(**cqv).is_zero())
        out.push_back({ProbeKind::Member, fam, eb, ev(EvalMode::Approx, b ? fa : ta, s.approx, ec), qv});
      return out;
    });
    return d;
  }

  Derivation lit_rule(const ApproxCtx& ctx, const Expr& e) {
    switch (e->kind) {
      case ExprKind::RealLit: {
        double d = round_nearest(e->rational);
        Expr q = std::isfinite(d) ? err_lit(abs_of(e->rational - exact_value(d))) : err_inf();
        return node("R-Lit", ctx, e, float_lit(d), q, fl_family());
      }
      case ExprKind::NatLit: return node("R-Lit", ctx, e, e, nat(0), nat_family());
      default: return node("R-Lit", ctx, e, e, err_lit(0), bool_family());
    }
  }

  Derivation builtin_rule(const ApproxCtx& ctx, const Expr& e) {
    const std::string& op = e->op->name;
    Expr bare = builtin(op);
    ApproxTy f = family_of(builtin_type(*e->op));
    Derivation cur;
    if (op == "sinr" && opts_.enable_sin_subst) {
      Expr x = var("x"), xq = var(err_var("x"));
      Expr a = lam("x", float_ty(), x);
      Expr q = lam("x", real_ty(),
                   lam(err_var("x"), err_ty(), builtin("+q", {xq, builtin("absr", {builtin("-r", {x, builtin("sinr", {x})})})})));
      cur = node("R-SinSubst", ctx, bare, a, q, f);
    } else if (const OpRule* r = find_op_rule(op)) {
      cur = node("R-Op", ctx, bare, builtin(r->approx), builtin(r->err), f);
    } else {
      throw NoRuleApplies("builtin " + op, e->span);
    }
    cur.span = e->span;
    std::vector<Expr> args;
    for (const auto& k : e->kids) {
      args.push_back(k);
      Derivation x = run(ctx, k);
      Derivation next = app_rule(ctx, builtin(op, args), std::move(cur), std::move(x));
      next.span = e->span;
      cur = std::move(next);
    }
    return cur;
  }

  Derivation perforate(const ApproxCtx& ctx, const Expr& e);

  const CompileOpts& opts_;
  std::map<const ExprNode*, std::string> labels_;
  std::vector<Pending> pending_;
};

Derivation Compiler::perforate(const ApproxCtx& ctx, const Expr& e) {
  const Expr &e1 = e->kids[0], &e2 = e->kids[1], &e3 = e->kids[2];
  std::string site;
  if (auto it = labels_.find(e.get()); it != labels_.end()) site = it->second;
  std::uint64_t K = 1;
  if (auto it = opts_.perforation.find(site); it != opts_.perforation.end()) K = it->second;
  if (K == 0) throw Error("perforation factor for " + site + " must be at least 1");

  Derivation n1 = run(ctx, e1);
  Derivation n2 = run(ctx, e2);
  Derivation n3 = run(ctx, e3);
  if (n3.family->kind != FamKind::Pi || n3.family->dom->kind != FamKind::Nat)
    throw TypeMismatch("Nat=>F generator", fam_str(n3.family), print(e));
  ApproxTy F = n3.family->body;
  bool plus = e1->kind == ExprKind::Builtin && e1->kids.empty() &&
              ((F->kind == FamKind::Fl && e1->op->name == "+r") || (F->kind == FamKind::Nat && e1->op->name == "+n"));
  if (K > 1 && !plus) throw Unsupported("perforating " + site + " needs +r or +n as the combiner");

  const Expr &a1 = n1.approx, &a2 = n2.approx, &a3 = n3.approx;
  const Expr &q1 = n1.err, &q3 = n3.err;
  Ty A = approx_type(F), E = exact_type(F), Q = err_type(F);
  Expr Kl = nat(K);
  const std::string I = "i^g", ACC = "acc^g", L = "loop^g", S = "s^g", W = "w^g", R = "r^g", X = "x^g";
  Expr i = var(I);

  Expr approx;
  if (K == 1) {
    approx = redseq(a1, a2, a3);
  } else {
    Expr body = var(ACC);
    for (std::uint64_t k = 0; k < K; ++k) body = app(app(a1, i), body);
    approx = redseq(lam(I, A, lam(ACC, A, body)), builtin("ceildivn", {a2, Kl}),
                    lam(I, nat_ty(), app(a3, builtin("*n", {i, Kl}))));
  }

  auto q3_at = [&](const Expr& x) { return app(app(q3, x), nat(0)); };
  auto e3_at = [&](const Expr& x) { return app(e3, x); };
  auto add = [&](const Expr& x, const Expr& y) { return fam_add(F, x, y); };

  Expr err;
  Expr qprime;
  bool count_divisible = K == 1 || (e2->kind == ExprKind::NatLit && e2->nat % K == 0);
  Expr M = K == 1 ? e2 : builtin("ceilK", {Kl, e2});
  if (plus) {
    bool fl = F->kind == FamKind::Fl;
    Expr x = var(X);
    Expr flo = K == 1 ? x : builtin("floorK", {Kl, x});
    Expr term = q3_at(flo);
    if (K > 1) term = add(term, builtin(fl ? "dr" : "dn", {e3_at(x), e3_at(flo)}));
    err = redseq(builtin(fl ? "+q" : "+n"), M, lam(X, nat_ty(), term));
    if (!count_divisible) {
      qprime = builtin(fl ? "dr" : "dn", {redseq(e1, e2, e3), redseq(e1, M, e3)});
      err = add(err, qprime);
    }
    if (K > 1) {
      Expr seed = fl ? builtin("absr", {builtin("*r", {real_lit(Rational(static_cast<unsigned long>(K - 1))), e3_at(nat(0))})})
                     : builtin("*n", {nat(K - 1), e3_at(nat(0))});
      err = add(err, seed);
    }
    if (fl) {
      // rounding of every float addition the approximate loop performs
      Expr g = builtin("floorK", {Kl, i});
      Expr Qg = q3_at(g);
      Expr t = builtin("+r", {var(S), e3_at(g)});
      Expr radius = builtin("+q", {builtin("+q", {var(W), Qg}), var(R)});
      Expr step = app(app(app(app(var(L), builtin("+n", {i, nat(1)})), t), builtin("+q", {var(W), Qg})),
                      builtin("+q", {var(R), builtin("rnderr", {t, radius})}));
      Expr body = if_(builtin("leqn", {M, i}), var(R), step);
      Ty loop_ty = arrow(nat_ty(), arrow(real_ty(), arrow(err_ty(), arrow(err_ty(), err_ty()))));
      Expr loop = fix(lam(L, loop_ty, lam(I, nat_ty(), lam(S, real_ty(), lam(W, err_ty(), lam(R, err_ty(), body))))));
      Expr rounding = app(app(app(app(loop, Kl), e3_at(nat(0))), q3_at(nat(0))), err_lit(0));
      err = add(err, rounding);
    }
  } else {
    // fold the combiner's own error over the sequence
    Expr step = app(app(app(var(L), builtin("+n", {i, nat(1)})), app(app(e1, e3_at(i)), var(S))),
                    app(app(app(app(q1, e3_at(i)), q3_at(i)), var(S)), var(W)));
    Expr body = if_(builtin("leqn", {e2, i}), var(W), step);
    Ty loop_ty = arrow(nat_ty(), arrow(E, arrow(Q, Q)));
    Expr loop = fix(lam(L, loop_ty, lam(I, nat_ty(), lam(S, E, lam(W, Q, body)))));
    err = app(app(app(loop, nat(1)), e3_at(nat(0))), q3_at(nat(0)));
  }
  bool exact_count = is_zero_err(n2.err);
  if (!exact_count) err = if_(builtin("eqn", {n2.err, nat(0)}), err, fam_top(F));

  std::vector<Derivation> ps;
  ps.push_back(std::move(n1));
  ps.push_back(std::move(n2));
  ps.push_back(std::move(n3));
  Derivation d = node("R-Perforate", ctx, e, approx, err, F, std::move(ps));
  d.site = site;
  condition(d, exact_count ? "count compiled with error 0" : "count error checked at run time; nonzero gives the top error",
            exact_count ? "static" : "construction");
  if (K > 1 && plus) {
    bool fl = F->kind == FamKind::Fl;
    auto slot = condition(d, "per-element bound d(e3 x, e3 floor_K x) on sampled x", "sampled");
    add_pending(slot, ctx, [=](const Substitution& s, const EvalConfig& ec, Rng& rng) {
      std::vector<Probe> out;
      auto n = ev(EvalMode::Exact, M, s.exact, ec);
      if (!n || (*n)->nat() == 0) return out;
      Expr x = nat(rng.below((*n)->nat()));
      Expr flo = builtin("floorK", {Kl, x});
      Expr qx = builtin(fl ? "dr" : "dn", {e3_at(x), e3_at(flo)});
      out.push_back({ProbeKind::Aeq, F, ev(EvalMode::Exact, e3_at(x), s.exact, ec),
                     ev(EvalMode::Exact, e3_at(flo), s.exact, ec), ev(EvalMode::Error, qx, s.err, ec)});
      return out;
    });
  }
  if (plus && K > 1) {
    if (count_divisible) {
      condition(d, "q' = 0: count is a literal multiple of K", "static");
    } else {
      auto slot = condition(d, "q' bounds the distance between the reductions over e2 and ceil_K e2", "sampled");
      Expr lhs = redseq(e1, e2, e3), rhs = redseq(e1, M, e3);
      add_pending(slot, ctx, [=](const Substitution& s, const EvalConfig& ec, Rng&) {
        return std::vector<Probe>{{ProbeKind::Aeq, F, ev(EvalMode::Exact, lhs, s.exact, ec),
                                   ev(EvalMode::Exact, rhs, s.exact, ec), ev(EvalMode::Error, qprime, s.err, ec)}};
      });
    }
  }
  return d;
}

}  // namespace

std::map<const ExprNode*, std::string> site_labels(const Expr& e) {
  std::map<const ExprNode*, std::string> out;
  label_sites(e, out);
  return out;
}

CompileResult weaken(const CompileResult& r, const Expr& bigger, const CompileOpts& opts) {
  Ty tq = infer_type({}, bigger);
  if (!ty_equal(tq, err_type(r.family))) throw TypeMismatch(print_ty(err_type(r.family)), print_ty(tq), "weakened error");
  Derivation d;
  d.rule = "A-Weak";
  d.span = r.derivation.span;
  d.context = r.derivation.context;
  d.exact = r.derivation.exact;
  d.approx = r.approx;
  d.err = bigger;
  d.family = r.family;
  d.premises.push_back(r.derivation);
  auto slot = std::make_shared<SideCondition>(SideCondition{"original error <= weakened error", "sampled", {}});
  d.side_conditions.push_back(slot);
  SampleConfig cfg;
  cfg.trials = opts.sample_budget_for_side_conditions;
  cfg.seed = opts.seed;
  cfg.eval = opts.eval;
  Expr q = r.err;
  ApproxTy f = r.family;
  Verdict v = check_probes(ApproxCtx{}, cfg, [&](const Substitution&, const EvalConfig& ec, Rng&) {
    return std::vector<Probe>{{ProbeKind::Leq, f, ev(EvalMode::Error, q, nullptr, ec), ev(EvalMode::Error, bigger, nullptr, ec), std::nullopt}};
  });
  slot->verdict = v;
  if (v.status == VStatus::Fail) throw SideConditionFailed(slot->description, v.failures.front().to_json().dump());
  return CompileResult{r.approx, bigger, r.family, std::move(d)};
}

CompileResult compile(const ApproxCtx& ctx, const Expr& e, const ApproxTy& target, const CompileOpts& opts) {
  check_names(e);
  Ty t = infer_type(ctx.exact_ctx(), e);
  if (!ty_equal(t, exact_type(target))) throw TypeMismatch(print_ty(exact_type(target)), print_ty(t), "compile target");
  Compiler c(opts, site_labels(e));
  Derivation d = c.run(ctx, e);
  c.validate();
  CompileResult r{d.approx, d.err, d.family, d};
  if (opts.weaken_to || opts.weaken_by) {
    if (!ctx.empty()) throw Unsupported("weakening is only offered for closed programs");
    Expr bigger = opts.weaken_to ? *opts.weaken_to : fam_add(r.family, r.err, fam_const(r.family, *opts.weaken_by));
    r = weaken(r, bigger, opts);
  }
  return r;
}

CompileResult compile_program(const Expr& e, const CompileOpts& opts) {
  check_names(e);
  Ty t = infer_type({}, e);
  return compile(ApproxCtx{}, e, family_of(t), opts);
}

}  // namespace approx
