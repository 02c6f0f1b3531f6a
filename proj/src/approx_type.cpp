#include "approx/approx_type.hpp"

namespace approx {

namespace {

ApproxTy make_fam(FamKind k, std::string var = {}, ApproxTy dom = nullptr, ApproxTy body = nullptr) {
  return std::make_shared<const ApproxTyNode>(ApproxTyNode{k, std::move(var), std::move(dom), std::move(body)});
}

}  // namespace

ApproxTy fl_family() { static const ApproxTy f = make_fam(FamKind::Fl); return f; }
ApproxTy nat_family() { static const ApproxTy f = make_fam(FamKind::Nat); return f; }
ApproxTy bool_family() { static const ApproxTy f = make_fam(FamKind::Bool); return f; }
ApproxTy pi_family(ApproxTy dom, ApproxTy body) { return make_fam(FamKind::Pi, {}, std::move(dom), std::move(body)); }
ApproxTy poly_family(std::string var, ApproxTy body) { return make_fam(FamKind::PiTy, std::move(var), nullptr, std::move(body)); }
ApproxTy fam_var(std::string var) { return make_fam(FamKind::Var, std::move(var)); }

std::string err_tyvar(const std::string& x) { return x + "^q"; }
std::string zero_name(const std::string& x) { return x + "^0"; }
std::string plus_name(const std::string& x) { return x + "^+"; }
std::string err_var(const std::string& x) { return x + "^q"; }

Ty exact_type(const ApproxTy& f) {
  switch (f->kind) {
    case FamKind::Fl: return real_ty();
    case FamKind::Nat: return nat_ty();
    case FamKind::Bool: return bool_ty();
    case FamKind::Pi: return arrow(exact_type(f->dom), exact_type(f->body));
    case FamKind::PiTy: return forall(f->var, exact_type(f->body));
    case FamKind::Var: return tyvar(f->var);
  }
  return nullptr;
}

Ty approx_type(const ApproxTy& f) {
  switch (f->kind) {
    case FamKind::Fl: return float_ty();
    case FamKind::Nat: return nat_ty();
    case FamKind::Bool: return bool_ty();
    case FamKind::Pi: return arrow(approx_type(f->dom), approx_type(f->body));
    case FamKind::PiTy: return forall(f->var, approx_type(f->body));
    case FamKind::Var: return tyvar(f->var);
  }
  return nullptr;
}

Ty err_type(const ApproxTy& f) {
  switch (f->kind) {
    case FamKind::Fl: return err_ty();
    case FamKind::Nat: return nat_ty();
    case FamKind::Bool: return err_ty();
    case FamKind::Pi: return arrow(exact_type(f->dom), arrow(err_type(f->dom), err_type(f->body)));
    case FamKind::PiTy: {
      Ty xq = tyvar(err_tyvar(f->var));
      Ty inner = arrow(xq, arrow(arrow(xq, arrow(xq, xq)), err_type(f->body)));
      return forall(f->var, forall(err_tyvar(f->var), inner));
    }
    case FamKind::Var: return tyvar(err_tyvar(f->var));
  }
  return nullptr;
}

namespace {

// Fresh binder names for generated error functions; depth keeps nested
// liftings apart.
std::string gen(const char* base, int depth) { return std::string(base) + "^p" + std::to_string(depth); }

Expr zero_at(const ApproxTy& f, int depth);
Expr plus_at(const ApproxTy& f, int depth);

Expr zero_at(const ApproxTy& f, int depth) {
  switch (f->kind) {
    case FamKind::Fl:
    case FamKind::Bool: return err_lit(0);
    case FamKind::Nat: return nat_lit(0);
    case FamKind::Pi:
      return lam(gen("x", depth), exact_type(f->dom),
                 lam(gen("xq", depth), err_type(f->dom), zero_at(f->body, depth + 1)));
    case FamKind::PiTy: {
      const std::string& X = f->var;
      Ty xq = tyvar(err_tyvar(X));
      return tylam(X, tylam(err_tyvar(X),
                            lam(zero_name(X), xq,
                                lam(plus_name(X), arrow(xq, arrow(xq, xq)), zero_at(f->body, depth + 1)))));
    }
    case FamKind::Var: return var(zero_name(f->var));
  }
  return nullptr;
}

Expr plus_at(const ApproxTy& f, int depth) {
  switch (f->kind) {
    case FamKind::Fl:
    case FamKind::Bool: return builtin("+q");
    case FamKind::Nat: return builtin("+n");
    case FamKind::Pi: {
      std::string a = gen("qa", depth), b = gen("qb", depth), x = gen("x", depth), xq = gen("xq", depth);
      Ty q = err_type(f);
      Expr lhs = app(app(var(a), var(x)), var(xq));
      Expr rhs = app(app(var(b), var(x)), var(xq));
      Expr body = app_fold(app_fold(plus_at(f->body, depth + 1), lhs), rhs);
      return lam(a, q, lam(b, q, lam(x, exact_type(f->dom), lam(xq, err_type(f->dom), body))));
    }
    case FamKind::PiTy: {
      std::string a = gen("qa", depth), b = gen("qb", depth);
      const std::string& X = f->var;
      Ty q = err_type(f);
      Ty xq = tyvar(err_tyvar(X));
      auto inst = [&](const std::string& v) {
        return app(app(tyapp(tyapp(var(v), tyvar(X)), xq), var(zero_name(X))), var(plus_name(X)));
      };
      Expr body = app_fold(app_fold(plus_at(f->body, depth + 1), inst(a)), inst(b));
      Expr inner = tylam(X, tylam(err_tyvar(X), lam(zero_name(X), xq, lam(plus_name(X), arrow(xq, arrow(xq, xq)), body))));
      return lam(a, q, lam(b, q, inner));
    }
    case FamKind::Var: return var(plus_name(f->var));
  }
  return nullptr;
}

Expr const_at(const ApproxTy& f, const Rational& c, bool top, int depth) {
  switch (f->kind) {
    case FamKind::Fl:
    case FamKind::Bool: return top ? err_inf() : err_lit(c);
    case FamKind::Nat: {
      if (top) return bottom(nat_ty());
      Integer n = ceil_of(c);
      if (!mpz_fits_ulong_p(n.get_mpz_t())) return bottom(nat_ty());
      return nat_lit(n.get_ui());
    }
    case FamKind::Pi:
      return lam(gen("x", depth), exact_type(f->dom),
                 lam(gen("xq", depth), err_type(f->dom), const_at(f->body, c, top, depth + 1)));
    case FamKind::PiTy: {
      const std::string& X = f->var;
      Ty xq = tyvar(err_tyvar(X));
      return tylam(X, tylam(err_tyvar(X), lam(zero_name(X), xq,
                                              lam(plus_name(X), arrow(xq, arrow(xq, xq)),
                                                  const_at(f->body, c, top, depth + 1)))));
    }
    case FamKind::Var:
      // nothing above every element of an abstract error type except divergence
      return bottom(tyvar(err_tyvar(f->var)));
  }
  return nullptr;
}

}  // namespace

Expr fam_zero(const ApproxTy& f) { return zero_at(f, 0); }
Expr fam_plus(const ApproxTy& f) { return plus_at(f, 0); }
Expr fam_top(const ApproxTy& f) { return const_at(f, 0, true, 0); }
Expr fam_const(const ApproxTy& f, const Rational& c) { return const_at(f, c, false, 0); }

Expr fam_add(const ApproxTy& f, const Expr& q1, const Expr& q2) {
  return app_fold(app_fold(fam_plus(f), q1), q2);
}

bool fam_equal(const ApproxTy& a, const ApproxTy& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FamKind::Pi: return fam_equal(a->dom, b->dom) && fam_equal(a->body, b->body);
    case FamKind::PiTy: return a->var == b->var && fam_equal(a->body, b->body);
    case FamKind::Var: return a->var == b->var;
    default: return true;
  }
}

bool fam_scalar(const ApproxTy& f) {
  return f->kind == FamKind::Fl || f->kind == FamKind::Nat || f->kind == FamKind::Bool;
}

std::string fam_str(const ApproxTy& f) {
  switch (f->kind) {
    case FamKind::Fl: return "Fl";
    case FamKind::Nat: return "Nat";
    case FamKind::Bool: return "Bool";
    case FamKind::Pi: {
      std::string d = fam_str(f->dom);
      if (f->dom->kind == FamKind::Pi || f->dom->kind == FamKind::PiTy) d = "(" + d + ")";
      return d + "=>" + fam_str(f->body);
    }
    case FamKind::PiTy: return "forall " + f->var + ". " + fam_str(f->body);
    case FamKind::Var: return f->var;
  }
  return "?";
}

nlohmann::ordered_json fam_json(const ApproxTy& f) {
  nlohmann::ordered_json j;
  j["family"] = fam_str(f);
  j["exact_type"] = print_ty(exact_type(f));
  j["approx_type"] = print_ty(approx_type(f));
  j["error_type"] = print_ty(err_type(f));
  return j;
}

ApproxTy family_of(const Ty& t) {
  switch (t->kind) {
    case TyKind::Real: return fl_family();
    case TyKind::Nat: return nat_family();
    case TyKind::Bool: return bool_family();
    case TyKind::Arrow: return pi_family(family_of(t->dom), family_of(t->body));
    case TyKind::Forall: return poly_family(t->name, family_of(t->body));
    case TyKind::Var: return fam_var(t->name);
    default: throw Error("no approximation family for type " + print_ty(t));
  }
}

ApproxTy subst_family(const ApproxTy& body, const std::string& v, const ApproxTy& f) {
  switch (body->kind) {
    case FamKind::Var: return body->var == v ? f : body;
    case FamKind::Pi: return pi_family(subst_family(body->dom, v, f), subst_family(body->body, v, f));
    case FamKind::PiTy:
      if (body->var == v) return body;
      return poly_family(body->var, subst_family(body->body, v, f));
    default: return body;
  }
}

ApproxTy instantiate_poly(const ApproxTy& poly, const ApproxTy& f) {
  if (poly->kind != FamKind::PiTy) throw Error("instantiate_poly: not a polymorphic family: " + fam_str(poly));
  return subst_family(poly->body, poly->var, f);
}

// ------------------------------
// contexts
// ------------------------------

ApproxCtx ApproxCtx::with_value(const std::string& x, ApproxTy family, std::shared_ptr<FixBinding> fix) const {
  ApproxCtx c = *this;
  c.entries_.push_back(ValTriple{x, x, err_var(x), std::move(family), std::move(fix)});
  return c;
}

ApproxCtx ApproxCtx::with_type(const std::string& x) const {
  ApproxCtx c = *this;
  c.entries_.push_back(TyTriple{x, x, err_tyvar(x), zero_name(x), plus_name(x)});
  return c;
}

ApproxCtx ApproxCtx::with_constraint(std::string description, Expr prop) const {
  ApproxCtx c = *this;
  c.entries_.push_back(Constraint{std::move(description), std::move(prop)});
  return c;
}

const ValTriple* ApproxCtx::lookup(const std::string& x) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (const auto* v = std::get_if<ValTriple>(&*it); v && v->xe == x) return v;
  }
  return nullptr;
}

TyCtx ApproxCtx::exact_ctx() const {
  TyCtx c;
  for (const auto& e : entries_) {
    if (const auto* v = std::get_if<ValTriple>(&e)) c.bind(v->xe, exact_type(v->family));
    if (const auto* t = std::get_if<TyTriple>(&e)) c.bind_type(t->xe);
  }
  return c;
}

TyCtx ApproxCtx::approx_ctx() const {
  TyCtx c;
  for (const auto& e : entries_) {
    if (const auto* v = std::get_if<ValTriple>(&e)) c.bind(v->xa, approx_type(v->family));
    if (const auto* t = std::get_if<TyTriple>(&e)) c.bind_type(t->xa);
  }
  return c;
}

TyCtx ApproxCtx::error_ctx() const {
  TyCtx c;
  for (const auto& e : entries_) {
    if (const auto* v = std::get_if<ValTriple>(&e)) {
      c.bind(v->xe, exact_type(v->family));
      c.bind(v->xq, err_type(v->family));
    }
    if (const auto* t = std::get_if<TyTriple>(&e)) {
      c.bind_type(t->xe);
      c.bind_type(t->xq);
      Ty q = tyvar(t->xq);
      c.bind(t->zero, q);
      c.bind(t->plus, arrow(q, arrow(q, q)));
    }
  }
  return c;
}

std::string ApproxCtx::str() const {
  std::string s;
  for (const auto& e : entries_) {
    if (!s.empty()) s += ", ";
    if (const auto* v = std::get_if<ValTriple>(&e)) {
      s += "(" + v->xe + "," + v->xa + "," + v->xq + "):" + fam_str(v->family);
      if (v->fix) s += " [fix]";
    } else if (const auto* t = std::get_if<TyTriple>(&e)) {
      s += "(" + t->xe + "," + t->xa + "," + t->xq + "," + t->zero + "," + t->plus + ")";
    } else {
      s += std::get<Constraint>(e).description;
    }
  }
  return s.empty() ? "." : s;
}

}  // namespace approx
