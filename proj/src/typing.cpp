#include "approx/typing.hpp"

#include <algorithm>

namespace approx {

TyCtx& TyCtx::bind(std::string name, Ty t) {
  terms_.emplace_back(std::move(name), std::move(t));
  return *this;
}

TyCtx& TyCtx::bind_type(std::string name) {
  types_.push_back(std::move(name));
  return *this;
}

TyCtx TyCtx::with(std::string name, Ty t) const {
  TyCtx c = *this;
  c.bind(std::move(name), std::move(t));
  return c;
}

TyCtx TyCtx::with_type(std::string name) const {
  TyCtx c = *this;
  c.bind_type(std::move(name));
  return c;
}

std::optional<Ty> TyCtx::lookup(const std::string& name) const {
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (it->first == name) return it->second;
  }
  return std::nullopt;
}

bool TyCtx::has_type(const std::string& name) const {
  return std::find(types_.begin(), types_.end(), name) != types_.end();
}

void kind_check(const TyCtx& ctx, const Ty& t) {
  switch (t->kind) {
    case TyKind::Var:
      if (!ctx.has_type(t->name)) throw UnboundTypeVariable(t->name);
      return;
    case TyKind::Arrow:
      kind_check(ctx, t->dom);
      kind_check(ctx, t->body);
      return;
    case TyKind::Forall:
      kind_check(ctx.with_type(t->name), t->body);
      return;
    default:
      return;
  }
}

namespace {

std::string where(const Expr& e) {
  std::string s = print(e);
  if (s.size() > 60) s = s.substr(0, 57) + "...";
  return s;
}

void expect(const Ty& expected, const Ty& found, const Expr& e) {
  if (!ty_equal(expected, found)) throw TypeMismatch(print_ty(expected), print_ty(found), where(e));
}

}  // namespace

Ty infer_type(const TyCtx& ctx, const Expr& e) {
  switch (e->kind) {
    case ExprKind::Var: {
      auto t = ctx.lookup(e->name);
      if (!t) throw UnboundVariable(e->name);
      return *t;
    }
    case ExprKind::Lam: {
      kind_check(ctx, e->ty);
      Ty body = infer_type(ctx.with(e->name, e->ty), e->kids[0]);
      return arrow(e->ty, body);
    }
    case ExprKind::App: {
      Ty f = infer_type(ctx, e->kids[0]);
      Ty x = infer_type(ctx, e->kids[1]);
      if (f->kind != TyKind::Arrow) throw TypeMismatch("a function type", print_ty(f), where(e));
      expect(f->dom, x, e);
      return f->body;
    }
    case ExprKind::TyLam: {
      Ty body = infer_type(ctx.with_type(e->name), e->kids[0]);
      return forall(e->name, body);
    }
    case ExprKind::TyApp: {
      kind_check(ctx, e->ty);
      Ty f = infer_type(ctx, e->kids[0]);
      if (f->kind != TyKind::Forall) throw KindError("type application of non-polymorphic term at " + where(e));
      return subst_ty(f->body, f->name, e->ty);
    }
    case ExprKind::Fix: {
      Ty f = infer_type(ctx, e->kids[0]);
      if (f->kind != TyKind::Arrow) throw TypeMismatch("(-> T T)", print_ty(f), where(e));
      expect(f->dom, f->body, e);
      return f->dom;
    }
    case ExprKind::If: {
      expect(bool_ty(), infer_type(ctx, e->kids[0]), e);
      Ty t = infer_type(ctx, e->kids[1]);
      expect(t, infer_type(ctx, e->kids[2]), e);
      return t;
    }
    case ExprKind::RealLit: return real_ty();
    case ExprKind::NatLit: return nat_ty();
    case ExprKind::BoolLit: return bool_ty();
    case ExprKind::FloatLit: return float_ty();
    case ExprKind::ErrLit: return err_ty();
    case ExprKind::Builtin: {
      for (std::size_t i = 0; i < e->kids.size(); ++i) expect(e->op->params[i], infer_type(ctx, e->kids[i]), e);
      return builtin_type(*e->op, e->kids.size());
    }
    case ExprKind::RedSeq: {
      Ty g = infer_type(ctx, e->kids[2]);
      if (g->kind != TyKind::Arrow) throw TypeMismatch("(-> Nat T)", print_ty(g), where(e));
      expect(nat_ty(), g->dom, e);
      Ty t = g->body;
      expect(arrow(t, arrow(t, t)), infer_type(ctx, e->kids[0]), e);
      expect(nat_ty(), infer_type(ctx, e->kids[1]), e);
      return t;
    }
    case ExprKind::Bottom:
      kind_check(ctx, e->ty);
      return e->ty;
  }
  throw Error("unreachable expression kind");
}

}  // namespace approx
