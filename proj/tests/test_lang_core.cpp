#include "approx/rng.hpp"
#include "approx/syntax.hpp"
#include "approx/typing.hpp"

#include <gtest/gtest.h>

using namespace approx;

namespace {

Ty ty(const char* s) { return parse_type(s); }

// Random well-typed term of type t (Real, Nat or Bool) that may mention the
// free variables in `vars`.
Expr gen(Rng& rng, const Ty& t, const std::vector<std::pair<std::string, Ty>>& vars, int depth) {
  std::vector<Expr> leaves;
  for (const auto& [n, vt] : vars)
    if (ty_equal(vt, t)) leaves.push_back(var(n));
  if (t->kind == TyKind::Real) leaves.push_back(real_lit(Rational(rng.range(-20, 20), rng.range(1, 9))));
  if (t->kind == TyKind::Nat) leaves.push_back(nat_lit(rng.below(10)));
  if (t->kind == TyKind::Bool) leaves.push_back(bool_lit(rng.chance(1, 2)));
  if (depth == 0 || rng.chance(1, 4)) return leaves[rng.below(leaves.size())];
  switch (rng.below(4)) {
    case 0:
      if (t->kind == TyKind::Real) {
        const char* ops[] = {"+r", "-r", "*r"};
        return builtin(ops[rng.below(3)], {gen(rng, t, vars, depth - 1), gen(rng, t, vars, depth - 1)});
      }
      if (t->kind == TyKind::Nat) return builtin("+n", {gen(rng, t, vars, depth - 1), gen(rng, t, vars, depth - 1)});
      return builtin("leqr", {gen(rng, real_ty(), vars, depth - 1), gen(rng, real_ty(), vars, depth - 1)});
    case 1:
      return if_(gen(rng, bool_ty(), vars, depth - 1), gen(rng, t, vars, depth - 1), gen(rng, t, vars, depth - 1));
    case 2: {
      // beta redex with a fresh binder, or one that shadows x
      std::string b = rng.chance(1, 3) ? "x" : "y" + std::to_string(depth);
      Ty bt = rng.chance(1, 2) ? real_ty() : nat_ty();
      std::vector<std::pair<std::string, Ty>> inner;
      for (const auto& v : vars)
        if (v.first != b) inner.push_back(v);
      inner.emplace_back(b, bt);
      return app(lam(b, bt, gen(rng, t, inner, depth - 1)), gen(rng, bt, vars, depth - 1));
    }
    default:
      if (t->kind == TyKind::Real) return builtin("nat2real", {gen(rng, nat_ty(), vars, depth - 1)});
      return leaves[rng.below(leaves.size())];
  }
}

}  // namespace

TEST(Parse, IdentityLambda) {
  Expr e = parse("(lam (x Real) x)");
  ASSERT_EQ(e->kind, ExprKind::Lam);
  EXPECT_EQ(e->name, "x");
  EXPECT_TRUE(ty_equal(e->ty, real_ty()));
  EXPECT_EQ(e->kids[0]->kind, ExprKind::Var);
}

TEST(Parse, AppOfBuiltinFolds) {
  Expr e = parse("(app sinr 1/2)");
  ASSERT_EQ(e->kind, ExprKind::Builtin);
  EXPECT_EQ(e->name, "sinr");
  ASSERT_EQ(e->kids.size(), 1u);
  EXPECT_EQ(e->kids[0]->kind, ExprKind::RealLit);
  EXPECT_EQ(e->kids[0]->rational, Rational(1, 2));
}

TEST(Parse, RedSeq) {
  Expr e = parse("(redseq +r 8 (lam (i Nat) (nat2real i)))");
  ASSERT_EQ(e->kind, ExprKind::RedSeq);
  EXPECT_EQ(e->kids[0]->name, "+r");
  EXPECT_EQ(e->kids[1]->kind, ExprKind::NatLit);
  EXPECT_EQ(e->kids[1]->nat, 8u);
  EXPECT_EQ(e->kids[2]->kind, ExprKind::Lam);
}

TEST(Parse, LiteralsAreExact) {
  EXPECT_EQ(parse("0.1")->rational, Rational(1, 10));
  EXPECT_EQ(parse("-1.25")->rational, Rational(-5, 4));
  EXPECT_EQ(parse("0.1415927")->rational, Rational(1415927, 10000000));
  Expr big = parse("123456789012345678901234567890/7");
  Rational want(Integer("123456789012345678901234567890", 10), 7);
  want.canonicalize();
  EXPECT_EQ(big->rational, want);
  EXPECT_EQ(parse("4/6")->rational, Rational(2, 3));
  EXPECT_EQ(parse("7")->kind, ExprKind::NatLit);
  EXPECT_EQ(parse("007")->nat, 7u);
}

TEST(Parse, Comments) {
  Expr e = parse("; leading\n(lam (x Real) ; binder\n x)");
  EXPECT_EQ(e->kind, ExprKind::Lam);
}

TEST(Parse, SyntaxErrorHasPosition) {
  try {
    parse("(lam (x Real)\n  ");
    FAIL();
  } catch (const SyntaxError& ex) {
    EXPECT_NE(std::string(ex.what()).find("2:"), std::string::npos) << ex.what();
  }
  EXPECT_THROW(parse("(lam x Real x)"), SyntaxError);
  EXPECT_THROW(parse("(app f x y)"), SyntaxError);
  EXPECT_THROW(parse("(+r 1.0 2.0 3.0)"), SyntaxError);
}

TEST(Parse, UnknownBuiltin) { EXPECT_THROW(parse("(cosr 1.0)"), UnknownBuiltin); }

TEST(Parse, Types) {
  EXPECT_TRUE(ty_equal(ty("(-> Real Real Real)"), arrow(real_ty(), arrow(real_ty(), real_ty()))));
  EXPECT_TRUE(ty_equal(ty("(forall X (-> X X))"), forall("X", arrow(tyvar("X"), tyvar("X")))));
  EXPECT_FALSE(ty_equal(real_ty(), err_ty()));
  EXPECT_TRUE(ty_equal(ty("(forall X X)"), ty("(forall Y Y)")));
}

TEST(Typing, Examples) {
  EXPECT_TRUE(ty_equal(infer_type({}, parse("(lam (x Real) x)")), arrow(real_ty(), real_ty())));
  EXPECT_TRUE(ty_equal(infer_type({}, parse("sinr")), arrow(real_ty(), real_ty())));
  EXPECT_TRUE(ty_equal(infer_type({}, parse("(tlam X (lam (x X) x))")), ty("(forall X (-> X X))")));
  EXPECT_TRUE(ty_equal(infer_type({}, parse("(redseq +r 8 (lam (i Nat) (nat2real i)))")), real_ty()));
  EXPECT_TRUE(ty_equal(infer_type({}, parse("(+q #q1/2 #qinf)")), err_ty()));
  EXPECT_TRUE(ty_equal(infer_type({}, parse("(bottom Real)")), real_ty()));
  EXPECT_TRUE(ty_equal(infer_type({}, parse("(tyapp (tlam X (lam (x X) x)) Nat)")), ty("(-> Nat Nat)")));
}

TEST(Typing, Errors) {
  EXPECT_THROW(infer_type({}, parse("(+r 1 2.0)")), TypeMismatch);
  EXPECT_THROW(infer_type({}, parse("(app (lam (x Real) x) true)")), TypeMismatch);
  EXPECT_THROW(infer_type({}, parse("y")), UnboundVariable);
  EXPECT_THROW(infer_type({}, parse("(lam (x X) x)")), UnboundTypeVariable);
  EXPECT_THROW(infer_type({}, parse("(if 1.0 2.0 3.0)")), TypeMismatch);
  EXPECT_THROW(infer_type({}, parse("(tyapp 1.0 Real)")), KindError);
  EXPECT_THROW(infer_type({}, parse("(redseq +r 8 (lam (i Real) i))")), TypeMismatch);
}

TEST(Typing, Shadowing) {
  TyCtx c;
  c.bind("x", real_ty()).bind("x", nat_ty());
  EXPECT_TRUE(ty_equal(*c.lookup("x"), nat_ty()));
  EXPECT_TRUE(ty_equal(infer_type({}, parse("(lam (x Real) (lam (x Nat) x))")), ty("(-> Real Nat Nat)")));
}

TEST(Kinding, Examples) {
  EXPECT_NO_THROW(kind_check({}, real_ty()));
  EXPECT_THROW(kind_check({}, tyvar("X")), UnboundTypeVariable);
  EXPECT_NO_THROW(kind_check({}, forall("X", arrow(tyvar("X"), tyvar("X")))));
  TyCtx c;
  c.bind_type("Y");
  EXPECT_NO_THROW(kind_check(c, tyvar("Y")));
}

TEST(Typing, Substitution) {
  EXPECT_TRUE(ty_equal(subst_ty(ty("(-> X (forall X X))"), "X", real_ty()), ty("(-> Real (forall X X))")));
  // capture-avoiding term substitution
  Expr e = subst(parse("(lam (y Real) (+r x y))"), "x", var("y"));
  EXPECT_EQ(free_vars(e), std::set<std::string>{"y"});
}

TEST(PrintParse, RoundTripCorpusShapes) {
  const char* srcs[] = {
      "(lam (x Real) (+r (*r x x) (*r 3.0 x)))",
      "(app (tyapp (tlam X (lam (x X) x)) Real) 0.1)",
      "(fix (lam (h (-> Nat Real)) (lam (n Nat) (if (eqn n 0) 0.0 (+r (app h (-n n 1)) 1/3)))))",
      "(redseq +r 7 (lam (i Nat) (nat2real i)))",
      "(+q #q1/3 (+q #qinf #q0))",
      "(bottom (forall X (-> X X)))",
      "(+f #f0.1 #f-inf)",
      "(leqf #fnan #f5e-324)",
  };
  for (const char* s : srcs) {
    Expr e = parse(s);
    EXPECT_TRUE(expr_equal(parse(print(e)), e)) << s << " printed " << print(e);
  }
}

TEST(PrintParse, RoundTripGenerated) {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    Ty t = rng.chance(1, 2) ? real_ty() : nat_ty();
    Expr e = gen(rng, t, {{"x", real_ty()}}, 4);
    e = lam("x", real_ty(), e);
    EXPECT_TRUE(expr_equal(parse(print(e)), e)) << print(e);
  }
}

TEST(Property, SubstitutionLemma) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Ty t1 = rng.chance(1, 2) ? real_ty() : nat_ty();
    Ty t2 = rng.chance(1, 2) ? real_ty() : nat_ty();
    Expr e = gen(rng, t2, {{"x", t1}}, 4);
    TyCtx c;
    c.bind("x", t1);
    Ty got = infer_type(c, e);
    ASSERT_TRUE(ty_equal(got, t2));
    Expr v = gen(rng, t1, {}, 3);
    ASSERT_TRUE(ty_equal(infer_type({}, v), t1));
    EXPECT_TRUE(ty_equal(infer_type({}, subst(e, "x", v)), t2)) << print(e);
  }
}

TEST(Property, InferDeterministic) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Expr e = gen(rng, real_ty(), {}, 5);
    EXPECT_TRUE(ty_equal(infer_type({}, e), infer_type({}, e)));
  }
}

TEST(Sites, PreOrderLabels) {
  Expr e = parse("(+r (redseq +r 2 (lam (i Nat) (redseq +r 3 (lam (j Nat) 1.0)))) (redseq +r 4 (lam (k Nat) 2.0)))");
  auto sites = redseq_sites(e);
  ASSERT_EQ(sites.size(), 3u);
  EXPECT_EQ(sites[0]->kids[1]->nat, 2u);
  EXPECT_EQ(sites[1]->kids[1]->nat, 3u);
  EXPECT_EQ(sites[2]->kids[1]->nat, 4u);
}
