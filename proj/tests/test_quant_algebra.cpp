#include "approx/quant.hpp"
#include "approx/typing.hpp"

#include <gtest/gtest.h>

using namespace approx;

namespace {

Expr q(const char* s) { return parse(s); }

const AxiomResult& find(const AxiomReport& r, const std::string& name) {
  for (const auto& a : r.results)
    if (a.axiom == name) return a;
  throw std::runtime_error("no axiom " + name);
}

ErrValue ev(const Expr& e) { return eval_error(e, {}, {}); }

}  // namespace

TEST(QLeq, Scalar) {
  auto R = q_reals();
  EXPECT_EQ(q_leq(R, q("#q0"), q("#q1/3"), 10, 42).status, QStatus::Yes);
  EXPECT_EQ(q_leq(R, q("#qinf"), q("#q5"), 10, 42).status, QStatus::No);
  EXPECT_EQ(q_leq(R, q("#q5"), q("#qinf"), 10, 42).status, QStatus::Yes);
  EXPECT_EQ(q_leq(R, q("#q1/3"), q("#q1/3"), 10, 42).status, QStatus::Yes);
}

TEST(QLeq, LiftedIsOnlyOnSamples) {
  auto L = q_lifted({err_ty()});
  EXPECT_EQ(q_leq(L, q("(lam (x ErrReal) x)"), q("(lam (x ErrReal) (+q x #q1))"), 200, 42).status,
            QStatus::YesOnSamples);
  QVerdict no = q_leq(L, q("(lam (x ErrReal) (+q x #q1))"), q("(lam (x ErrReal) x)"), 200, 42);
  EXPECT_EQ(no.status, QStatus::No);
  EXPECT_FALSE(no.witness.empty());
}

TEST(QPlus, Scalar) {
  auto R = q_reals();
  ErrValue s = ev(q_plus(R, q("#q1/4"), q("#q1/4")));
  EXPECT_EQ(s.lo, Rational(1, 2));
  EXPECT_TRUE(s.is_point());
  EXPECT_EQ(q_leq(R, q_plus(R, q("#q3/7"), R.zero), q("#q3/7"), 1, 42).status, QStatus::Yes);
  EXPECT_EQ(q_leq(R, q("#q3/7"), q_plus(R, q("#q3/7"), R.zero), 1, 42).status, QStatus::Yes);
  EXPECT_TRUE(ev(q_plus(R, q("#qinf"), R.zero)).is_infinite());
}

TEST(QPlus, LiftedIsPointwise) {
  auto L = q_lifted({real_ty(), err_ty()});
  Expr a = q("(lam (x Real) (lam (xq ErrReal) (+q xq #q1)))");
  Expr b = q("(lam (x Real) (lam (xq ErrReal) (absr x)))");
  Expr s = q_plus(L, a, b);
  EXPECT_TRUE(ty_equal(infer_type({}, s), L.carrier()));
  ErrValue v = ev(app(app(s, real_lit(-2)), err_lit(Rational(1, 2))));
  EXPECT_EQ(v.lo, Rational(7, 2));
}

TEST(Axioms, RealsAllPassExactly) {
  for (std::uint64_t seed : {1ULL, 42ULL, 999ULL}) {
    AxiomReport r = check_quant_axioms(q_reals(), 200, seed);
    ASSERT_EQ(r.results.size(), 6u);
    for (const auto& a : r.results) EXPECT_EQ(a.status, "pass") << a.axiom << " " << a.witness;
    EXPECT_TRUE(r.ok());
  }
}

TEST(Axioms, BrokenZeroFailsLeastness) {
  auto R = q_reals();
  R.name = "broken";
  R.zero = err_lit(1);
  AxiomReport r = check_quant_axioms(R, 50, 42);
  const auto& least = find(r, "Leastness of 0");
  EXPECT_EQ(least.status, "fail");
  EXPECT_NE(least.witness.find("#q0"), std::string::npos) << least.witness;
  EXPECT_FALSE(r.ok());
}

TEST(Axioms, LiftedInstancesPassOnSamples) {
  for (auto inst : {q_lifted({real_ty()}), q_lifted({real_ty(), err_ty()}), q_lifted({nat_ty()})}) {
    AxiomReport r = check_quant_axioms(inst, 300, 42);
    ASSERT_EQ(r.results.size(), 6u);
    for (const auto& a : r.results) EXPECT_EQ(a.status, "pass-on-samples") << inst.name << " " << a.axiom;
  }
}

TEST(Axioms, ReportJsonIsDeterministic) {
  auto a = check_quant_axioms(q_lifted({real_ty()}), 100, 7).to_json().dump();
  auto b = check_quant_axioms(q_lifted({real_ty()}), 100, 7).to_json().dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"schema\""), std::string::npos);
}

TEST(Property, PlusMonotone) {
  auto R = q_reals();
  Rng rng(77);
  for (int i = 0; i < 500; ++i) {
    Expr a = sample_err_literal(rng), b = sample_err_literal(rng);
    Expr a2 = builtin("+q", {a, sample_err_literal(rng)});
    Expr b2 = builtin("+q", {b, sample_err_literal(rng)});
    EXPECT_EQ(q_leq(R, q_plus(R, a, b), q_plus(R, a2, b2), 1, 1).status, QStatus::Yes);
  }
}

TEST(Property, InfinityIsTop) {
  auto R = q_reals();
  Rng rng(5);
  for (int i = 0; i < 500; ++i) EXPECT_EQ(q_leq(R, sample_err_literal(rng), err_inf(), 1, 1).status, QStatus::Yes);
  auto L = q_lifted({real_ty()});
  for (int i = 0; i < 50; ++i) {
    Expr f = L.sample(rng);
    EXPECT_NE(q_leq(L, f, q("(lam (x Real) #qinf)"), 50, 3).status, QStatus::No);
  }
}
