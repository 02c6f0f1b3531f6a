#include "approx/evaluator.hpp"
#include "approx/numeric.hpp"
#include "approx/rng.hpp"
#include "approx/softsin.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

using namespace approx;

namespace {

EvalConfig cfg(int bits = 128, std::uint64_t fuel = 1'000'000) {
  EvalConfig c;
  c.precision_bits = bits;
  c.fuel = fuel;
  return c;
}

ValuePtr exact(const char* src, EvalConfig c = cfg()) {
  auto v = eval_exact(parse(src), {}, c);
  if (!v) throw std::runtime_error("diverged");
  return *v;
}

double approx_of(const std::string& src) {
  auto v = eval_approx(parse(src), {}, cfg());
  if (!v) throw std::runtime_error("diverged");
  return (*v)->flt();
}

std::string flit(double d) { return "#f" + format_double(d); }

}  // namespace

TEST(Exact, IdentityOnThird) {
  auto v = exact("(app (lam (x Real) x) 1/3)");
  ASSERT_TRUE(v->is_real());
  EXPECT_TRUE(v->real().contains(Rational(1, 3)));
  EXPECT_LE(v->real().width(), pow2(-128));
}

TEST(Exact, RedSeqCountIsExclusive) {
  auto v = exact("(redseq +r 4 (lam (i Nat) (nat2real i)))");
  EXPECT_TRUE(v->real().contains(Rational(6)));
  EXPECT_LT(v->real().width(), Rational(1, 1000));
  // no unit for an arbitrary combiner
  EXPECT_FALSE(eval_exact(parse("(redseq +n 0 (lam (i Nat) i))"), {}, cfg()).has_value());
  EXPECT_EQ(exact("(redseq +n 5 (lam (i Nat) (*n i i)))")->nat(), 30u);
}

TEST(Exact, Divergence) {
  EXPECT_FALSE(eval_exact(parse("(app (fix (lam (f (-> Nat Nat)) f)) 3)"), {}, cfg()).has_value());
  EXPECT_FALSE(eval_exact(parse("(bottom Real)"), {}, cfg()).has_value());
  EXPECT_FALSE(eval_exact(parse("(app (lam (x Real) 1.0) (bottom Real))"), {}, cfg()).has_value());
  // recursion that does terminate
  auto v = exact("(app (fix (lam (f (-> Nat Nat)) (lam (n Nat) (if (eqn n 0) 0 (+n 2 (app f (-n n 1))))))) 10)");
  EXPECT_EQ(v->nat(), 20u);
}

TEST(Exact, NatOps) {
  EXPECT_EQ(exact("(-n 3 5)")->nat(), 0u);
  EXPECT_EQ(exact("(dn 3 5)")->nat(), 2u);
  EXPECT_EQ(exact("(floorK 4 11)")->nat(), 8u);
  EXPECT_EQ(exact("(ceilK 4 11)")->nat(), 12u);
  EXPECT_EQ(exact("(ceildivn 11 4)")->nat(), 3u);
  EXPECT_TRUE(exact("(leqn 3 3)")->boolean());
  EXPECT_FALSE(exact("(eqn 3 4)")->boolean());
}

TEST(Exact, Comparison) {
  EXPECT_TRUE(exact("(leqr 1/3 0.34)")->boolean());
  EXPECT_FALSE(exact("(leqr (sinr 1.0) 0.8)")->boolean());
  EXPECT_TRUE(exact("(leqr 1/3 1/3)")->boolean());
}

TEST(Approx, IeeeAddition) {
  double r = approx_of("(+f #f0.1 #f0.2)");
  EXPECT_EQ(bits_hex(r), "0x3FD3333333333334");
  EXPECT_EQ(r, 0.1 + 0.2);
}

TEST(Approx, MultiplicativeIdentity) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t bits = rng.next();
    double x;
    std::memcpy(&x, &bits, sizeof x);
    if (!std::isfinite(x)) continue;
    EXPECT_EQ(bits_of(approx_of("(*f #f1.0 " + flit(x) + ")")), bits_of(x));
  }
}

TEST(Approx, Overflow) {
  std::string m = flit(std::numeric_limits<double>::max());
  EXPECT_TRUE(std::isinf(approx_of("(+f " + m + " " + m + ")")));
  EXPECT_TRUE(std::isnan(approx_of("(-f #finf #finf)")));
}

TEST(Approx, MatchesHardwareBitForBit) {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    double a = std::ldexp(static_cast<double>(rng.next() >> 11), static_cast<int>(rng.range(-80, 10)));
    double b = std::ldexp(static_cast<double>(rng.next() >> 11), static_cast<int>(rng.range(-80, 10)));
    if (rng.chance(1, 2)) b = -b;
    EXPECT_EQ(bits_of(approx_of("(+f " + flit(a) + " " + flit(b) + ")")), bits_of(a + b));
    EXPECT_EQ(bits_of(approx_of("(-f " + flit(a) + " " + flit(b) + ")")), bits_of(a - b));
    EXPECT_EQ(bits_of(approx_of("(*f " + flit(a) + " " + flit(b) + ")")), bits_of(a * b));
    EXPECT_EQ(bits_of(approx_of("(/f " + flit(a) + " " + flit(b) + ")")), bits_of(a / b));
    EXPECT_EQ(bits_of(approx_of("(sinf " + flit(a) + ")")), bits_of(soft_sin(a)));
  }
}

TEST(Approx, RejectsRealOps) {
  EXPECT_THROW(eval_approx(parse("(+r 1.0 2.0)"), {}, cfg()), EvalError);
}

TEST(Approx, PerforatedShape) {
  auto v = eval_approx(parse("(redseq (lam (i Float64) (lam (a Float64) (+f i (+f i a)))) (ceildivn 8 2) "
                             "(lam (i Nat) (nat2float (*n i 2))))"),
                       {}, cfg());
  EXPECT_EQ((*v)->flt(), 24.0);
}

TEST(Error, Monoid) {
  ErrValue q = eval_error(parse("(+q #q0 #q1/4)"), {}, cfg());
  EXPECT_TRUE(q.is_point());
  EXPECT_EQ(q.lo, Rational(1, 4));
  EXPECT_TRUE(eval_error(parse("(+q #qinf #q5)"), {}, cfg()).is_infinite());
  EXPECT_TRUE(eval_error(parse("(+q #q0 #qinf)"), {}, cfg()).is_infinite());
}

TEST(Error, Projection) {
  ErrValue q = eval_error(parse("(app (app (lam (x Real) (lam (q ErrReal) q)) 5.0) #q1/2)"), {}, cfg());
  EXPECT_EQ(q.lo, Rational(1, 2));
  EXPECT_EQ(q.str(), "0.5");
}

TEST(Error, DivergenceIsInfinity) {
  EXPECT_TRUE(eval_error(parse("(bottom ErrReal)"), {}, cfg()).is_infinite());
  EXPECT_TRUE(eval_error(parse("(app (fix (lam (f (-> Nat ErrReal)) f)) 0)"), {}, cfg()).is_infinite());
}

TEST(Property, ApproxDeterministic) {
  const char* src = "(redseq +f 50 (lam (i Nat) (sinf (/f (nat2float i) #f7.0))))";
  double a = approx_of(src), b = approx_of(src);
  EXPECT_EQ(bits_of(a), bits_of(b));
}

TEST(Property, RefinementNests) {
  const char* srcs[] = {"(sinr (/r 1.0 3.0))", "(redseq +r 10 (lam (i Nat) (/r 1.0 (+r 1.0 (nat2real i)))))",
                        "(*r (sinr 2.0) (-r 1/7 (sinr 1/7)))"};
  for (const char* s : srcs) {
    RealEnclosure prev = exact(s, cfg(32))->real();
    for (int p : {64, 128, 256, 512}) {
      RealEnclosure cur = exact(s, cfg(p))->real();
      EXPECT_TRUE(prev.contains(cur)) << s << " at " << p;
      prev = cur;
    }
  }
}

TEST(Property, FuelMonotone) {
  const char* src = "(app (fix (lam (f (-> Nat Real)) (lam (n Nat) (if (eqn n 0) 0.0 (+r 1/3 (app f (-n n 1))))))) 30)";
  std::uint64_t fuel = 1;
  std::optional<ValuePtr> first;
  while (!first) {
    fuel *= 2;
    first = eval_exact(parse(src), {}, cfg(128, fuel));
  }
  for (std::uint64_t f : {fuel, fuel + 1, fuel * 3, fuel * 100}) {
    auto v = eval_exact(parse(src), {}, cfg(128, f));
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ((*v)->real().lo, (*first)->real().lo);
    EXPECT_EQ((*v)->real().hi, (*first)->real().hi);
  }
  EXPECT_FALSE(eval_exact(parse(src), {}, cfg(128, 5)).has_value());
}
