#include "approx/enclosure.hpp"
#include "approx/numeric.hpp"
#include "approx/rng.hpp"
#include "approx/softsin.hpp"

#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>

using namespace approx;

namespace {

RealEnclosure pt(const Rational& r, int bits = 128) { return RealEnclosure::point(r, bits); }

// Reference value from MPFR at `bits`, as an exact rational, with the
// rounding slack 2^-(bits-8) returned alongside.
std::pair<Rational, Rational> mpfr_sin_ref(const Rational& x, int bits = 400) {
  mpfr_t a;
  mpfr_init2(a, bits);
  mpfr_set_q(a, x.get_mpq_t(), MPFR_RNDN);
  mpfr_sin(a, a, MPFR_RNDN);
  Rational r;
  mpfr_get_q(r.get_mpq_t(), a);
  mpfr_clear(a);
  return {r, pow2(-(bits - 8))};
}

bool contains_ref(const RealEnclosure& e, const std::pair<Rational, Rational>& ref) {
  return e.lo - ref.second <= ref.first && ref.first <= e.hi + ref.second;
}

Rational random_rational(Rng& rng) {
  switch (rng.below(3)) {
    case 0: return Rational(rng.range(-1000, 1000), rng.range(1, 1000));
    case 1: return Rational(rng.range(-1 << 20, 1 << 20), 1 << 20);
    default: return Rational(rng.range(-30, 30));
  }
}

}  // namespace

TEST(Enclose, AddIntegers) {
  RealEnclosure r = enclose_op("+r", {pt(1, 53), pt(2, 53)}, 53);
  EXPECT_EQ(r.lo, 3);
  EXPECT_EQ(r.hi, 3);
}

TEST(Enclose, SinZero) {
  RealEnclosure r = enclose_op("sinr", {pt(0)}, 128);
  EXPECT_EQ(r.lo, 0);
  EXPECT_EQ(r.hi, 0);
}

TEST(Enclose, SinTenth80Bits) {
  RealEnclosure r = enclose_op("sinr", {pt(Rational(1, 10), 80)}, 80);
  EXPECT_LE(r.width(), pow2(-80));
  EXPECT_TRUE(contains_ref(r, mpfr_sin_ref(Rational(1, 10))));
  // 0.0998334166468...
  EXPECT_GT(r.lo, *parse_rational("0.0998334166468"));
  EXPECT_LT(r.hi, *parse_rational("0.0998334166469"));
}

TEST(Compare, Examples) {
  EXPECT_EQ(compare_leq(pt(1), pt(2)), Tri::Yes);
  EXPECT_EQ(compare_leq(pt(2), pt(1)), Tri::No);
  RealEnclosure a{0, Rational(1, 2), 128}, b{Rational(1, 4), Rational(3, 4), 128};
  EXPECT_EQ(compare_leq(a, b), Tri::Unknown);
  EXPECT_EQ(compare_leq(pt(1), pt(1)), Tri::Yes);
}

TEST(Enclose, Errors) {
  RealEnclosure z{-1, 1, 128};
  EXPECT_THROW(enclose_op("/r", {pt(1), z}, 128), DivisorStraddlesZero);
  EXPECT_THROW(enclose_op("+r", {pt(1), pt(2)}, kPrecisionCap + 1), PrecisionOverflow);
}

TEST(Enclose, RationalBruteForceGrid) {
  std::vector<Rational> grid;
  for (int n = -6; n <= 6; ++n)
    for (int d : {1, 2, 3, 7}) grid.emplace_back(n, d);
  for (const auto& x : grid)
    for (const auto& y : grid) {
      Rational x1 = x, y1 = y;
      x1.canonicalize();
      y1.canonicalize();
      EXPECT_TRUE(enclose_op("+r", {pt(x1, 64), pt(y1, 64)}, 64).contains(Rational(x1 + y1)));
      EXPECT_TRUE(enclose_op("-r", {pt(x1, 64), pt(y1, 64)}, 64).contains(Rational(x1 - y1)));
      EXPECT_TRUE(enclose_op("*r", {pt(x1, 64), pt(y1, 64)}, 64).contains(Rational(x1 * y1)));
      EXPECT_TRUE(enclose_op("dr", {pt(x1, 64), pt(y1, 64)}, 64).contains(abs_of(x1 - y1)));
      if (y1 != 0) {
        EXPECT_TRUE(enclose_op("/r", {pt(x1, 64), pt(y1, 64)}, 64).contains(Rational(x1 / y1)));
      }
    }
}

TEST(Enclose, WideOperandsContainAllPoints) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    Rational a = random_rational(rng), b = random_rational(rng);
    Rational wa(rng.range(0, 100), 1000), wb(rng.range(0, 100), 1000);
    RealEnclosure A{a - wa, a + wa, 64}, B{b - wb, b + wb, 64};
    for (const char* op : {"+r", "-r", "*r"}) {
      RealEnclosure r = enclose_op(op, {A, B}, 64);
      for (const Rational& x : {A.lo, A.hi, a})
        for (const Rational& y : {B.lo, B.hi, b}) {
          Rational v = op[0] == '+' ? Rational(x + y) : op[0] == '-' ? Rational(x - y) : Rational(x * y);
          EXPECT_TRUE(r.contains(v)) << op;
        }
    }
  }
}

TEST(Property, NestingUnderRefinement) {
  Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    Rational a = random_rational(rng), b = random_rational(rng);
    if (b == 0) b = 1;
    for (const char* op : {"+r", "*r", "/r", "sinr", "absr"}) {
      bool unary = std::string(op) == "sinr" || std::string(op) == "absr";
      for (int p : {32, 64, 128}) {
        std::vector<RealEnclosure> lo_args{pt(a, p)}, hi_args{pt(a, p + 64)};
        if (!unary) {
          lo_args.push_back(pt(b, p));
          hi_args.push_back(pt(b, p + 64));
        }
        RealEnclosure coarse = enclose_op(op, lo_args, p);
        RealEnclosure fine = enclose_op(op, hi_args, p + 64);
        EXPECT_TRUE(coarse.contains(fine)) << op << " " << a << " " << b << " at " << p;
        EXPECT_LE(fine.width(), coarse.width());
      }
    }
  }
}

TEST(Property, SinMatchesMpfrOnSamples) {
  Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    Rational x = random_rational(rng);
    RealEnclosure r = enclose_sin(pt(x, 200), 200);
    EXPECT_LE(r.width(), pow2(-190));
    EXPECT_TRUE(contains_ref(r, mpfr_sin_ref(x))) << x;
  }
}

TEST(Enclose, PiContainsMpfrPi) {
  mpfr_t a;
  mpfr_init2(a, 600);
  mpfr_const_pi(a, MPFR_RNDN);
  Rational ref;
  mpfr_get_q(ref.get_mpq_t(), a);
  mpfr_clear(a);
  RealEnclosure p = pi_enclosure(300);
  EXPECT_LE(p.width(), pow2(-300));
  EXPECT_LE(p.lo - pow2(-590), ref);
  EXPECT_LE(ref, p.hi + pow2(-590));
}

TEST(Numeric, Conversions) {
  EXPECT_EQ(exact_value(0.5), Rational(1, 2));
  EXPECT_EQ(round_nearest(Rational(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(bits_hex(round_nearest(Rational(1, 3))), "0x3FD5555555555555");
  EXPECT_LE(exact_value(round_down(Rational(1, 10))), Rational(1, 10));
  EXPECT_GE(exact_value(round_up(Rational(1, 10))), Rational(1, 10));
  EXPECT_EQ(max_float(), pow2(1024) - pow2(971));
  EXPECT_TRUE(std::isinf(round_nearest(max_float() + pow2(970))));
  EXPECT_EQ(round_down(max_float() * 2), std::numeric_limits<double>::max());
  EXPECT_EQ(ulp_of(1), pow2(-52));
  EXPECT_EQ(ulp_of(0), pow2(-1074));
  EXPECT_EQ(format_rational(Rational(1, 2)), "0.5");
  EXPECT_EQ(format_rational(Rational(1, 3)), "1/3");
  EXPECT_EQ(*parse_rational("1.5e-3"), Rational(3, 2000));
  EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Numeric, RoundNearestMatchesHardware) {
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    double a = static_cast<double>(static_cast<std::int64_t>(rng.next())) / 1e9;
    double b = static_cast<double>(rng.range(1, 1000000)) / 7.0;
    EXPECT_EQ(round_nearest(exact_value(a) + exact_value(b)), a + b);
    EXPECT_EQ(round_nearest(exact_value(a) * exact_value(b)), a * b);
    EXPECT_EQ(round_nearest(exact_value(a) / exact_value(b)), a / b);
  }
}

TEST(SoftSin, WithinOneUlpOfMpfr) {
  Rng rng(123);
  for (int i = 0; i < 5000; ++i) {
    double x = static_cast<double>(static_cast<std::int64_t>(rng.next() >> 11)) * std::ldexp(1.0, -50) *
               (rng.chance(1, 2) ? 1 : -1);
    if (rng.chance(1, 4)) x = std::ldexp(x, -static_cast<int>(rng.below(40)));
    double s = soft_sin(x);
    auto ref = mpfr_sin_ref(exact_value(x), 300);
    Rational err = abs_of(exact_value(s) - ref.first);
    EXPECT_LE(err, ulp_of(ref.first) + ref.second) << x;
  }
  EXPECT_EQ(soft_sin(0.0), 0.0);
  EXPECT_TRUE(std::signbit(soft_sin(-0.0)));
  EXPECT_TRUE(std::isnan(soft_sin(INFINITY)));
}
