#include "approx/errops.hpp"

#include <algorithm>
#include <cmath>

namespace approx {

namespace {

struct Interval {
  Rational lo;
  Rational hi;
};

// nullopt: division by an interval containing zero
std::optional<Interval> interval_op(char op, const Interval& x, const Interval& y) {
  switch (op) {
    case '+': return Interval{x.lo + y.lo, x.hi + y.hi};
    case '-': return Interval{x.lo - y.hi, x.hi - y.lo};
    case '*': {
      Rational c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
      return Interval{*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
    }
    case '/': {
      if (y.lo <= 0 && y.hi >= 0) return std::nullopt;
      Rational c[4] = {x.lo / y.lo, x.lo / y.hi, x.hi / y.lo, x.hi / y.hi};
      return Interval{*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
    }
  }
  throw Error(std::string("float_op_err: unknown operator ") + op);
}

bool overflows(double d) { return std::isinf(d) || std::fabs(d) >= DBL_MAX; }

// Result interval of the float op, rounded outward; nullopt on overflow or
// division through zero.
std::optional<std::pair<Rational, Rational>> rounded_range(char op, const Interval& x, const Interval& y) {
  auto r = interval_op(op, x, y);
  if (!r) return std::nullopt;
  double lo = round_down(r->lo);
  double hi = round_up(r->hi);
  if (overflows(lo) || overflows(hi)) return std::nullopt;
  return std::make_pair(exact_value(lo), exact_value(hi));
}

Rational max0(const Rational& a, const Rational& b) { return std::max({Rational(0), a, b}); }

}  // namespace

ErrValue float_op_err(char op, const RealEnclosure& xe, const ErrValue& xq, const RealEnclosure& ye,
                      const ErrValue& yq) {
  if (xq.lo_inf || yq.lo_inf) return ErrValue::infinity();
  Interval z;
  {
    auto zi = interval_op(op, {xe.lo, xe.hi}, {ye.lo, ye.hi});
    if (!zi) return ErrValue::infinity();
    z = *zi;
  }
  ErrValue out;
  // upper bound from the widest possible input box
  if (xq.hi_inf || yq.hi_inf) {
    out.hi_inf = true;
  } else {
    auto r = rounded_range(op, {xe.lo - xq.hi, xe.hi + xq.hi}, {ye.lo - yq.hi, ye.hi + yq.hi});
    if (!r) {
      out.hi_inf = true;
    } else {
      out.hi = max0(z.hi - r->first, r->second - z.lo);
    }
  }
  // lower bound from the box every true input box contains
  Interval xi{xe.hi - xq.lo, xe.lo + xq.lo};
  Interval yi{ye.hi - yq.lo, ye.lo + yq.lo};
  if (xi.lo <= xi.hi && yi.lo <= yi.hi) {
    auto r = rounded_range(op, xi, yi);
    if (!r) {
      out.lo_inf = true;
      out.hi_inf = true;
    } else {
      out.lo = max0(r->second - z.hi, z.lo - r->first);
    }
  }
  if (!out.hi_inf && !out.lo_inf && out.lo > out.hi) out.lo = out.hi;
  return out;
}

ErrValue sin_err(const RealEnclosure& xe, const ErrValue& xq) {
  auto bound = [](const Rational& mag, bool q_inf, const Rational& q) -> Rational {
    Rational m = q_inf ? Rational(1) : std::min(Rational(1), Rational(mag + q));
    Rational qq = q_inf ? Rational(2) : std::min(q, Rational(2));
    return qq + ulp_of(m);
  };
  Rational mag_lo = (xe.lo <= 0 && xe.hi >= 0) ? Rational(0) : std::min(abs_of(xe.lo), abs_of(xe.hi));
  Rational mag_hi = std::max(abs_of(xe.lo), abs_of(xe.hi));
  ErrValue out;
  out.lo = bound(mag_lo, xq.lo_inf, xq.lo);
  out.hi = bound(mag_hi, xq.hi_inf, xq.hi);
  return out;
}

ErrValue leq_err(const RealEnclosure& xe, const ErrValue& xq, const RealEnclosure& ye, const ErrValue& yq) {
  if (xq.is_zero() && yq.is_zero()) return ErrValue::zero();
  ErrValue sum = err_add(xq, yq);
  RealEnclosure d = enclose_op("dr", {xe, ye}, std::max(xe.precision_bits, ye.precision_bits));
  // 0 when |xe - ye| > xq + yq
  bool surely_apart = !sum.hi_inf && sum.hi < d.lo;
  if (surely_apart) return ErrValue::zero();
  bool surely_close = sum.lo_inf || (!sum.lo_inf && d.hi <= sum.lo);
  bool surely_nonzero_err = xq.lo_inf || yq.lo_inf || xq.lo > 0 || yq.lo > 0;
  if (surely_close && surely_nonzero_err) return ErrValue::infinity();
  ErrValue out;
  out.lo = 0;
  out.hi_inf = true;
  return out;
}

ErrValue rnd_err(const RealEnclosure& center, const ErrValue& radius) {
  if (radius.lo_inf) return ErrValue::infinity();
  Rational mag_lo = (center.lo <= 0 && center.hi >= 0) ? Rational(0) : std::min(abs_of(center.lo), abs_of(center.hi));
  Rational mag_hi = std::max(abs_of(center.lo), abs_of(center.hi));
  ErrValue out;
  if (radius.hi_inf) {
    out.hi_inf = true;
  } else {
    Rational m = mag_hi + radius.hi;
    if (m >= max_float()) {
      out.hi_inf = true;
    } else if (center.is_point() && radius.hi == 0 && exact_value(round_nearest(center.lo)) == center.lo) {
      out.hi = 0;
    } else {
      out.hi = ulp_of(m) / 2;
    }
  }
  Rational m_lo = mag_lo + radius.lo;
  if (m_lo >= max_float()) {
    out.lo_inf = out.hi_inf = true;
  } else if (radius.lo > 0 || (center.is_point() && exact_value(round_nearest(center.lo)) != center.lo)) {
    out.lo = ulp_of(m_lo) / 2;
  }
  if (!out.hi_inf && out.lo > out.hi) out.lo = out.hi;
  return out;
}

namespace {
Integer big(std::uint64_t n) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof n, 0, 0, &n);
  return z;
}
}  // namespace

ErrValue n2r_err(std::uint64_t ne, std::uint64_t nq) {
  Rational top = Rational(big(ne) + big(nq));
  Rational q(big(nq));
  if (top > pow2(53)) q += ulp_of(top) / 2;
  return ErrValue::exact(q);
}

ErrValue nat_cmp_err(std::uint64_t xe, std::uint64_t xq, std::uint64_t ye, std::uint64_t yq) {
  if (xq == 0 && yq == 0) return ErrValue::zero();
  Integer d = big(xe) - big(ye);
  Integer s = big(xq) + big(yq);
  if (abs(d) > s) return ErrValue::zero();
  return ErrValue::infinity();
}

}  // namespace approx
