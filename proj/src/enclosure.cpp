#include "approx/enclosure.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace approx {

namespace {

void check_precision(int p) {
  if (p < 1 || p > kPrecisionCap) throw PrecisionOverflow(p);
}

std::size_t size_bits(const Rational& r) {
  return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}

Rational grid_down(const Rational& r, long g) {
  return Rational(floor_of(r * pow2(g))) / pow2(g);
}

Rational grid_up(const Rational& r, long g) {
  return Rational(ceil_of(r * pow2(g))) / pow2(g);
}

// Keeps small endpoints exact; big ones are rounded outward.
RealEnclosure normalize(Rational lo, Rational hi, int p) {
  std::size_t budget = 4 * static_cast<std::size_t>(p) + 64;
  long g = p + 2;
  if (size_bits(lo) > budget) lo = grid_down(lo, g);
  if (size_bits(hi) > budget) hi = grid_up(hi, g);
  RealEnclosure r;
  r.lo = std::move(lo);
  r.hi = std::move(hi);
  r.precision_bits = p;
  return r;
}

// Fixed point value with error: the real lies in [(v - e) 2^-w, (v + e) 2^-w].
struct Fixed {
  Integer v;
  Integer e;
};

// atan(1/n) at w fractional bits.
Fixed atan_inv(unsigned long n, long w) {
  Integer one = 1;
  one <<= static_cast<mp_bitcnt_t>(w);
  Integer term = one / n;
  Integer n2 = n * n;
  Integer sum = 0;
  Integer err = 1;
  for (unsigned long k = 0; term != 0; ++k) {
    Integer t = term / (2 * k + 1);
    if (k % 2 == 0) sum += t; else sum -= t;
    term /= n2;
    err += 2;
  }
  return {sum, err};
}

RealEnclosure compute_pi(int bits) {
  long w = bits + 16;
  Fixed a = atan_inv(5, w);
  Fixed b = atan_inv(239, w);
  Integer v = 16 * a.v - 4 * b.v;
  Integer e = 16 * a.e + 4 * b.e;
  RealEnclosure r;
  r.lo = Rational(v - e) / pow2(w);
  r.hi = Rational(v + e) / pow2(w);
  r.precision_bits = bits;
  return r;
}

// sin(x) for |x| <= 4, x given in fixed point X 2^-w exactly.
Fixed sin_fixed(const Integer& X, long w) {
  mp_bitcnt_t sw = static_cast<mp_bitcnt_t>(w);
  Integer X2 = X * X;
  X2 >>= sw;  // truncation: x^2 - X2 2^-w in [0, 2^-w)
  Integer X2p = X2 + 1;
  Integer T = abs(X);
  Integer E = 0;
  Integer sum = T;
  Integer total_err = 0;
  bool negative_sign = false;
  Integer one = 1;
  one <<= sw;
  for (unsigned long k = 1;; ++k) {
    unsigned long m = 2 * k * (2 * k + 1);
    Integer prodT = T * X2;
    prodT >>= sw;
    Integer Tn = prodT / m;
    Integer bound = E * X2p + T;
    bound >>= sw;
    bound += 1;
    Integer En = (bound + (m - 1)) / m + 2;
    T = Tn;
    E = En;
    negative_sign = !negative_sign;
    if (negative_sign) sum -= T; else sum += T;
    total_err += E;
    unsigned long mnext = (2 * k + 2) * (2 * k + 3);
    if (T == 0 && Integer(mnext) * one >= 2 * X2p) {
      total_err += 2 * E;
      break;
    }
  }
  if (X < 0) sum = -sum;
  return {sum, total_err + 1};
}

Fixed sin_of_rational(const Rational& x, long w) {
  Integer X = floor_of(x * pow2(w));
  Fixed f = sin_fixed(X, w);
  f.e += 1;  // floor of the input, sin is 1-Lipschitz
  return f;
}

}  // namespace

RealEnclosure RealEnclosure::point(const Rational& r, int precision_bits) {
  RealEnclosure e;
  e.lo = r;
  e.hi = r;
  e.precision_bits = precision_bits;
  return e;
}

std::string RealEnclosure::str() const {
  if (is_point()) return "[" + format_rational(lo) + "]";
  return "[" + approx_decimal(lo) + ", " + approx_decimal(hi) + "]";
}

RealEnclosure pi_enclosure(int bits) {
  static std::mutex mu;
  static std::map<int, RealEnclosure> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(bits);
  if (it != cache.end()) return it->second;
  RealEnclosure r = compute_pi(bits);
  cache.emplace(bits, r);
  return r;
}

RealEnclosure enclose_sin(const RealEnclosure& x, int p) {
  check_precision(p);
  if (x.is_point() && x.lo == 0) return RealEnclosure::point(0, p);
  long w = p + 40;
  Rational c = x.is_point() ? x.lo : grid_down(x.mid(), w);
  Rational radius = std::max(Rational(c - x.lo), Rational(x.hi - c));
  Rational lo, hi;
  if (abs_of(c) <= 4) {
    Fixed f = sin_of_rational(c, w);
    lo = Rational(f.v - f.e) / pow2(w);
    hi = Rational(f.v + f.e) / pow2(w);
  } else {
    RealEnclosure pi0 = pi_enclosure(64);
    Integer k = floor_of(c / (2 * pi0.mid()) + Rational(1, 2));
    long kbits = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2));
    RealEnclosure pi = pi_enclosure(static_cast<int>(w + kbits + 4));
    Rational two_k(2 * k);
    Rational ylo = c - two_k * (k > 0 ? pi.hi : pi.lo);
    Rational yhi = c - two_k * (k > 0 ? pi.lo : pi.hi);
    Rational ymid = grid_down((ylo + yhi) / 2, w);
    Rational yrad = std::max(Rational(ymid - ylo), Rational(yhi - ymid));
    Fixed f = sin_of_rational(ymid, w);
    lo = Rational(f.v - f.e) / pow2(w) - yrad;
    hi = Rational(f.v + f.e) / pow2(w) + yrad;
  }
  lo -= radius;
  hi += radius;
  lo = std::max(lo, Rational(-1));
  hi = std::min(hi, Rational(1));
  RealEnclosure r;
  r.lo = grid_down(lo, p + 2);
  r.hi = grid_up(hi, p + 2);
  r.precision_bits = p;
  return r;
}

RealEnclosure enclose_op(std::string_view op, const std::vector<RealEnclosure>& args, int p) {
  check_precision(p);
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw Error("enclose_op " + std::string(op) + ": wrong number of arguments");
  };
  if (op == "+r") {
    need(2);
    return normalize(args[0].lo + args[1].lo, args[0].hi + args[1].hi, p);
  }
  if (op == "-r") {
    need(2);
    return normalize(args[0].lo - args[1].hi, args[0].hi - args[1].lo, p);
  }
  if (op == "*r") {
    need(2);
    const auto& a = args[0];
    const auto& b = args[1];
    if (a.is_point() && b.is_point()) return normalize(a.lo * b.lo, a.lo * b.lo, p);
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return normalize(*std::min_element(c, c + 4), *std::max_element(c, c + 4), p);
  }
  if (op == "/r") {
    need(2);
    const auto& a = args[0];
    const auto& b = args[1];
    if (b.lo <= 0 && b.hi >= 0) throw DivisorStraddlesZero();
    if (a.is_point() && b.is_point()) return normalize(a.lo / b.lo, a.lo / b.lo, p);
    Rational c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    return normalize(*std::min_element(c, c + 4), *std::max_element(c, c + 4), p);
  }
  if (op == "absr") {
    need(1);
    const auto& a = args[0];
    if (a.lo >= 0) return normalize(a.lo, a.hi, p);
    if (a.hi <= 0) return normalize(-a.hi, -a.lo, p);
    return normalize(0, std::max(Rational(-a.lo), a.hi), p);
  }
  if (op == "dr") {
    need(2);
    return enclose_op("absr", {enclose_op("-r", args, p)}, p);
  }
  if (op == "sinr") {
    need(1);
    return enclose_sin(args[0], p);
  }
  throw Error("enclose_op: unsupported operation " + std::string(op));
}

Tri compare_leq(const RealEnclosure& a, const RealEnclosure& b) {
  if (a.hi <= b.lo) return Tri::Yes;
  if (b.hi < a.lo) return Tri::No;
  return Tri::Unknown;
}

}  // namespace approx
