#include "approx/numeric.hpp"

#include <algorithm>
#include <bit>
#include <cfloat>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace approx {

Rational pow2(long e) {
  Rational r(1);
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  r.canonicalize();
  return r;
}

const Rational& max_float() {
  static const Rational value = pow2(1024) - pow2(971);
  return value;
}

Rational exact_value(double d) {
  if (d == 0.0) return Rational(0);
  int exp = 0;
  double frac = std::frexp(d, &exp);
  auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  Integer m;
  mpz_set_si(m.get_mpz_t(), static_cast<long>(mant));
  return Rational(m) * pow2(static_cast<long>(exp) - 53);
}

long ilog2(const Rational& x) {
  Integer n = abs(x.get_num());
  const Integer& d = x.get_den();
  long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
  if (abs(x) < pow2(e)) --e;
  return e;
}

Integer floor_of(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& x) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Rational abs_of(const Rational& x) { return x < 0 ? Rational(-x) : x; }

namespace {

enum class Mode { Nearest, Down, Up };

// Rounds x > 0 to binary64 in the given mode.
double round_positive(const Rational& x, Mode mode) {
  long e = ilog2(x);
  if (e >= 1024) return mode == Mode::Down ? DBL_MAX : HUGE_VAL;
  long qexp = std::max(e, -1022L) - 52;
  Rational m = x / pow2(qexp);
  Integer n = floor_of(m);
  Rational rem = m - Rational(n);
  switch (mode) {
    case Mode::Nearest: {
      Rational half(1, 2);
      if (rem > half || (rem == half && mpz_odd_p(n.get_mpz_t()))) n += 1;
      break;
    }
    case Mode::Up:
      if (rem > 0) n += 1;
      break;
    case Mode::Down:
      break;
  }
  return std::ldexp(n.get_d(), static_cast<int>(qexp));
}

}  // namespace

double round_nearest(const Rational& x) {
  if (x == 0) return 0.0;
  if (x < 0) return -round_positive(-x, Mode::Nearest);
  return round_positive(x, Mode::Nearest);
}

double round_down(const Rational& x) {
  if (x == 0) return 0.0;
  if (x < 0) return -round_positive(-x, Mode::Up);
  return round_positive(x, Mode::Down);
}

double round_up(const Rational& x) {
  if (x == 0) return 0.0;
  if (x < 0) return -round_positive(-x, Mode::Down);
  return round_positive(x, Mode::Up);
}

Rational ulp_of(const Rational& x) {
  if (x == 0) return pow2(-1074);
  return pow2(std::max(ilog2(x), -1022L) - 52);
}

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  auto all_digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string_view body = text.substr(pos);
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    Integer n{std::string(num), 10}, d{std::string(den), 10};
    if (d == 0) return std::nullopt;
    result = Rational(n, d);
    result.canonicalize();
  } else {
    std::string_view mantissa = body;
    long exponent = 0;
    if (auto epos = body.find_first_of("eE"); epos != std::string_view::npos) {
      mantissa = body.substr(0, epos);
      std::string_view ex = body.substr(epos + 1);
      bool eneg = false;
      if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) {
        eneg = ex[0] == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex) || ex.size() > 6) return std::nullopt;
      exponent = std::stol(std::string(ex));
      if (eneg) exponent = -exponent;
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      std::string_view ip = mantissa.substr(0, dot);
      std::string_view fp = mantissa.substr(dot + 1);
      if (ip.empty() && fp.empty()) return std::nullopt;
      if (!ip.empty() && !all_digits(ip)) return std::nullopt;
      if (!fp.empty() && !all_digits(fp)) return std::nullopt;
      digits = std::string(ip) + std::string(fp);
      frac_len = static_cast<long>(fp.size());
    } else {
      if (!all_digits(mantissa)) return std::nullopt;
      digits = std::string(mantissa);
    }
    Integer n(digits, 10);
    long scale = exponent - frac_len;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    result = scale < 0 ? Rational(n, p) : Rational(n * p);
    result.canonicalize();
  }
  if (negative) result = -result;
  return result;
}

std::string format_rational(const Rational& x) {
  Integer den = x.get_den();
  long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return x.get_str();
  long k = std::max(twos, fives);
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
  Integer scaled = abs(x.get_num()) * p / x.get_den();
  std::string digits = scaled.get_str();
  std::string out;
  if (k == 0) {
    out = digits + ".0";
  } else {
    if (static_cast<long>(digits.size()) <= k) digits.insert(0, static_cast<std::size_t>(k + 1) - digits.size(), '0');
    out = digits.substr(0, digits.size() - static_cast<std::size_t>(k)) + "." +
          digits.substr(digits.size() - static_cast<std::size_t>(k));
  }
  return x < 0 ? "-" + out : out;
}

std::string format_double(double d) {
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view text) {
  if (text == "inf" || text == "+inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  if (text == "nan") return std::nan("");
  if (!text.empty() && text[0] == '+') text.remove_prefix(1);
  double d = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), d);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return d;
}

std::uint64_t bits_of(double d) { return std::bit_cast<std::uint64_t>(d); }

std::string bits_hex(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%016llX", static_cast<unsigned long long>(bits_of(d)));
  return buf;
}

std::string approx_decimal(const Rational& x, int digits) {
  mpf_class f(x, 512);
  mp_exp_t exp = 0;
  std::string s = f.get_str(exp, 10, static_cast<std::size_t>(digits));
  if (s.empty() || s == "0") return "0";
  bool neg = s[0] == '-';
  if (neg) s.erase(0, 1);
  std::string out = s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp) - 1);
  return neg ? "-" + out : out;
}

}  // namespace approx
