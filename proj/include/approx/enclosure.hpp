#pragma once

#include "approx/numeric.hpp"
#include "approx/syntax.hpp"

#include <string_view>
#include <vector>

namespace approx {

inline constexpr int kPrecisionCap = 4096;

class DivisorStraddlesZero : public Error {
 public:
  DivisorStraddlesZero() : Error("divisor enclosure contains zero") {}
};

class PrecisionOverflow : public Error {
 public:
  explicit PrecisionOverflow(int bits)
      : Error("precision " + std::to_string(bits) + " exceeds cap " + std::to_string(kPrecisionCap)) {}
};

/// Closed interval [lo, hi] containing an exact real. Endpoints stay exact
/// rationals while they are small and are rounded outward to the dyadic grid
/// 2^-(precision_bits+2) once they grow.
struct RealEnclosure {
  Rational lo;
  Rational hi;
  int precision_bits = 128;

  static RealEnclosure point(const Rational& r, int precision_bits = 128);

  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& r) const { return lo <= r && r <= hi; }
  bool contains(const RealEnclosure& o) const { return lo <= o.lo && o.hi <= hi; }
  std::string str() const;
};

enum class Tri { Yes, No, Unknown };

/// Real builtins over enclosures: +r -r *r /r sinr absr dr nat2real.
RealEnclosure enclose_op(std::string_view op, const std::vector<RealEnclosure>& args, int precision_bits);
Tri compare_leq(const RealEnclosure& a, const RealEnclosure& b);

RealEnclosure enclose_sin(const RealEnclosure& x, int precision_bits);
/// Enclosure of pi of width at most 2^-bits.
RealEnclosure pi_enclosure(int bits);

}  // namespace approx
