// Argument reduction and kernels follow the FreeBSD msun sin/cos routines.
#include "approx/softsin.hpp"

#include "approx/enclosure.hpp"
#include "approx/numeric.hpp"

#include <bit>
#include <cstdint>

namespace approx {

namespace {

constexpr double S1 = -1.66666666666666324348e-01;
constexpr double S2 = 8.33333333332248946124e-03;
constexpr double S3 = -1.98412698298579493134e-04;
constexpr double S4 = 2.75573137070700676789e-06;
constexpr double S5 = -2.50507602534068634195e-08;
constexpr double S6 = 1.58969099521155010221e-10;

constexpr double C1 = 4.16666666666666019037e-02;
constexpr double C2 = -1.38888888888741095749e-03;
constexpr double C3 = 2.48015872894767294178e-05;
constexpr double C4 = -2.75573143513906633035e-07;
constexpr double C5 = 2.08757232129817482790e-09;
constexpr double C6 = -1.13596475577881948265e-11;

constexpr double invpio2 = 6.36619772367581382433e-01;
constexpr double pio2_1 = 1.57079632673412561417e+00;
constexpr double pio2_1t = 6.07710050650619224932e-11;
constexpr double pio2_2 = 6.07710050630396597660e-11;
constexpr double pio2_2t = 2.02226624879595063154e-21;
constexpr double pio2_3 = 2.02226624871116645580e-21;
constexpr double pio2_3t = 8.47842766036889956997e-32;

std::uint32_t high_word(double x) { return static_cast<std::uint32_t>(std::bit_cast<std::uint64_t>(x) >> 32); }

double k_sin(double x, double y, int iy) {
  double z = x * x;
  double w = z * z;
  double r = S2 + z * (S3 + z * S4) + z * w * (S5 + z * S6);
  double v = z * x;
  if (iy == 0) return x + v * (S1 + z * r);
  return x - ((z * (0.5 * y - v * r) - y) - v * S1);
}

double k_cos(double x, double y) {
  double z = x * x;
  double w = z * z;
  double r = z * (C1 + z * (C2 + z * C3)) + w * w * (C4 + z * (C5 + z * C6));
  double hz = 0.5 * z;
  w = 1.0 - hz;
  return w + (((1.0 - w) - hz) + (z * r - x * y));
}

int rem_pio2_medium(double x, std::uint32_t ix, double* y) {
  volatile double t0 = x * invpio2 + 0x1.8p52;
  double fn = t0 - 0x1.8p52;
  int n = static_cast<int>(fn);
  double r = x - fn * pio2_1;
  double w = fn * pio2_1t;
  std::uint32_t j = ix >> 20;
  y[0] = r - w;
  std::uint32_t i = j - ((high_word(y[0]) >> 20) & 0x7ff);
  if (i > 16) {
    double t = r;
    w = fn * pio2_2;
    r = t - w;
    w = fn * pio2_2t - ((t - r) - w);
    y[0] = r - w;
    i = j - ((high_word(y[0]) >> 20) & 0x7ff);
    if (i > 49) {
      t = r;
      w = fn * pio2_3;
      r = t - w;
      w = fn * pio2_3t - ((t - r) - w);
      y[0] = r - w;
    }
  }
  y[1] = (r - y[0]) - w;
  return n;
}

// Huge arguments: exact reduction against a long pi.
int rem_pio2_large(double x, double* y) {
  Rational xr = exact_value(x);
  RealEnclosure pi = pi_enclosure(1400);
  Rational half_pi = pi.mid() / 2;
  Integer n = floor_of(xr / half_pi + Rational(1, 2));
  Rational rem = xr - Rational(n) * half_pi;
  y[0] = round_nearest(rem);
  y[1] = round_nearest(rem - exact_value(y[0]));
  Integer n3 = n % 4;
  if (n3 < 0) n3 += 4;
  return static_cast<int>(n3.get_si());
}

}  // namespace

double soft_sin(double x) {
  std::uint32_t ix = high_word(x) & 0x7fffffff;
  if (ix <= 0x3fe921fb) {
    if (ix < 0x3e500000 && static_cast<int>(x) == 0) return x;
    return k_sin(x, 0.0, 0);
  }
  if (ix >= 0x7ff00000) return x - x;
  double y[2];
  int n = ix < 0x413921fb ? rem_pio2_medium(x, ix, y) : rem_pio2_large(x, y);
  switch (n & 3) {
    case 0: return k_sin(y[0], y[1], 1);
    case 1: return k_cos(y[0], y[1]);
    case 2: return -k_sin(y[0], y[1], 1);
    default: return -k_cos(y[0], y[1]);
  }
}

}  // namespace approx
