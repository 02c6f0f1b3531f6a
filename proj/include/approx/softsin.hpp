#pragma once

namespace approx {

/// Software sine for binary64, identical on every platform. Error at most
/// one ulp of the result; sin(+-0) = +-0, non-finite input gives NaN.
double soft_sin(double x);

}  // namespace approx
