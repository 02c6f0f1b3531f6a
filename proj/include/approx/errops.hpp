#pragma once

#include "approx/value.hpp"

#include <cstdint>

namespace approx {

// Semantics of the interval-error builtins emitted by the compiler. Each
// returns an enclosure of the bound; inputs may themselves be enclosures.

/// Bound on |op(xe, ye) - fl(op(xa, ya))| over all floats xa, ya within
/// xq, yq of xe, ye. op is one of '+', '-', '*', '/'.
ErrValue float_op_err(char op, const RealEnclosure& xe, const ErrValue& xq, const RealEnclosure& ye,
                      const ErrValue& yq);
ErrValue sin_err(const RealEnclosure& xe, const ErrValue& xq);
ErrValue leq_err(const RealEnclosure& xe, const ErrValue& xq, const RealEnclosure& ye, const ErrValue& yq);
/// Rounding error of any float computed from a real within `radius` of `center`.
ErrValue rnd_err(const RealEnclosure& center, const ErrValue& radius);
ErrValue n2r_err(std::uint64_t ne, std::uint64_t nq);
/// Error of a comparison on naturals: 0 when the outcome cannot change.
ErrValue nat_cmp_err(std::uint64_t xe, std::uint64_t xq, std::uint64_t ye, std::uint64_t yq);

}  // namespace approx
