#pragma once

#include "approx/value.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace approx {

enum class EvalMode { Exact, Approx, Error };

struct EvalConfig {
  std::uint64_t fuel = 1'000'000;
  int precision_bits = 128;
  int max_depth = 5000;
};

/// An order comparison the oracle could not decide at this precision.
class OracleInconclusive : public Error {
 public:
  using Error::Error;
};

/// Ill-typed operation reached at run time.
class EvalError : public Error {
 public:
  using Error::Error;
};

// nullopt means the evaluation diverged: fuel ran out, Bottom was reached,
// or the recursion limit was hit.
std::optional<ValuePtr> evaluate(EvalMode mode, const Expr& e, const Env& env, const EvalConfig& cfg);
std::optional<ValuePtr> apply_values(EvalMode mode, const ValuePtr& fn, const std::vector<ValuePtr>& args,
                                     const EvalConfig& cfg);
/// Instantiates a polymorphic value; types are erased, so no type is passed.
std::optional<ValuePtr> apply_type(EvalMode mode, const ValuePtr& fn, const EvalConfig& cfg);

std::optional<ValuePtr> eval_exact(const Expr& e, const Env& env, const EvalConfig& cfg);
/// Rejects exact real operations.
std::optional<ValuePtr> eval_approx(const Expr& e, const Env& env, const EvalConfig& cfg);
/// Error expressions at a scalar error type; divergence is the infinite bound.
ErrValue eval_error(const Expr& q, const Env& env, const EvalConfig& cfg);
/// Scalar view of an error value: ErrReal values as is, naturals exactly.
ErrValue as_err(const Value& v);

}  // namespace approx
