#pragma once

#include "approx/enclosure.hpp"
#include "approx/syntax.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace approx {

/// Enclosure of a value in [0, +inf]. `lo_inf` means the value is certainly
/// infinite, `hi_inf` that it may be.
struct ErrValue {
  Rational lo;
  Rational hi;
  bool lo_inf = false;
  bool hi_inf = false;

  static ErrValue exact(const Rational& r);
  static ErrValue zero() { return exact(0); }
  static ErrValue infinity();
  static ErrValue between(const Rational& lo, const Rational& hi);

  bool is_point() const { return lo_inf || (!hi_inf && lo == hi); }
  bool is_infinite() const { return lo_inf; }
  bool is_zero() const { return !hi_inf && hi == 0; }
  std::string str() const;
};

ErrValue err_add(const ErrValue& a, const ErrValue& b);
/// Yes when a <= b for every choice inside the enclosures.
Tri err_leq(const ErrValue& a, const ErrValue& b);

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;

struct EnvNode {
  std::string name;
  ValuePtr value;
  Env next;
};

Env env_extend(Env env, std::string name, ValuePtr v);
ValuePtr env_lookup(const Env& env, const std::string& name);

struct Unit {};

struct Closure {
  std::string binder;
  Expr body;
  Env env;
};

struct TyClosure {
  Expr body;
  Env env;
};

struct PartialBuiltin {
  const BuiltinInfo* op;
  std::vector<ValuePtr> args;
};

/// fix applied to a function value; unfolded on use.
struct FixValue {
  ValuePtr fn;
};

struct Value {
  std::variant<RealEnclosure, double, std::uint64_t, bool, Unit, ErrValue, Closure, TyClosure, PartialBuiltin, FixValue> v;

  bool is_real() const { return std::holds_alternative<RealEnclosure>(v); }
  bool is_float() const { return std::holds_alternative<double>(v); }
  bool is_nat() const { return std::holds_alternative<std::uint64_t>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_err() const { return std::holds_alternative<ErrValue>(v); }
  const RealEnclosure& real() const { return std::get<RealEnclosure>(v); }
  double flt() const { return std::get<double>(v); }
  std::uint64_t nat() const { return std::get<std::uint64_t>(v); }
  bool boolean() const { return std::get<bool>(v); }
  const ErrValue& err() const { return std::get<ErrValue>(v); }
};

ValuePtr make_value(RealEnclosure r);
ValuePtr make_value(double d);
ValuePtr make_nat(std::uint64_t n);
ValuePtr make_bool(bool b);
ValuePtr make_value(ErrValue q);
ValuePtr make_value(Closure c);
ValuePtr make_value(PartialBuiltin p);

std::string value_str(const Value& v);
/// Surface syntax of a first-order value; empty for functions.
std::optional<Expr> value_to_expr(const Value& v);

}  // namespace approx
