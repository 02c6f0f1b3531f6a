#include "approx/value.hpp"

namespace approx {

ErrValue ErrValue::exact(const Rational& r) {
  ErrValue q;
  q.lo = r;
  q.hi = r;
  return q;
}

ErrValue ErrValue::infinity() {
  ErrValue q;
  q.lo_inf = q.hi_inf = true;
  return q;
}

ErrValue ErrValue::between(const Rational& lo, const Rational& hi) {
  ErrValue q;
  q.lo = lo;
  q.hi = hi;
  return q;
}

std::string ErrValue::str() const {
  if (lo_inf) return "inf";
  if (!hi_inf && lo == hi) return format_rational(lo);
  return "[" + approx_decimal(lo) + ", " + (hi_inf ? std::string("inf") : approx_decimal(hi)) + "]";
}

ErrValue err_add(const ErrValue& a, const ErrValue& b) {
  ErrValue r;
  r.lo_inf = a.lo_inf || b.lo_inf;
  r.hi_inf = a.hi_inf || b.hi_inf;
  if (!r.lo_inf) r.lo = a.lo + b.lo;
  if (!r.hi_inf) r.hi = a.hi + b.hi;
  if (r.lo_inf) r.hi_inf = true;
  return r;
}

Tri err_leq(const ErrValue& a, const ErrValue& b) {
  // a <= b certainly
  if (b.lo_inf) return Tri::Yes;
  if (!a.hi_inf && a.hi <= b.lo) return Tri::Yes;
  // a > b certainly
  if (a.lo_inf && !b.hi_inf) return Tri::No;
  if (!a.lo_inf && !b.hi_inf && b.hi < a.lo) return Tri::No;
  return Tri::Unknown;
}

Env env_extend(Env env, std::string name, ValuePtr v) {
  return std::make_shared<const EnvNode>(EnvNode{std::move(name), std::move(v), std::move(env)});
}

ValuePtr env_lookup(const Env& env, const std::string& name) {
  for (const EnvNode* n = env.get(); n; n = n->next.get()) {
    if (n->name == name) return n->value;
  }
  return nullptr;
}

ValuePtr make_value(RealEnclosure r) { return std::make_shared<const Value>(Value{std::move(r)}); }
ValuePtr make_value(double d) { return std::make_shared<const Value>(Value{d}); }
ValuePtr make_nat(std::uint64_t n) { return std::make_shared<const Value>(Value{n}); }
ValuePtr make_bool(bool b) { return std::make_shared<const Value>(Value{b}); }
ValuePtr make_value(ErrValue q) { return std::make_shared<const Value>(Value{std::move(q)}); }
ValuePtr make_value(Closure c) { return std::make_shared<const Value>(Value{std::move(c)}); }
ValuePtr make_value(PartialBuiltin p) { return std::make_shared<const Value>(Value{std::move(p)}); }

std::string value_str(const Value& v) {
  struct {
    std::string operator()(const RealEnclosure& r) const { return r.str(); }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(std::uint64_t n) const { return std::to_string(n); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const Unit&) const { return "unit"; }
    std::string operator()(const ErrValue& q) const { return q.str(); }
    std::string operator()(const Closure& c) const { return "<closure " + c.binder + ">"; }
    std::string operator()(const TyClosure&) const { return "<type closure>"; }
    std::string operator()(const PartialBuiltin& p) const { return "<" + p.op->name + ">"; }
    std::string operator()(const FixValue&) const { return "<fix>"; }
  } visitor;
  return std::visit(visitor, v.v);
}

std::optional<Expr> value_to_expr(const Value& v) {
  if (v.is_real() && v.real().is_point()) return real_lit(v.real().lo);
  if (v.is_float()) return float_lit(v.flt());
  if (v.is_nat()) return nat_lit(v.nat());
  if (v.is_bool()) return bool_lit(v.boolean());
  if (v.is_err() && v.err().is_point()) return v.err().is_infinite() ? err_inf() : err_lit(v.err().lo);
  return std::nullopt;
}

}  // namespace approx
