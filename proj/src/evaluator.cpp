#include "approx/evaluator.hpp"

#include "approx/errops.hpp"
#include "approx/softsin.hpp"

#include <limits>
#include <unordered_map>

namespace approx {

namespace {

struct Diverge {};

enum class Op {
  AddR, SubR, MulR, DivR, SinR, AbsR, DistR, LeqR, Nat2Real,
  AddF, SubF, MulF, DivF, SinF, LeqF, Nat2Float,
  AddN, SubN, MulN, DistN, EqN, LeqN, FloorK, CeilK, CeilDivN,
  AddQ, IsZeroQ,
  AddErr, SubErr, MulErr, DivErr, SinErr, LeqErr, RndErr, N2RErr, AddNQ, MulNQ, EqNErr, LeqNErr,
};

Op op_code(const std::string& name) {
  static const std::unordered_map<std::string, Op> table = {
      {"+r", Op::AddR}, {"-r", Op::SubR}, {"*r", Op::MulR}, {"/r", Op::DivR}, {"sinr", Op::SinR},
      {"absr", Op::AbsR}, {"dr", Op::DistR}, {"leqr", Op::LeqR}, {"nat2real", Op::Nat2Real},
      {"+f", Op::AddF}, {"-f", Op::SubF}, {"*f", Op::MulF}, {"/f", Op::DivF}, {"sinf", Op::SinF},
      {"leqf", Op::LeqF}, {"nat2float", Op::Nat2Float},
      {"+n", Op::AddN}, {"-n", Op::SubN}, {"*n", Op::MulN}, {"dn", Op::DistN}, {"eqn", Op::EqN},
      {"leqn", Op::LeqN}, {"floorK", Op::FloorK}, {"ceilK", Op::CeilK}, {"ceildivn", Op::CeilDivN},
      {"+q", Op::AddQ}, {"iszeroq", Op::IsZeroQ},
      {"+err", Op::AddErr}, {"-err", Op::SubErr}, {"*err", Op::MulErr}, {"/err", Op::DivErr},
      {"sinerr", Op::SinErr}, {"leqerr", Op::LeqErr}, {"rnderr", Op::RndErr}, {"n2rerr", Op::N2RErr},
      {"+nq", Op::AddNQ}, {"*nq", Op::MulNQ}, {"eqnerr", Op::EqNErr}, {"leqnerr", Op::LeqNErr},
  };
  auto it = table.find(name);
  if (it == table.end()) throw EvalError("no semantics for builtin " + name);
  return it->second;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw EvalError("Nat overflow");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw EvalError("Nat overflow");
  return r;
}

double nat_to_double(std::uint64_t n) {
  if (n <= (std::uint64_t{1} << 53)) return static_cast<double>(n);
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof n, 0, 0, &n);
  return round_nearest(Rational(z));
}

Rational nat_to_rational(std::uint64_t n) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof n, 0, 0, &n);
  return Rational(z);
}

class Machine {
 public:
  Machine(EvalMode mode, const EvalConfig& cfg) : mode_(mode), cfg_(cfg), fuel_(cfg.fuel) {}

  ValuePtr eval(const Expr& e, const Env& env) {
    if (++depth_ > cfg_.max_depth) throw Diverge{};
    struct Guard {
      int& d;
      ~Guard() { --d; }
    } guard{depth_};
    switch (e->kind) {
      case ExprKind::Var: {
        ValuePtr v = env_lookup(env, e->name);
        if (!v) throw EvalError("unbound variable '" + e->name + "' at run time");
        return v;
      }
      case ExprKind::Lam:
        return make_value(Closure{e->name, e->kids[0], env});
      case ExprKind::App: {
        ValuePtr f = eval(e->kids[0], env);
        ValuePtr x = eval(e->kids[1], env);
        return apply(f, x);
      }
      case ExprKind::TyLam:
        return std::make_shared<const Value>(Value{TyClosure{e->kids[0], env}});
      case ExprKind::TyApp:
        return type_apply(eval(e->kids[0], env));
      case ExprKind::Fix:
        return std::make_shared<const Value>(Value{FixValue{eval(e->kids[0], env)}});
      case ExprKind::If: {
        ValuePtr c = force(eval(e->kids[0], env));
        if (!c->is_bool()) throw EvalError("if condition is not a boolean");
        return eval(e->kids[c->boolean() ? 1 : 2], env);
      }
      case ExprKind::RealLit:
        if (mode_ == EvalMode::Approx) throw EvalError("real literal in an approximate program");
        return make_value(RealEnclosure::point(e->rational, cfg_.precision_bits));
      case ExprKind::NatLit:
        return make_nat(e->nat);
      case ExprKind::BoolLit:
        return make_bool(e->boolean);
      case ExprKind::FloatLit:
        return make_value(e->flt);
      case ExprKind::ErrLit:
        return make_value(e->infinite ? ErrValue::infinity() : ErrValue::exact(e->rational));
      case ExprKind::Builtin: {
        std::vector<ValuePtr> args;
        args.reserve(e->kids.size());
        for (const auto& k : e->kids) args.push_back(eval(k, env));
        if (args.size() == e->op->params.size()) {
          tick();
          return call(*e->op, args);
        }
        return make_value(PartialBuiltin{e->op, std::move(args)});
      }
      case ExprKind::RedSeq: {
        ValuePtr c = eval(e->kids[0], env);
        ValuePtr n = force(eval(e->kids[1], env));
        ValuePtr g = eval(e->kids[2], env);
        if (!n->is_nat()) throw EvalError("redseq count is not a natural");
        std::uint64_t count = n->nat();
        if (count == 0) throw Diverge{};
        ValuePtr acc = apply(g, make_nat(0));
        for (std::uint64_t i = 1; i < count; ++i) {
          tick();
          acc = apply(apply(c, apply(g, make_nat(i))), acc);
        }
        return acc;
      }
      case ExprKind::Bottom:
        throw Diverge{};
    }
    throw EvalError("unknown expression");
  }

  ValuePtr apply(const ValuePtr& f, const ValuePtr& x) {
    tick();
    if (const auto* c = std::get_if<Closure>(&f->v)) return eval(c->body, env_extend(c->env, c->binder, x));
    if (const auto* p = std::get_if<PartialBuiltin>(&f->v)) {
      PartialBuiltin q = *p;
      q.args.push_back(x);
      if (q.args.size() == q.op->params.size()) return call(*q.op, q.args);
      return make_value(std::move(q));
    }
    if (std::holds_alternative<FixValue>(f->v)) {
      if (++depth_ > cfg_.max_depth) throw Diverge{};
      struct Guard {
        int& d;
        ~Guard() { --d; }
      } guard{depth_};
      return apply(force(f), x);
    }
    throw EvalError("application of a non-function value " + value_str(*f));
  }

  ValuePtr type_apply(const ValuePtr& f) {
    ValuePtr v = force(f);
    const auto* tc = std::get_if<TyClosure>(&v->v);
    if (!tc) throw EvalError("type application of a non-polymorphic value");
    tick();
    return eval(tc->body, tc->env);
  }

  ValuePtr force(ValuePtr v) {
    while (const auto* fx = std::get_if<FixValue>(&v->v)) {
      ValuePtr fn = fx->fn;
      v = apply(fn, v);
    }
    return v;
  }

 private:
  void tick() {
    if (fuel_ == 0) throw Diverge{};
    --fuel_;
  }

  const RealEnclosure& real_arg(const ValuePtr& v) {
    if (!v->is_real()) throw EvalError("expected a real, got " + value_str(*v));
    return v->real();
  }
  double float_arg(const ValuePtr& v) {
    if (!v->is_float()) throw EvalError("expected a float, got " + value_str(*v));
    return v->flt();
  }
  std::uint64_t nat_arg(const ValuePtr& v) {
    if (!v->is_nat()) throw EvalError("expected a natural, got " + value_str(*v));
    return v->nat();
  }
  const ErrValue& err_arg(const ValuePtr& v) {
    if (!v->is_err()) throw EvalError("expected an error value, got " + value_str(*v));
    return v->err();
  }

  ValuePtr real_op(const char* name, const std::vector<ValuePtr>& a) {
    std::vector<RealEnclosure> xs;
    for (const auto& v : a) xs.push_back(real_arg(v));
    return make_value(enclose_op(name, xs, cfg_.precision_bits));
  }

  ValuePtr call(const BuiltinInfo& info, std::vector<ValuePtr> a) {
    for (auto& v : a) v = force(v);
    Op op = op_code(info.name);
    bool real_level = op <= Op::Nat2Real;
    if (real_level && mode_ == EvalMode::Approx) throw EvalError("exact operation " + info.name + " in an approximate program");
    switch (op) {
      case Op::AddR: return real_op("+r", a);
      case Op::SubR: return real_op("-r", a);
      case Op::MulR: return real_op("*r", a);
      case Op::DivR: {
        const RealEnclosure& d = real_arg(a[1]);
        if (d.is_point() && d.lo == 0) throw Diverge{};  // undefined
        if (d.lo <= 0 && d.hi >= 0) throw OracleInconclusive("divisor not separated from 0");
        return real_op("/r", a);
      }
      case Op::SinR: return real_op("sinr", a);
      case Op::AbsR: {
        RealEnclosure r = enclose_op("absr", {real_arg(a[0])}, cfg_.precision_bits);
        return make_value(ErrValue::between(r.lo, r.hi));
      }
      case Op::DistR: {
        RealEnclosure r = enclose_op("dr", {real_arg(a[0]), real_arg(a[1])}, cfg_.precision_bits);
        return make_value(ErrValue::between(r.lo, r.hi));
      }
      case Op::LeqR: {
        Tri t = compare_leq(real_arg(a[0]), real_arg(a[1]));
        if (t == Tri::Unknown) throw OracleInconclusive("leqr undecided at " + std::to_string(cfg_.precision_bits) + " bits");
        return make_bool(t == Tri::Yes);
      }
      case Op::Nat2Real:
        return make_value(RealEnclosure::point(nat_to_rational(nat_arg(a[0])), cfg_.precision_bits));
      case Op::AddF: return make_value(float_arg(a[0]) + float_arg(a[1]));
      case Op::SubF: return make_value(float_arg(a[0]) - float_arg(a[1]));
      case Op::MulF: return make_value(float_arg(a[0]) * float_arg(a[1]));
      case Op::DivF: return make_value(float_arg(a[0]) / float_arg(a[1]));
      case Op::SinF: return make_value(soft_sin(float_arg(a[0])));
      case Op::LeqF: return make_bool(float_arg(a[0]) <= float_arg(a[1]));
      case Op::Nat2Float: return make_value(nat_to_double(nat_arg(a[0])));
      case Op::AddN: return make_nat(checked_add(nat_arg(a[0]), nat_arg(a[1])));
      case Op::SubN: {
        std::uint64_t x = nat_arg(a[0]), y = nat_arg(a[1]);
        return make_nat(x > y ? x - y : 0);
      }
      case Op::MulN: return make_nat(checked_mul(nat_arg(a[0]), nat_arg(a[1])));
      case Op::DistN: {
        std::uint64_t x = nat_arg(a[0]), y = nat_arg(a[1]);
        return make_nat(x > y ? x - y : y - x);
      }
      case Op::EqN: return make_bool(nat_arg(a[0]) == nat_arg(a[1]));
      case Op::LeqN: return make_bool(nat_arg(a[0]) <= nat_arg(a[1]));
      case Op::FloorK: {
        std::uint64_t k = nat_arg(a[0]), x = nat_arg(a[1]);
        if (k == 0) throw EvalError("floorK with K = 0");
        return make_nat(x / k * k);
      }
      case Op::CeilK: {
        std::uint64_t k = nat_arg(a[0]), x = nat_arg(a[1]);
        if (k == 0) throw EvalError("ceilK with K = 0");
        return make_nat(checked_mul(x / k + (x % k != 0), k));
      }
      case Op::CeilDivN: {
        std::uint64_t x = nat_arg(a[0]), k = nat_arg(a[1]);
        if (k == 0) throw EvalError("ceildivn by 0");
        return make_nat(x / k + (x % k != 0));
      }
      case Op::AddQ: return make_value(err_add(err_arg(a[0]), err_arg(a[1])));
      case Op::IsZeroQ: {
        const ErrValue& q = err_arg(a[0]);
        if (q.is_zero()) return make_bool(true);
        if (q.lo_inf || q.lo > 0) return make_bool(false);
        throw OracleInconclusive("iszeroq undecided at " + std::to_string(cfg_.precision_bits) + " bits");
      }
      case Op::AddErr: return make_value(float_op_err('+', real_arg(a[0]), err_arg(a[1]), real_arg(a[2]), err_arg(a[3])));
      case Op::SubErr: return make_value(float_op_err('-', real_arg(a[0]), err_arg(a[1]), real_arg(a[2]), err_arg(a[3])));
      case Op::MulErr: return make_value(float_op_err('*', real_arg(a[0]), err_arg(a[1]), real_arg(a[2]), err_arg(a[3])));
      case Op::DivErr: return make_value(float_op_err('/', real_arg(a[0]), err_arg(a[1]), real_arg(a[2]), err_arg(a[3])));
      case Op::SinErr: return make_value(sin_err(real_arg(a[0]), err_arg(a[1])));
      case Op::LeqErr: return make_value(leq_err(real_arg(a[0]), err_arg(a[1]), real_arg(a[2]), err_arg(a[3])));
      case Op::RndErr: return make_value(rnd_err(real_arg(a[0]), err_arg(a[1])));
      case Op::N2RErr: return make_value(n2r_err(nat_arg(a[0]), nat_arg(a[1])));
      case Op::AddNQ: return make_nat(checked_add(nat_arg(a[1]), nat_arg(a[3])));
      case Op::MulNQ: {
        std::uint64_t xe = nat_arg(a[0]), xq = nat_arg(a[1]), ye = nat_arg(a[2]), yq = nat_arg(a[3]);
        return make_nat(checked_add(checked_add(checked_mul(xe, yq), checked_mul(ye, xq)), checked_mul(xq, yq)));
      }
      case Op::EqNErr:
      case Op::LeqNErr:
        return make_value(nat_cmp_err(nat_arg(a[0]), nat_arg(a[1]), nat_arg(a[2]), nat_arg(a[3])));
    }
    throw EvalError("unhandled builtin " + info.name);
  }

  EvalMode mode_;
  const EvalConfig& cfg_;
  std::uint64_t fuel_;
  int depth_ = 0;
};

}  // namespace

std::optional<ValuePtr> evaluate(EvalMode mode, const Expr& e, const Env& env, const EvalConfig& cfg) {
  Machine m(mode, cfg);
  try {
    return m.force(m.eval(e, env));
  } catch (const Diverge&) {
    return std::nullopt;
  }
}

std::optional<ValuePtr> apply_values(EvalMode mode, const ValuePtr& fn, const std::vector<ValuePtr>& args,
                                     const EvalConfig& cfg) {
  Machine m(mode, cfg);
  try {
    ValuePtr v = fn;
    for (const auto& a : args) v = m.apply(v, a);
    return m.force(v);
  } catch (const Diverge&) {
    return std::nullopt;
  }
}

std::optional<ValuePtr> apply_type(EvalMode mode, const ValuePtr& fn, const EvalConfig& cfg) {
  Machine m(mode, cfg);
  try {
    return m.force(m.type_apply(fn));
  } catch (const Diverge&) {
    return std::nullopt;
  }
}

std::optional<ValuePtr> eval_exact(const Expr& e, const Env& env, const EvalConfig& cfg) {
  return evaluate(EvalMode::Exact, e, env, cfg);
}

std::optional<ValuePtr> eval_approx(const Expr& e, const Env& env, const EvalConfig& cfg) {
  return evaluate(EvalMode::Approx, e, env, cfg);
}

ErrValue as_err(const Value& v) {
  if (v.is_err()) return v.err();
  if (v.is_nat()) return ErrValue::exact(nat_to_rational(v.nat()));
  throw EvalError("not an error value: " + value_str(v));
}

ErrValue eval_error(const Expr& q, const Env& env, const EvalConfig& cfg) {
  auto v = evaluate(EvalMode::Error, q, env, cfg);
  if (!v) return ErrValue::infinity();
  return as_err(**v);
}

}  // namespace approx
