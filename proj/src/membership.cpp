#include "approx/membership.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace approx {

std::string to_string(VStatus s) {
  switch (s) {
    case VStatus::Pass: return "pass";
    case VStatus::Fail: return "fail";
    case VStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

Json Replay::to_json() const {
  Json j;
  j["seed"] = seed;
  j["trial"] = trial;
  j["precision_bits"] = precision_bits;
  j["inputs"] = inputs;
  j["exact"] = exact;
  j["approx"] = approx;
  j["bound"] = bound;
  j["distance"] = distance;
  return j;
}

Json Verdict::to_json() const {
  Json j;
  j["status"] = to_string(status);
  j["trials"] = trials;
  j["passes"] = passes;
  j["failed"] = trials - passes - inconclusive;
  j["inconclusive"] = inconclusive;
  j["slack_passes"] = slack_passes;
  j["max_slack"] = max_slack;
  j["samples_evaluated"] = samples_evaluated;
  if (!reason.empty()) j["reason"] = reason;
  Json fs = Json::array();
  for (const auto& f : failures) fs.push_back(f.to_json());
  j["failures"] = fs;
  return j;
}

namespace {

constexpr std::size_t kMaxRecords = 20;

// ------------------------------
// member construction
// ------------------------------

Rational small_shift(Rng& rng) {
  if (rng.chance(1, 4)) return 0;
  Rational d(rng.range(-64, 64), rng.range(1, 16));
  d.canonicalize();
  return d;
}

Rational sample_bound(Rng& rng) {
  switch (rng.below(4)) {
    case 0: return 0;
    case 1: return pow2(-static_cast<long>(rng.range(0, 60)));
    default: {
      Rational r(rng.range(1, 100), rng.range(1, 1000));
      r.canonicalize();
      return r;
    }
  }
}

Rational sample_exact(Rng& rng, const SampleConfig& cfg) {
  Rational r = sample_real_literal(rng)->rational;
  if (cfg.real_bound && abs_of(r) > *cfg.real_bound) {
    r = *cfg.real_bound * Rational(rng.range(-1024, 1024), 1024);
    r.canonicalize();
  }
  return r;
}

struct FlPoint {
  Rational e;
  double a;
  std::optional<Rational> q;  // nullopt is infinity
};

// e within q of real(a).
FlPoint sample_fl(Rng& rng, const SampleConfig& cfg) {
  FlPoint p;
  p.e = sample_exact(rng, cfg);
  unsigned pick = rng.below(100);
  if (pick < 30) {
    p.q = Rational(0);
  } else if (pick < 33) {
    p.q.reset();
  } else {
    p.q = sample_bound(rng);
  }
  Rational t(rng.range(-1024, 1024), 1024);
  t.canonicalize();
  Rational target = p.e + t * (p.q ? *p.q : Rational(rng.range(0, 100)));
  p.a = round_nearest(target);
  if (!std::isfinite(p.a) || (p.q && abs_of(p.e - exact_value(p.a)) > *p.q)) {
    p.a = round_nearest(p.e);
    if (p.q) p.q = std::max(*p.q, abs_of(p.e - exact_value(p.a)));
  }
  return p;
}

Expr q_expr(const std::optional<Rational>& q) { return q ? err_lit(*q) : err_inf(); }

struct PairExpr {
  Expr e1, e2, a, q;
};

const std::string kS = "s";
const std::string kSq = "s^q";

struct Body {
  Expr e, a, q;
};

Expr exact_lit(const Rational& c) { return real_lit(c); }

// First-order function templates over the binder s, with their error bodies.
std::optional<Body> fl_template(unsigned pick, Rng& rng, const SampleConfig& cfg) {
  Expr s = var(kS), sq = var(kSq);
  Rational c = sample_exact(rng, cfg);
  double cf = round_nearest(c);
  Expr cq = err_lit(abs_of(c - exact_value(cf)));
  switch (pick) {
    case 0: return Body{s, s, sq};
    case 1: return Body{builtin("-r", {real_lit(0), s}), builtin("-f", {float_lit(0.0), s}),
                        builtin("-err", {real_lit(0), err_lit(0), s, sq})};
    case 2: return Body{builtin("+r", {s, exact_lit(c)}), builtin("+f", {s, float_lit(cf)}),
                        builtin("+err", {s, sq, exact_lit(c), cq})};
    case 3: return Body{builtin("*r", {s, exact_lit(c)}), builtin("*f", {s, float_lit(cf)}),
                        builtin("*err", {s, sq, exact_lit(c), cq})};
    case 4: return Body{builtin("sinr", {s}), builtin("sinf", {s}), builtin("sinerr", {s, sq})};
    default: return Body{exact_lit(c), float_lit(cf), cq};
  }
}

std::optional<PairExpr> sample_pair(const ApproxTy& f, Rng& rng, const SampleConfig& cfg, int depth);

Expr shift(const ApproxTy& f, const Expr& e, const Rational& d, int depth = 0) {
  switch (f->kind) {
    case FamKind::Fl:
      return d == 0 ? e : builtin("+r", {e, real_lit(d)});
    case FamKind::Nat: {
      Integer n = floor_of(abs_of(d));
      return n == 0 ? e : builtin("+n", {e, nat_lit(n.get_ui())});
    }
    case FamKind::Pi: {
      std::string w = "w" + std::to_string(depth);
      return lam(w, exact_type(f->dom), shift(f->body, app(e, var(w)), d, depth + 1));
    }
    default: return e;
  }
}

Rational shift_size(const ApproxTy& f, const Rational& d) {
  if (!fam_scalar(f)) return shift_size(f->body, d);
  if (f->kind == FamKind::Nat) return Rational(floor_of(abs_of(d)));
  if (f->kind == FamKind::Bool) return 0;
  return abs_of(d);
}

bool is(const ApproxTy& f, FamKind k) { return f->kind == k; }

std::optional<PairExpr> sample_pi_pair(const ApproxTy& f, Rng& rng, const SampleConfig& cfg, int depth) {
  const ApproxTy& D = f->dom;
  const ApproxTy& C = f->body;
  Ty ed = exact_type(D), ad = approx_type(D), qd = err_type(D);
  auto wrap = [&](const Body& b, const Expr& e2) {
    return PairExpr{lam(kS, ed, b.e), lam(kS, ed, e2), lam(kS, ad, b.a), lam(kS, ed, lam(kSq, qd, b.q))};
  };
  Expr s = var(kS), sq = var(kSq);
  std::optional<Body> body;
  unsigned pick = rng.below(8);
  if (is(D, FamKind::Fl) && is(C, FamKind::Fl)) {
    body = fl_template(pick % 6, rng, cfg);
  } else if (is(D, FamKind::Nat) && is(C, FamKind::Nat)) {
    std::uint64_t k = rng.below(6);
    switch (pick % 4) {
      case 0: body = Body{s, s, sq}; break;
      case 1: body = Body{builtin("+n", {s, nat_lit(k)}), builtin("+n", {s, nat_lit(k)}),
                          builtin("+nq", {s, sq, nat_lit(k), nat_lit(0)})}; break;
      case 2: body = Body{builtin("*n", {s, nat_lit(k)}), builtin("*n", {s, nat_lit(k)}),
                          builtin("*nq", {s, sq, nat_lit(k), nat_lit(0)})}; break;
      default: break;
    }
  } else if (is(D, FamKind::Nat) && is(C, FamKind::Fl) && pick % 2 == 0) {
    body = Body{builtin("nat2real", {s}), builtin("nat2float", {s}), builtin("n2rerr", {s, sq})};
  } else if (is(D, FamKind::Fl) && is(C, FamKind::Bool) && pick % 2 == 0) {
    Rational c = sample_exact(rng, cfg);
    double cf = round_nearest(c);
    body = Body{builtin("leqr", {s, real_lit(c)}), builtin("leqf", {s, float_lit(cf)}),
                builtin("leqerr", {s, sq, real_lit(c), err_lit(abs_of(c - exact_value(cf)))})};
  } else if (is(D, FamKind::Fl) && is(C, FamKind::Pi) && is(C->dom, FamKind::Fl) && is(C->body, FamKind::Fl) &&
             pick % 2 == 0) {
    static const char* ops[][3] = {{"+r", "+f", "+err"}, {"-r", "-f", "-err"}, {"*r", "*f", "*err"}};
    const auto& op = ops[rng.below(3)];
    Expr t = var("t"), tq = var("t^q");
    Expr e = lam(kS, ed, lam("t", real_ty(), builtin(op[0], {s, t})));
    Expr a = lam(kS, ad, lam("t", float_ty(), builtin(op[1], {s, t})));
    Expr q = lam(kS, ed, lam(kSq, qd, lam("t", real_ty(), lam("t^q", err_ty(), builtin(op[2], {s, sq, t, tq})))));
    return PairExpr{e, e, a, q};
  } else if (is(D, FamKind::Nat) && is(C, FamKind::Pi) && is(C->dom, FamKind::Nat) && is(C->body, FamKind::Nat) &&
             pick % 2 == 0) {
    bool mul = rng.chance(1, 2);
    Expr t = var("t"), tq = var("t^q");
    Expr e = lam(kS, ed, lam("t", nat_ty(), builtin(mul ? "*n" : "+n", {s, t})));
    Expr q = lam(kS, ed, lam(kSq, qd, lam("t", nat_ty(), lam("t^q", nat_ty(), builtin(mul ? "*nq" : "+nq", {s, sq, t, tq})))));
    return PairExpr{e, e, e, q};
  } else if (fam_equal(D, C) && pick % 3 == 0) {
    body = Body{s, s, sq};
  }
  if (body && fam_scalar(C)) {
    // two exact functions sharing the approximation, apart by at most dmax
    Rational d1 = small_shift(rng), d2 = small_shift(rng);
    if (C->kind == FamKind::Nat) {
      d1 = abs_of(d1);
      d2 = abs_of(d2);
    }
    if (C->kind == FamKind::Bool) d1 = d2 = 0;
    Rational dmax = std::max(shift_size(C, d1), shift_size(C, d2));
    Body b = *body;
    Expr e1 = shift(C, b.e, d1, depth + 1);
    Expr e2 = shift(C, b.e, d2, depth + 1);
    if (dmax > 0) b.q = fam_add(C, b.q, fam_const(C, dmax));
    b.e = e1;
    return wrap(b, e2);
  }
  if (body) return wrap(*body, body->e);
  // constant functions
  auto inner = sample_pair(C, rng, cfg, depth + 1);
  if (!inner) return std::nullopt;
  return PairExpr{lam(kS, ed, inner->e1), lam(kS, ed, inner->e2), lam(kS, ad, inner->a),
                  lam(kS, ed, lam(kSq, qd, inner->q))};
}

std::optional<PairExpr> sample_pair(const ApproxTy& f, Rng& rng, const SampleConfig& cfg, int depth) {
  switch (f->kind) {
    case FamKind::Fl: {
      FlPoint p = sample_fl(rng, cfg);
      Rational e2;
      if (p.q) {
        Rational u(rng.range(-1024, 1024), 1024);
        u.canonicalize();
        e2 = exact_value(p.a) + u * *p.q;
      } else {
        e2 = sample_exact(rng, cfg);
      }
      return PairExpr{real_lit(p.e), real_lit(e2), float_lit(p.a), q_expr(p.q)};
    }
    case FamKind::Nat: {
      // recursive programs cost quadratic time in their Nat inputs
      std::uint64_t a = rng.chance(3, 4) ? rng.below(21) : rng.below(65);
      std::uint64_t q = rng.chance(7, 10) ? 0 : rng.range(1, 3);
      auto near = [&] {
        std::uint64_t d = rng.below(q + 1);
        if (rng.chance(1, 2) && d <= a) return a - d;
        return a + d;
      };
      std::uint64_t e1 = near(), e2 = near();
      return PairExpr{nat_lit(e1), nat_lit(e2), nat_lit(a), nat_lit(q)};
    }
    case FamKind::Bool: {
      bool a = rng.chance(1, 2);
      if (rng.chance(1, 5)) return PairExpr{bool_lit(!a), bool_lit(a), bool_lit(a), err_inf()};
      return PairExpr{bool_lit(a), bool_lit(a), bool_lit(a), rng.chance(1, 10) ? err_inf() : err_lit(0)};
    }
    case FamKind::Pi: return sample_pi_pair(f, rng, cfg, depth);
    default: return std::nullopt;
  }
}

// ------------------------------
// trial checking
// ------------------------------

enum class K { Pass, Fail, Unknown, Oracle, Inconclusive };

struct Out {
  K k = K::Pass;
  std::string reason;
  std::string exact, approx, bound, distance;
  Rational width;
};

Out pass_out() { return Out{}; }
Out inconclusive(std::string why) {
  Out o;
  o.k = K::Inconclusive;
  o.reason = std::move(why);
  return o;
}

struct Trial {
  EvalConfig ec;
  Rng rng;
  int index;
  const SampleConfig& cfg;
  std::vector<std::string> inputs;
};

ValuePtr must(std::optional<ValuePtr> v, const char* what) {
  if (!v) throw EvalError(std::string("sampled ") + what + " diverged");
  return *v;
}

struct MemberVals {
  ValuePtr e, a, q;
};

MemberVals eval_member(const Expr& e, const Expr& a, const Expr& q, const EvalConfig& ec) {
  return {must(evaluate(EvalMode::Exact, e, nullptr, ec), "exact value"),
          must(evaluate(EvalMode::Approx, a, nullptr, ec), "approximation"),
          must(evaluate(EvalMode::Error, q, nullptr, ec), "error")};
}

ErrValue abs_diff(const Rational& lo, const Rational& hi) {
  if (lo >= 0) return ErrValue::between(lo, hi);
  if (hi <= 0) return ErrValue::between(-hi, -lo);
  return ErrValue::between(0, std::max<Rational>(-lo, hi));
}

Out compare(const ErrValue& d, const ErrValue& q) {
  Out o;
  o.bound = q.str();
  o.distance = d.str();
  switch (err_leq(d, q)) {
    case Tri::Yes: o.k = K::Pass; break;
    case Tri::No: o.k = K::Fail; break;
    case Tri::Unknown:
      o.k = K::Unknown;
      if (!d.hi_inf && !q.lo_inf) o.width = std::max<Rational>(0, d.hi - q.lo);
      break;
  }
  return o;
}

ErrValue scalar_distance(const ApproxTy& f, const Value& x, const Value& y) {
  switch (f->kind) {
    case FamKind::Fl: {
      const RealEnclosure& e = x.real();
      if (y.is_float()) {
        if (!std::isfinite(y.flt())) return ErrValue::infinity();
        Rational r = exact_value(y.flt());
        return abs_diff(e.lo - r, e.hi - r);
      }
      const RealEnclosure& g = y.real();
      return abs_diff(e.lo - g.hi, e.hi - g.lo);
    }
    case FamKind::Nat: {
      std::uint64_t a = x.nat(), b = y.nat();
      return ErrValue::exact(as_err(Value{a > b ? a - b : b - a}).lo);
    }
    case FamKind::Bool: return x.boolean() == y.boolean() ? ErrValue::zero() : ErrValue::infinity();
    default: throw Error("scalar_distance on " + fam_str(f));
  }
}

std::string show(const std::optional<ValuePtr>& v) { return v ? value_str(**v) : "diverged"; }

Out scalar_check(const ApproxTy& f, const std::optional<ValuePtr>& x, const std::optional<ValuePtr>& y,
                 const ErrValue& q) {
  if (q.lo_inf) return pass_out();
  if (!x && !y) return pass_out();
  Out o;
  if (!x || !y) {
    o.k = K::Fail;
    o.reason = "exactly one side diverged";
    o.bound = q.str();
    o.distance = "inf";
  } else {
    o = compare(scalar_distance(f, **x, **y), q);
  }
  o.exact = show(x);
  o.approx = show(y);
  return o;
}

struct Mono {
  ApproxTy family;
  ValuePtr zero, plus;
};

Mono mono(const ApproxTy& poly, int index, const EvalConfig& ec) {
  ApproxTy g = index % 2 == 0 ? fl_family() : nat_family();
  return {instantiate_poly(poly, g), must(evaluate(EvalMode::Error, fam_zero(g), nullptr, ec), "zero"),
          must(evaluate(EvalMode::Error, fam_plus(g), nullptr, ec), "plus")};
}

std::optional<ValuePtr> inst_err(const ValuePtr& q, const Mono& m, const EvalConfig& ec) {
  auto q1 = apply_type(EvalMode::Error, q, ec);
  if (!q1) return std::nullopt;
  auto q2 = apply_type(EvalMode::Error, *q1, ec);
  if (!q2) return std::nullopt;
  return apply_values(EvalMode::Error, *q2, {m.zero, m.plus}, ec);
}

std::string show_member(const MemberExpr& m) {
  return "(" + print(m.e) + ", " + print(m.a) + ", " + print(m.q) + ")";
}

Out member_check(const ApproxTy& f, std::optional<ValuePtr> e, std::optional<ValuePtr> a, std::optional<ValuePtr> q,
                 Trial& t) {
  if (!q) return pass_out();
  if (fam_scalar(f)) return scalar_check(f, e, a, as_err(**q));
  if (!e && !a) return pass_out();
  if (f->kind == FamKind::Pi) {
    auto m = sample_pair(f->dom, t.rng, t.cfg, 0);
    if (!m) return inconclusive("cannot sample inputs of " + fam_str(f->dom));
    MemberVals in = eval_member(m->e1, m->a, m->q, t.ec);
    t.inputs.push_back(show_member({m->e1, m->a, m->q}));
    auto rq = apply_values(EvalMode::Error, *q, {in.e, in.q}, t.ec);
    if (!rq) return pass_out();
    auto re = e ? apply_values(EvalMode::Exact, *e, {in.e}, t.ec) : std::nullopt;
    auto ra = a ? apply_values(EvalMode::Approx, *a, {in.a}, t.ec) : std::nullopt;
    return member_check(f->body, re, ra, rq, t);
  }
  if (f->kind == FamKind::PiTy) {
    Mono m = mono(f, t.index, t.ec);
    t.inputs.push_back("@" + std::string(t.index % 2 == 0 ? "Fl" : "Nat"));
    auto rq = inst_err(*q, m, t.ec);
    if (!rq) return pass_out();
    auto re = e ? apply_type(EvalMode::Exact, *e, t.ec) : std::nullopt;
    auto ra = a ? apply_type(EvalMode::Approx, *a, t.ec) : std::nullopt;
    return member_check(m.family, re, ra, rq, t);
  }
  return inconclusive("open family " + fam_str(f));
}

Out aeq_values(const ApproxTy& f, std::optional<ValuePtr> q, std::optional<ValuePtr> e1, std::optional<ValuePtr> e2,
               Trial& t) {
  if (!q) return pass_out();
  if (fam_scalar(f)) return scalar_check(f, e1, e2, as_err(**q));
  if (!e1 && !e2) return pass_out();
  if (f->kind == FamKind::Pi) {
    auto m = sample_pair(f->dom, t.rng, t.cfg, 0);
    if (!m) return inconclusive("cannot sample inputs of " + fam_str(f->dom));
    MemberVals in = eval_member(m->e1, m->a, m->q, t.ec);
    t.inputs.push_back("r=" + print(m->e1) + " r+=" + print(m->q));
    auto rq = apply_values(EvalMode::Error, *q, {in.e, in.q}, t.ec);
    if (!rq) return pass_out();
    auto r1 = e1 ? apply_values(EvalMode::Exact, *e1, {in.e}, t.ec) : std::nullopt;
    auto r2 = e2 ? apply_values(EvalMode::Exact, *e2, {in.e}, t.ec) : std::nullopt;
    return aeq_values(f->body, rq, r1, r2, t);
  }
  if (f->kind == FamKind::PiTy) {
    Mono m = mono(f, t.index, t.ec);
    auto rq = inst_err(*q, m, t.ec);
    if (!rq) return pass_out();
    auto r1 = e1 ? apply_type(EvalMode::Exact, *e1, t.ec) : std::nullopt;
    auto r2 = e2 ? apply_type(EvalMode::Exact, *e2, t.ec) : std::nullopt;
    return aeq_values(m.family, rq, r1, r2, t);
  }
  return inconclusive("open family " + fam_str(f));
}

Out leq_values(const ApproxTy& f, std::optional<ValuePtr> q1, std::optional<ValuePtr> q2, Trial& t) {
  if (!q2) return pass_out();
  if (fam_scalar(f)) {
    ErrValue b = as_err(**q2);
    if (b.lo_inf) return pass_out();
    Out o;
    if (!q1) {
      o.k = K::Fail;
      o.distance = "inf";
      o.bound = b.str();
    } else {
      o = compare(as_err(**q1), b);
    }
    o.exact = q1 ? value_str(**q1) : "diverged";
    o.approx = value_str(**q2);
    return o;
  }
  if (f->kind == FamKind::Pi) {
    auto m = sample_pair(f->dom, t.rng, t.cfg, 0);
    if (!m) return inconclusive("cannot sample inputs of " + fam_str(f->dom));
    MemberVals in = eval_member(m->e1, m->a, m->q, t.ec);
    t.inputs.push_back("r=" + print(m->e1) + " r+=" + print(m->q));
    auto r2 = apply_values(EvalMode::Error, *q2, {in.e, in.q}, t.ec);
    if (!r2) return pass_out();
    auto r1 = q1 ? apply_values(EvalMode::Error, *q1, {in.e, in.q}, t.ec) : std::nullopt;
    return leq_values(f->body, r1, r2, t);
  }
  if (f->kind == FamKind::PiTy) {
    Mono m = mono(f, t.index, t.ec);
    auto r2 = inst_err(*q2, m, t.ec);
    if (!r2) return pass_out();
    auto r1 = q1 ? inst_err(*q1, m, t.ec) : std::nullopt;
    return leq_values(m.family, r1, r2, t);
  }
  return inconclusive("open family " + fam_str(f));
}

using Attempt = std::function<Out(Trial&)>;

struct TrialResult {
  Out out;
  int precision;
  std::vector<std::string> inputs;
};

TrialResult run_trial(const SampleConfig& cfg, int index, const Attempt& fn) {
  int p = cfg.eval.precision_bits;
  int cap = std::min(cfg.max_precision_bits, kPrecisionCap);
  for (;;) {
    EvalConfig ec = cfg.eval;
    ec.precision_bits = p;
    Trial t{ec, Rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(index))), index, cfg, {}};
    Out o;
    try {
      o = fn(t);
    } catch (const OracleInconclusive& ex) {
      o.k = K::Oracle;
      o.reason = ex.what();
    } catch (const PrecisionOverflow& ex) {
      o = inconclusive(ex.what());
    }
    if ((o.k == K::Unknown || o.k == K::Oracle) && p * 2 <= cap) {
      p *= 2;
      continue;
    }
    if (o.k == K::Oracle) o.k = K::Inconclusive;
    return {o, p, std::move(t.inputs)};
  }
}

Verdict run_trials(const SampleConfig& cfg, bool ground, const Attempt& fn) {
  Verdict v;
  v.trials = cfg.trials;
  Rational max_slack = 0;
  int distinct = ground ? std::min(cfg.trials, 1) : cfg.trials;
  for (int i = 0; i < distinct; ++i) {
    int index = cfg.first_trial + i;
    TrialResult r = run_trial(cfg, index, fn);
    int weight = ground ? cfg.trials : 1;
    ++v.samples_evaluated;
    switch (r.out.k) {
      case K::Pass: v.passes += weight; break;
      case K::Unknown:
        v.passes += weight;
        v.slack_passes += weight;
        max_slack = std::max(max_slack, r.out.width);
        break;
      case K::Fail:
        if (v.failures.size() < kMaxRecords) {
          Replay rec;
          rec.seed = cfg.seed;
          rec.trial = index;
          rec.precision_bits = r.precision;
          rec.inputs = r.inputs;
          rec.exact = r.out.exact;
          rec.approx = r.out.approx;
          rec.bound = r.out.bound;
          rec.distance = r.out.distance;
          v.failures.push_back(std::move(rec));
        }
        break;
      default:
        v.inconclusive += weight;
        if (v.reason.empty()) v.reason = r.out.reason;
        break;
    }
  }
  v.max_slack = approx_decimal(max_slack, 6);
  if (v.passes + v.inconclusive < v.trials) {
    v.status = VStatus::Fail;
  } else if (v.inconclusive > 0) {
    v.status = VStatus::Inconclusive;
  }
  return v;
}

void expect_type(const TyCtx& ctx, const Expr& e, const Ty& want, const char* what) {
  Ty got = infer_type(ctx, e);
  if (!ty_equal(got, want)) throw TypeMismatch(print_ty(want), print_ty(got), what);
}

}  // namespace

std::optional<MemberExpr> sample_member(const ApproxTy& f, Rng& rng, const SampleConfig& cfg) {
  auto p = sample_pair(f, rng, cfg, 0);
  if (!p) return std::nullopt;
  return MemberExpr{p->e1, p->a, p->q};
}

ApproxTy close_family(const ApproxTy& f, const Substitution& s) {
  ApproxTy r = f;
  for (auto it = s.families.rbegin(); it != s.families.rend(); ++it) r = subst_family(r, it->first, it->second);
  return r;
}

std::optional<Substitution> sample_substitution(const ApproxCtx& ctx, Rng& rng, int trial, const SampleConfig& cfg) {
  Substitution s;
  EvalConfig ec = cfg.eval;
  for (const auto& entry : ctx.entries()) {
    if (const auto* t = std::get_if<TyTriple>(&entry)) {
      ApproxTy g = trial % 2 == 0 ? fl_family() : nat_family();
      s.families.emplace_back(t->xe, g);
      auto z = evaluate(EvalMode::Error, fam_zero(g), nullptr, ec);
      auto p = evaluate(EvalMode::Error, fam_plus(g), nullptr, ec);
      s.err = env_extend(env_extend(s.err, t->zero, must(z, "zero")), t->plus, must(p, "plus"));
      s.shown.push_back(t->xe + ":=" + fam_str(g));
      continue;
    }
    const auto* v = std::get_if<ValTriple>(&entry);
    if (!v) continue;
    ValuePtr ve, va, vq;
    if (v->fix && v->fix->ready) {
      auto e = evaluate(EvalMode::Exact, fix(v->fix->exact), s.exact, ec);
      auto a = evaluate(EvalMode::Approx, fix(v->fix->approx), s.approx, ec);
      auto q = evaluate(EvalMode::Error, fix(app(v->fix->err, fix(v->fix->exact))), s.err, ec);
      if (!e || !a || !q) return std::nullopt;
      ve = *e;
      va = *a;
      vq = *q;
      s.shown.push_back(v->xe + ":=fix");
    } else {
      auto m = sample_member(close_family(v->family, s), rng, cfg);
      if (!m) return std::nullopt;
      MemberVals mv = eval_member(m->e, m->a, m->q, ec);
      ve = mv.e;
      va = mv.a;
      vq = mv.q;
      s.shown.push_back(v->xe + "=" + show_member(*m));
    }
    s.exact = env_extend(s.exact, v->xe, ve);
    s.approx = env_extend(s.approx, v->xa, va);
    s.err = env_extend(env_extend(s.err, v->xe, ve), v->xq, vq);
  }
  return s;
}

Verdict appr_member_in(const ApproxCtx& ctx, const ApproxTy& f, const Expr& q, const Expr& a, const Expr& e,
                       const SampleConfig& cfg) {
  expect_type(ctx.exact_ctx(), e, exact_type(f), "exact program");
  expect_type(ctx.approx_ctx(), a, approx_type(f), "approximate program");
  expect_type(ctx.error_ctx(), q, err_type(f), "error expression");
  bool ground = ctx.empty() && fam_scalar(f);
  return run_trials(cfg, ground, [&](Trial& t) -> Out {
    Substitution sub;
    if (!ctx.empty()) {
      auto s = sample_substitution(ctx, t.rng, t.index, cfg);
      if (!s) return inconclusive("no satisfying substitution sampled");
      sub = std::move(*s);
      t.inputs = sub.shown;
    }
    ApproxTy g = close_family(f, sub);
    auto vq = evaluate(EvalMode::Error, q, sub.err, t.ec);
    if (!vq) return pass_out();
    auto ve = evaluate(EvalMode::Exact, e, sub.exact, t.ec);
    auto va = evaluate(EvalMode::Approx, a, sub.approx, t.ec);
    return member_check(g, ve, va, vq, t);
  });
}

Verdict appr_member(const ApproxTy& f, const Expr& q, const Expr& a, const Expr& e, const SampleConfig& cfg) {
  return appr_member_in(ApproxCtx{}, f, q, a, e, cfg);
}

Verdict check_probes(const ApproxCtx& ctx, const SampleConfig& cfg, const ProbeFn& fn) {
  return run_trials(cfg, false, [&](Trial& t) -> Out {
    Substitution sub;
    if (!ctx.empty()) {
      auto s = sample_substitution(ctx, t.rng, t.index, cfg);
      if (!s) return inconclusive("no satisfying substitution sampled");
      sub = std::move(*s);
      t.inputs = sub.shown;
    }
    Out worst = pass_out();
    for (const Probe& p : fn(sub, t.ec, t.rng)) {
      ApproxTy g = close_family(p.family, sub);
      Out o;
      switch (p.kind) {
        case ProbeKind::Member: o = member_check(g, p.x, p.y, p.q, t); break;
        case ProbeKind::Aeq: o = aeq_values(g, p.q, p.x, p.y, t); break;
        case ProbeKind::Leq: o = leq_values(g, p.x, p.y, t); break;
      }
      if (o.k == K::Fail || o.k == K::Inconclusive) return o;
      if (o.k != K::Pass) worst = o;
    }
    return worst;
  });
}

Verdict aeq_check(const ApproxTy& f, const Expr& q, const Expr& e1, const Expr& e2, const SampleConfig& cfg) {
  expect_type({}, e1, exact_type(f), "first program");
  expect_type({}, e2, exact_type(f), "second program");
  expect_type({}, q, err_type(f), "error expression");
  return run_trials(cfg, fam_scalar(f), [&](Trial& t) -> Out {
    auto vq = evaluate(EvalMode::Error, q, nullptr, t.ec);
    if (!vq) return pass_out();
    auto v1 = evaluate(EvalMode::Exact, e1, nullptr, t.ec);
    auto v2 = evaluate(EvalMode::Exact, e2, nullptr, t.ec);
    return aeq_values(f, vq, v1, v2, t);
  });
}

// ------------------------------
// axioms
// ------------------------------

AxiomReport check_approx_axioms(const ApproxTy& f, const SampleConfig& cfg) {
  AxiomReport rep;
  rep.subject = fam_str(f);
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;

  auto ev = [](EvalMode m, const Expr& x, const EvalConfig& ec) { return evaluate(m, x, nullptr, ec); };
  auto pair = [&](Trial& t) {
    auto p = sample_pair(f, t.rng, cfg, 0);
    if (!p) throw Error("cannot construct members of " + fam_str(f));
    return *p;
  };
  auto member = [&](Trial& t, const Expr& q, const Expr& a, const Expr& e) {
    return member_check(f, ev(EvalMode::Exact, e, t.ec), ev(EvalMode::Approx, a, t.ec), ev(EvalMode::Error, q, t.ec), t);
  };
  auto aeq = [&](Trial& t, const Expr& q, const Expr& e1, const Expr& e2) {
    return aeq_values(f, ev(EvalMode::Error, q, t.ec), ev(EvalMode::Exact, e1, t.ec), ev(EvalMode::Exact, e2, t.ec), t);
  };
  auto delta = [&](Trial& t) {
    Rational d = small_shift(t.rng);
    return f->kind == FamKind::Nat || (!fam_scalar(f) && f->body->kind == FamKind::Nat) ? abs_of(d) : d;
  };
  auto shifted = [&](const Expr& e, const Rational& d) { return shift(f, e, d); };
  auto dist = [&](const Rational& d) { return fam_const(f, shift_size(f, d)); };
  auto note = [](Trial& t, const std::initializer_list<Expr>& xs) {
    for (const auto& x : xs) t.inputs.push_back(print(x));
  };

  std::vector<std::pair<std::string, Attempt>> clauses;
  clauses.emplace_back("error-weakening", [&](Trial& t) {
    PairExpr p = pair(t);
    Expr q2 = fam_add(f, p.q, fam_const(f, sample_bound(t.rng)));
    note(t, {p.e1, p.a, q2});
    return member(t, q2, p.a, p.e1);
  });
  clauses.emplace_back("error-addition", [&](Trial& t) {
    PairExpr p = pair(t);
    Rational d = delta(t);
    Expr e2 = shifted(p.e1, d);
    Expr q2 = fam_add(f, p.q, dist(d));
    note(t, {e2, p.a, q2});
    return member(t, q2, p.a, e2);
  });
  clauses.emplace_back("equivalence", [&](Trial& t) {
    PairExpr p = pair(t);
    auto id = [](const Ty& ty, const Expr& x) { return app(lam("w", ty, var("w")), x); };
    Expr e2 = id(exact_type(f), p.e1);
    Expr a2 = id(approx_type(f), p.a);
    Expr q2 = fam_add(f, id(err_type(f), p.q), fam_zero(f));
    note(t, {e2, a2, q2});
    return member(t, q2, a2, e2);
  });
  clauses.emplace_back("approximate-equality", [&](Trial& t) {
    PairExpr p = pair(t);
    Expr qq = fam_add(f, p.q, p.q);
    note(t, {p.e1, p.e2, qq});
    return aeq(t, qq, p.e1, p.e2);
  });
  clauses.emplace_back("upward-closedness", [&](Trial& t) {
    PairExpr p = pair(t);
    Rational d = delta(t);
    Expr q2 = fam_add(f, dist(d), fam_const(f, sample_bound(t.rng)));
    Expr e2 = shifted(p.e1, d);
    note(t, {p.e1, e2, q2});
    return aeq(t, q2, p.e1, e2);
  });
  clauses.emplace_back("reflexivity", [&](Trial& t) {
    PairExpr p = pair(t);
    note(t, {p.e1});
    return aeq(t, fam_zero(f), p.e1, p.e1);
  });
  clauses.emplace_back("symmetry", [&](Trial& t) {
    PairExpr p = pair(t);
    Rational d = delta(t);
    Expr e2 = shifted(p.e1, d);
    note(t, {p.e1, e2});
    Out o = aeq(t, dist(d), p.e1, e2);
    if (o.k != K::Pass) return o;
    return aeq(t, dist(d), e2, p.e1);
  });
  clauses.emplace_back("triangle", [&](Trial& t) {
    PairExpr p = pair(t);
    Rational d1 = delta(t), d2 = delta(t);
    Expr e2 = shifted(p.e1, d1);
    Expr e3 = shifted(e2, d2);
    Expr q = fam_add(f, dist(d1), dist(d2));
    note(t, {p.e1, e3, q});
    return aeq(t, q, p.e1, e3);
  });
  clauses.emplace_back("completeness", [&](Trial& t) {
    PairExpr p = pair(t);
    PairExpr r = pair(t);
    note(t, {p.e1, r.e2});
    return aeq(t, bottom(err_type(f)), p.e1, r.e2);
  });

  for (const auto& [name, fn] : clauses) {
    Verdict v = run_trials(cfg, false, fn);
    AxiomResult r;
    r.axiom = name;
    r.checked = v.trials;
    if (v.status == VStatus::Fail) {
      r.status = "fail";
      const Replay& w = v.failures.front();
      std::string in;
      for (const auto& s : w.inputs) in += (in.empty() ? "" : " ") + s;
      r.witness = "trial " + std::to_string(w.trial) + ": " + in + " distance " + w.distance + " > " + w.bound;
    } else if (v.status == VStatus::Inconclusive) {
      r.status = "inconclusive";
      r.witness = v.reason;
    } else {
      r.status = "pass-on-samples";
    }
    rep.results.push_back(r);
  }
  return rep;
}

}  // namespace approx
