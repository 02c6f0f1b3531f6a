#include "approx/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <utility>

namespace approx {

// ------------------------------
// types
// ------------------------------

namespace {

Ty make_ty(TyKind kind, std::string name = {}, Ty dom = nullptr, Ty body = nullptr) {
  return std::make_shared<const TyNode>(TyNode{kind, std::move(name), std::move(dom), std::move(body)});
}

bool ty_equal_impl(const Ty& a, const Ty& b, std::vector<std::pair<std::string, std::string>>& binders) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TyKind::Arrow:
      return ty_equal_impl(a->dom, b->dom, binders) && ty_equal_impl(a->body, b->body, binders);
    case TyKind::Forall: {
      binders.emplace_back(a->name, b->name);
      bool eq = ty_equal_impl(a->body, b->body, binders);
      binders.pop_back();
      return eq;
    }
    case TyKind::Var:
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        if (it->first == a->name || it->second == b->name) return it->first == a->name && it->second == b->name;
      }
      return a->name == b->name;
    default:
      return true;
  }
}

void collect_free_tyvars(const Ty& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case TyKind::Arrow:
      collect_free_tyvars(t->dom, bound, out);
      collect_free_tyvars(t->body, bound, out);
      break;
    case TyKind::Forall:
      bound.push_back(t->name);
      collect_free_tyvars(t->body, bound, out);
      bound.pop_back();
      break;
    case TyKind::Var:
      if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) out.insert(t->name);
      break;
    default:
      break;
  }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string candidate = base + "'" + std::to_string(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

}  // namespace

Ty real_ty() { static const Ty t = make_ty(TyKind::Real); return t; }
Ty float_ty() { static const Ty t = make_ty(TyKind::Float64); return t; }
Ty nat_ty() { static const Ty t = make_ty(TyKind::Nat); return t; }
Ty bool_ty() { static const Ty t = make_ty(TyKind::Bool); return t; }
Ty unit_ty() { static const Ty t = make_ty(TyKind::Unit); return t; }
Ty err_ty() { static const Ty t = make_ty(TyKind::ErrReal); return t; }
Ty arrow(Ty dom, Ty cod) { return make_ty(TyKind::Arrow, {}, std::move(dom), std::move(cod)); }
Ty forall(std::string var, Ty body) { return make_ty(TyKind::Forall, std::move(var), nullptr, std::move(body)); }
Ty tyvar(std::string name) { return make_ty(TyKind::Var, std::move(name)); }

bool ty_equal(const Ty& a, const Ty& b) {
  std::vector<std::pair<std::string, std::string>> binders;
  return ty_equal_impl(a, b, binders);
}

std::set<std::string> free_tyvars(const Ty& t) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free_tyvars(t, bound, out);
  return out;
}

Ty subst_ty(const Ty& t, const std::string& var, const Ty& replacement) {
  switch (t->kind) {
    case TyKind::Var:
      return t->name == var ? replacement : t;
    case TyKind::Arrow:
      return arrow(subst_ty(t->dom, var, replacement), subst_ty(t->body, var, replacement));
    case TyKind::Forall: {
      if (t->name == var) return t;
      auto fv = free_tyvars(replacement);
      if (fv.contains(t->name)) {
        auto avoid = fv;
        avoid.merge(free_tyvars(t->body));
        avoid.insert(var);
        std::string renamed = fresh_name(t->name, avoid);
        Ty body = subst_ty(t->body, t->name, tyvar(renamed));
        return forall(renamed, subst_ty(body, var, replacement));
      }
      return forall(t->name, subst_ty(t->body, var, replacement));
    }
    default:
      return t;
  }
}

std::string print_ty(const Ty& t) {
  switch (t->kind) {
    case TyKind::Real: return "Real";
    case TyKind::Float64: return "Float64";
    case TyKind::Nat: return "Nat";
    case TyKind::Bool: return "Bool";
    case TyKind::Unit: return "Unit";
    case TyKind::ErrReal: return "ErrReal";
    case TyKind::Arrow: return "(-> " + print_ty(t->dom) + " " + print_ty(t->body) + ")";
    case TyKind::Forall: return "(forall " + t->name + " " + print_ty(t->body) + ")";
    case TyKind::Var: return t->name;
  }
  return "?";
}

// ------------------------------
// builtins
// ------------------------------

const std::vector<BuiltinInfo>& builtin_registry() {
  static const std::vector<BuiltinInfo> registry = [] {
    Ty R = real_ty(), F = float_ty(), N = nat_ty(), B = bool_ty(), Q = err_ty();
    return std::vector<BuiltinInfo>{
        // exact reals
        {"+r", {R, R}, R}, {"-r", {R, R}, R}, {"*r", {R, R}, R}, {"/r", {R, R}, R},
        {"sinr", {R}, R}, {"absr", {R}, Q}, {"dr", {R, R}, Q}, {"leqr", {R, R}, B},
        {"nat2real", {N}, R},
        // binary64
        {"+f", {F, F}, F}, {"-f", {F, F}, F}, {"*f", {F, F}, F}, {"/f", {F, F}, F},
        {"sinf", {F}, F}, {"leqf", {F, F}, B}, {"nat2float", {N}, F},
        // naturals
        {"+n", {N, N}, N}, {"-n", {N, N}, N}, {"*n", {N, N}, N}, {"dn", {N, N}, N},
        {"eqn", {N, N}, B}, {"leqn", {N, N}, B},
        {"floorK", {N, N}, N}, {"ceilK", {N, N}, N}, {"ceildivn", {N, N}, N},
        // error level
        {"+q", {Q, Q}, Q}, {"iszeroq", {Q}, B},
        {"+err", {R, Q, R, Q}, Q}, {"-err", {R, Q, R, Q}, Q},
        {"*err", {R, Q, R, Q}, Q}, {"/err", {R, Q, R, Q}, Q},
        {"sinerr", {R, Q}, Q}, {"leqerr", {R, Q, R, Q}, Q}, {"rnderr", {R, Q}, Q},
        {"n2rerr", {N, N}, Q}, {"+nq", {N, N, N, N}, N}, {"*nq", {N, N, N, N}, N},
        {"eqnerr", {N, N, N, N}, Q}, {"leqnerr", {N, N, N, N}, Q},
    };
  }();
  return registry;
}

const BuiltinInfo* find_builtin(std::string_view name) {
  static const auto index = [] {
    std::unordered_map<std::string, const BuiltinInfo*> m;
    for (const auto& b : builtin_registry()) m.emplace(b.name, &b);
    return m;
  }();
  auto it = index.find(std::string(name));
  return it == index.end() ? nullptr : it->second;
}

Ty builtin_type(const BuiltinInfo& info, std::size_t applied) {
  Ty t = info.result;
  for (std::size_t i = info.params.size(); i > applied; --i) t = arrow(info.params[i - 1], t);
  return t;
}

// ------------------------------
// expressions
// ------------------------------

namespace {

Expr make(ExprNode node) { return std::make_shared<const ExprNode>(std::move(node)); }

ExprNode node_of(ExprKind kind) {
  ExprNode n;
  n.kind = kind;
  return n;
}

}  // namespace

Expr var(std::string name) {
  auto n = node_of(ExprKind::Var);
  n.name = std::move(name);
  return make(std::move(n));
}

Expr lam(std::string binder, Ty annot, Expr body) {
  auto n = node_of(ExprKind::Lam);
  n.name = std::move(binder);
  n.ty = std::move(annot);
  n.kids = {std::move(body)};
  return make(std::move(n));
}

Expr app(Expr fn, Expr arg) {
  auto n = node_of(ExprKind::App);
  n.kids = {std::move(fn), std::move(arg)};
  return make(std::move(n));
}

Expr app(Expr fn, std::initializer_list<Expr> args) {
  Expr e = std::move(fn);
  for (const auto& a : args) e = app_fold(e, a);
  return e;
}

Expr tylam(std::string v, Expr body) {
  auto n = node_of(ExprKind::TyLam);
  n.name = std::move(v);
  n.kids = {std::move(body)};
  return make(std::move(n));
}

Expr tyapp(Expr e, Ty t) {
  auto n = node_of(ExprKind::TyApp);
  n.ty = std::move(t);
  n.kids = {std::move(e)};
  return make(std::move(n));
}

Expr fix(Expr e) {
  auto n = node_of(ExprKind::Fix);
  n.kids = {std::move(e)};
  return make(std::move(n));
}

Expr if_(Expr c, Expr t, Expr f) {
  auto n = node_of(ExprKind::If);
  n.kids = {std::move(c), std::move(t), std::move(f)};
  return make(std::move(n));
}

Expr real_lit(Rational r) {
  auto n = node_of(ExprKind::RealLit);
  r.canonicalize();
  n.rational = std::move(r);
  return make(std::move(n));
}

Expr nat_lit(std::uint64_t v) {
  auto n = node_of(ExprKind::NatLit);
  n.nat = v;
  return make(std::move(n));
}

Expr bool_lit(bool b) {
  auto n = node_of(ExprKind::BoolLit);
  n.boolean = b;
  return make(std::move(n));
}

Expr float_lit(double d) {
  auto n = node_of(ExprKind::FloatLit);
  n.flt = d;
  return make(std::move(n));
}

Expr err_lit(Rational r) {
  r.canonicalize();
  if (r < 0) throw Error("negative error literal " + r.get_str());
  auto n = node_of(ExprKind::ErrLit);
  n.rational = std::move(r);
  return make(std::move(n));
}

Expr err_inf() {
  auto n = node_of(ExprKind::ErrLit);
  n.infinite = true;
  return make(std::move(n));
}

Expr builtin(std::string_view op, std::vector<Expr> args) {
  const BuiltinInfo* info = find_builtin(op);
  if (!info) throw UnknownBuiltin(0, 0, std::string(op));
  if (args.size() > info->params.size()) throw Error("too many arguments to builtin " + std::string(op));
  auto n = node_of(ExprKind::Builtin);
  n.name = info->name;
  n.op = info;
  n.kids = std::move(args);
  return make(std::move(n));
}

Expr redseq(Expr combiner, Expr count, Expr generator) {
  auto n = node_of(ExprKind::RedSeq);
  n.kids = {std::move(combiner), std::move(count), std::move(generator)};
  return make(std::move(n));
}

Expr bottom(Ty t) {
  auto n = node_of(ExprKind::Bottom);
  n.ty = std::move(t);
  return make(std::move(n));
}

Expr app_fold(const Expr& fn, const Expr& arg) {
  if (fn->kind == ExprKind::Builtin && fn->kids.size() < fn->op->params.size()) {
    auto args = fn->kids;
    args.push_back(arg);
    return builtin(fn->name, std::move(args));
  }
  return app(fn, arg);
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->kids.size() != b->kids.size()) return false;
  switch (a->kind) {
    case ExprKind::Lam:
    case ExprKind::TyApp:
    case ExprKind::Bottom:
      if (!ty_equal(a->ty, b->ty)) return false;
      break;
    case ExprKind::RealLit:
      if (a->rational != b->rational) return false;
      break;
    case ExprKind::ErrLit:
      if (a->infinite != b->infinite || (!a->infinite && a->rational != b->rational)) return false;
      break;
    case ExprKind::NatLit:
      if (a->nat != b->nat) return false;
      break;
    case ExprKind::BoolLit:
      if (a->boolean != b->boolean) return false;
      break;
    case ExprKind::FloatLit:
      if (bits_of(a->flt) != bits_of(b->flt)) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    if (!expr_equal(a->kids[i], b->kids[i])) return false;
  }
  return true;
}

namespace {

void collect_free_vars(const Expr& e, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (e->kind) {
    case ExprKind::Var:
      if (std::find(bound.begin(), bound.end(), e->name) == bound.end()) out.insert(e->name);
      return;
    case ExprKind::Lam:
      bound.push_back(e->name);
      collect_free_vars(e->kids[0], bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& k : e->kids) collect_free_vars(k, bound, out);
  }
}

Expr with_kids(const Expr& e, std::vector<Expr> kids) {
  ExprNode n = *e;
  n.kids = std::move(kids);
  return make(std::move(n));
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free_vars(e, bound, out);
  return out;
}

Expr subst(const Expr& e, const std::string& name, const Expr& value) {
  switch (e->kind) {
    case ExprKind::Var:
      return e->name == name ? value : e;
    case ExprKind::Lam: {
      if (e->name == name) return e;
      auto fv = free_vars(value);
      if (fv.contains(e->name)) {
        auto avoid = fv;
        avoid.merge(free_vars(e->kids[0]));
        avoid.insert(name);
        std::string renamed = fresh_name(e->name, avoid);
        Expr body = subst(e->kids[0], e->name, var(renamed));
        return lam(renamed, e->ty, subst(body, name, value));
      }
      return lam(e->name, e->ty, subst(e->kids[0], name, value));
    }
    default: {
      if (e->kids.empty()) return e;
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(subst(k, name, value));
      return with_kids(e, std::move(kids));
    }
  }
}

Expr subst_ty_in(const Expr& e, const std::string& v, const Ty& t) {
  if (e->kind == ExprKind::TyLam && e->name == v) return e;
  if (e->kind == ExprKind::TyLam && free_tyvars(t).contains(e->name)) {
    std::set<std::string> avoid = free_tyvars(t);
    avoid.insert(v);
    std::string renamed = fresh_name(e->name, avoid);
    Expr body = subst_ty_in(e->kids[0], e->name, tyvar(renamed));
    return tylam(renamed, subst_ty_in(body, v, t));
  }
  ExprNode n = *e;
  if (n.ty) n.ty = subst_ty(n.ty, v, t);
  for (auto& k : n.kids) k = subst_ty_in(k, v, t);
  return make(std::move(n));
}

// ------------------------------
// lexer / parser
// ------------------------------

namespace {

struct Token {
  enum Kind { LParen, RParen, Atom, End } kind;
  std::string text;
  int line;
  int column;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    if (pos_ >= src_.size()) return {Token::End, "", line_, col_, pos_};
    Token tok{Token::Atom, "", line_, col_, pos_};
    char c = src_[pos_];
    if (c == '(' || c == ')') {
      tok.kind = c == '(' ? Token::LParen : Token::RParen;
      tok.text = std::string(1, c);
      advance();
      return tok;
    }
    while (pos_ < src_.size()) {
      char d = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      tok.text.push_back(d);
      advance();
    }
    return tok;
  }

  std::size_t offset() const { return pos_; }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_keyword(std::string_view s) {
  static const std::set<std::string, std::less<>> keywords = {
      "lam", "app", "tlam", "tyapp", "fix", "if", "redseq", "bottom", "true", "false", "forall", "->"};
  return keywords.contains(s);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { tok_ = lex_.next(); }

  Expr parse_program() {
    Expr e = parse_expr();
    expect_end();
    return e;
  }

  Ty parse_type_only() {
    Ty t = parse_type();
    expect_end();
    return t;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) { throw SyntaxError(t.line, t.column, msg); }

  void expect_end() {
    if (tok_.kind != Token::End) fail(tok_, "unexpected trailing input '" + tok_.text + "'");
  }

  Token take() {
    Token t = tok_;
    tok_ = lex_.next();
    return t;
  }

  Token expect_atom(const char* what) {
    if (tok_.kind != Token::Atom) fail(tok_, std::string("expected ") + what);
    return take();
  }

  void expect_rparen() {
    if (tok_.kind != Token::RParen) fail(tok_, tok_.kind == Token::End ? "unexpected end of input" : "expected ')'");
    take();
  }

  std::string expect_name(const char* what) {
    Token t = expect_atom(what);
    if (is_keyword(t.text) || find_builtin(t.text)) fail(t, std::string("expected ") + what + ", got '" + t.text + "'");
    return t.text;
  }

  Expr spanned(Expr e, std::size_t begin) {
    ExprNode n = *e;
    n.span = Span{begin, end_offset_};
    return make(std::move(n));
  }

  Expr parse_atom(const Token& t) {
    const std::string& s = t.text;
    if (s == "true" || s == "false") return bool_lit(s == "true");
    if (s.starts_with("#f")) {
      auto d = parse_double(std::string_view(s).substr(2));
      if (!d) fail(t, "malformed float literal '" + s + "'");
      return float_lit(*d);
    }
    if (s.starts_with("#q")) {
      std::string_view rest = std::string_view(s).substr(2);
      if (rest == "inf") return err_inf();
      auto r = parse_rational(rest);
      if (!r || *r < 0) fail(t, "malformed error literal '" + s + "'");
      return err_lit(*r);
    }
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      Integer n(s, 10);
      if (!mpz_fits_ulong_p(n.get_mpz_t())) fail(t, "natural literal out of range '" + s + "'");
      return nat_lit(static_cast<std::uint64_t>(n.get_ui()));
    }
    if (auto r = parse_rational(s)) return real_lit(*r);
    if (is_keyword(s)) fail(t, "unexpected keyword '" + s + "'");
    if (s.starts_with('#')) fail(t, "malformed literal '" + s + "'");
    if (find_builtin(s)) return builtin(s);
    return var(s);
  }

  Expr parse_expr() {
    std::size_t begin = tok_.offset;
    if (tok_.kind == Token::End) fail(tok_, "unexpected end of input");
    if (tok_.kind == Token::RParen) fail(tok_, "unexpected ')'");
    if (tok_.kind == Token::Atom) {
      Token t = take();
      end_offset_ = t.offset + t.text.size();
      return spanned(parse_atom(t), begin);
    }
    take();  // (
    if (tok_.kind != Token::Atom) fail(tok_, "expected a form name after '('");
    Token head = take();
    const std::string& h = head.text;
    Expr result;
    if (h == "lam") {
      if (tok_.kind != Token::LParen) fail(tok_, "expected '(' before binder");
      take();
      std::string binder = expect_name("binder name");
      Ty annot = parse_type();
      expect_rparen();
      Expr body = parse_expr();
      result = lam(binder, annot, body);
    } else if (h == "app") {
      Expr fn = parse_expr();
      Expr arg = parse_expr();
      result = app_fold(fn, arg);
      if (result->kind == ExprKind::Builtin && fn->kind == ExprKind::Builtin) {
        // folded into the builtin; keep the application span
      }
    } else if (h == "tlam") {
      std::string v = expect_name("type variable");
      result = tylam(v, parse_expr());
    } else if (h == "tyapp") {
      Expr e = parse_expr();
      result = tyapp(e, parse_type());
    } else if (h == "fix") {
      result = fix(parse_expr());
    } else if (h == "if") {
      Expr c = parse_expr();
      Expr t = parse_expr();
      Expr f = parse_expr();
      result = if_(c, t, f);
    } else if (h == "redseq") {
      Expr c = parse_expr();
      Expr n = parse_expr();
      Expr g = parse_expr();
      result = redseq(c, n, g);
    } else if (h == "bottom") {
      result = bottom(parse_type());
    } else if (const BuiltinInfo* info = find_builtin(h)) {
      std::vector<Expr> args;
      while (tok_.kind != Token::RParen && tok_.kind != Token::End) args.push_back(parse_expr());
      if (args.size() > info->params.size()) {
        fail(head, "builtin '" + h + "' takes " + std::to_string(info->params.size()) + " arguments, got " +
                       std::to_string(args.size()));
      }
      result = builtin(h, std::move(args));
    } else {
      throw UnknownBuiltin(head.line, head.column, h);
    }
    end_offset_ = tok_.offset + 1;
    expect_rparen();
    return spanned(result, begin);
  }

  Ty parse_type() {
    if (tok_.kind == Token::Atom) {
      Token t = take();
      const std::string& s = t.text;
      if (s == "Real") return real_ty();
      if (s == "Float64") return float_ty();
      if (s == "Nat") return nat_ty();
      if (s == "Bool") return bool_ty();
      if (s == "Unit") return unit_ty();
      if (s == "ErrReal") return err_ty();
      if (is_keyword(s) || find_builtin(s) || s.starts_with('#') || parse_rational(s)) fail(t, "expected a type, got '" + s + "'");
      return tyvar(s);
    }
    if (tok_.kind != Token::LParen) fail(tok_, "expected a type");
    take();
    Token head = expect_atom("'->' or 'forall'");
    Ty result;
    if (head.text == "->") {
      std::vector<Ty> parts;
      while (tok_.kind != Token::RParen && tok_.kind != Token::End) parts.push_back(parse_type());
      if (parts.size() < 2) fail(head, "'->' needs at least two types");
      result = parts.back();
      for (std::size_t i = parts.size() - 1; i > 0; --i) result = arrow(parts[i - 1], result);
    } else if (head.text == "forall") {
      std::string v = expect_name("type variable");
      result = forall(v, parse_type());
    } else {
      fail(head, "unknown type former '" + head.text + "'");
    }
    expect_rparen();
    return result;
  }

  Lexer lex_;
  Token tok_;
  std::size_t end_offset_ = 0;
};

void print_into(const Expr& e, std::string& out) {
  switch (e->kind) {
    case ExprKind::Var:
      out += e->name;
      return;
    case ExprKind::Lam:
      out += "(lam (" + e->name + " " + print_ty(e->ty) + ") ";
      print_into(e->kids[0], out);
      out += ")";
      return;
    case ExprKind::App:
      out += "(app ";
      print_into(e->kids[0], out);
      out += " ";
      print_into(e->kids[1], out);
      out += ")";
      return;
    case ExprKind::TyLam:
      out += "(tlam " + e->name + " ";
      print_into(e->kids[0], out);
      out += ")";
      return;
    case ExprKind::TyApp:
      out += "(tyapp ";
      print_into(e->kids[0], out);
      out += " " + print_ty(e->ty) + ")";
      return;
    case ExprKind::Fix:
      out += "(fix ";
      print_into(e->kids[0], out);
      out += ")";
      return;
    case ExprKind::If:
    case ExprKind::RedSeq:
      out += e->kind == ExprKind::If ? "(if" : "(redseq";
      for (const auto& k : e->kids) {
        out += " ";
        print_into(k, out);
      }
      out += ")";
      return;
    case ExprKind::RealLit:
      out += format_rational(e->rational);
      return;
    case ExprKind::NatLit:
      out += std::to_string(e->nat);
      return;
    case ExprKind::BoolLit:
      out += e->boolean ? "true" : "false";
      return;
    case ExprKind::FloatLit:
      out += "#f" + format_double(e->flt);
      return;
    case ExprKind::ErrLit:
      out += e->infinite ? "#qinf" : "#q" + format_rational(e->rational);
      return;
    case ExprKind::Builtin:
      if (e->kids.empty()) {
        out += e->name;
        return;
      }
      out += "(" + e->name;
      for (const auto& k : e->kids) {
        out += " ";
        print_into(k, out);
      }
      out += ")";
      return;
    case ExprKind::Bottom:
      out += "(bottom " + print_ty(e->ty) + ")";
      return;
  }
}

void collect_sites(const Expr& e, std::vector<const ExprNode*>& out) {
  if (e->kind == ExprKind::RedSeq) out.push_back(e.get());
  for (const auto& k : e->kids) collect_sites(k, out);
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_program(); }

Ty parse_type(std::string_view text) { return Parser(text).parse_type_only(); }

std::string print(const Expr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

std::vector<const ExprNode*> redseq_sites(const Expr& e) {
  std::vector<const ExprNode*> out;
  collect_sites(e, out);
  return out;
}

}  // namespace approx
