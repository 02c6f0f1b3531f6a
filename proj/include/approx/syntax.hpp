#pragma once

#include "approx/numeric.hpp"

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace approx {

// ------------------------------
// errors
// ------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& msg)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

class UnknownBuiltin : public Error {
 public:
  UnknownBuiltin(int line, int column, const std::string& op)
      : Error("unknown builtin '" + op + "' at " + std::to_string(line) + ":" + std::to_string(column)),
        op(op) {}
  std::string op;
};

// ------------------------------
// types
// ------------------------------

enum class TyKind { Real, Float64, Nat, Bool, Unit, ErrReal, Arrow, Forall, Var };

struct TyNode;
using Ty = std::shared_ptr<const TyNode>;

struct TyNode {
  TyKind kind;
  std::string name;  // Forall binder or Var name
  Ty dom;            // Arrow domain
  Ty body;           // Arrow codomain or Forall body
};

Ty real_ty();
Ty float_ty();
Ty nat_ty();
Ty bool_ty();
Ty unit_ty();
Ty err_ty();
Ty arrow(Ty dom, Ty cod);
Ty forall(std::string var, Ty body);
Ty tyvar(std::string name);

/// Structural equality up to renaming of Forall binders.
bool ty_equal(const Ty& a, const Ty& b);
/// Capture-avoiding substitution of `replacement` for free occurrences of `var`.
Ty subst_ty(const Ty& t, const std::string& var, const Ty& replacement);
std::set<std::string> free_tyvars(const Ty& t);
std::string print_ty(const Ty& t);

// ------------------------------
// builtins
// ------------------------------

struct BuiltinInfo {
  std::string name;
  std::vector<Ty> params;
  Ty result;
};

/// nullptr for names outside the registry.
const BuiltinInfo* find_builtin(std::string_view name);
const std::vector<BuiltinInfo>& builtin_registry();
/// Curried type of a builtin with `applied` arguments already supplied.
Ty builtin_type(const BuiltinInfo& info, std::size_t applied = 0);

// ------------------------------
// expressions
// ------------------------------

enum class ExprKind {
  Var, Lam, App, TyLam, TyApp, Fix, If,
  RealLit, NatLit, BoolLit, FloatLit, ErrLit,
  Builtin, RedSeq, Bottom
};

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

// One node type serves exact programs, approximate programs and error
// expressions. Children live in `kids`:
//   Lam: body | App: fn, arg | TyLam: body | TyApp: expr | Fix: expr
//   If: cond, then, else | Builtin: args | RedSeq: combiner, count, generator
struct ExprNode {
  ExprKind kind;
  std::string name;  // Var, Lam binder, TyLam variable, Builtin op
  Ty ty;             // Lam annotation, TyApp argument, Bottom type
  std::vector<Expr> kids;
  Rational rational;      // RealLit, ErrLit
  bool infinite = false;  // ErrLit
  std::uint64_t nat = 0;
  bool boolean = false;
  double flt = 0.0;
  const BuiltinInfo* op = nullptr;
  Span span;
};

Expr var(std::string name);
Expr lam(std::string binder, Ty annot, Expr body);
Expr app(Expr fn, Expr arg);
Expr app(Expr fn, std::initializer_list<Expr> args);
Expr tylam(std::string var, Expr body);
Expr tyapp(Expr e, Ty t);
Expr fix(Expr e);
Expr if_(Expr c, Expr t, Expr f);
Expr real_lit(Rational r);
Expr nat_lit(std::uint64_t n);
Expr bool_lit(bool b);
Expr float_lit(double d);
Expr err_lit(Rational r);
Expr err_inf();
Expr builtin(std::string_view op, std::vector<Expr> args = {});
Expr redseq(Expr combiner, Expr count, Expr generator);
Expr bottom(Ty t);

/// Applies `fn` to `arg`, folding into a partially applied builtin when possible.
Expr app_fold(const Expr& fn, const Expr& arg);

/// Structural equality; spans are ignored, float literals compare by bits.
bool expr_equal(const Expr& a, const Expr& b);
std::set<std::string> free_vars(const Expr& e);
/// Substitutes `value` for free occurrences of `name`; binders that would
/// capture free variables of `value` are renamed.
Expr subst(const Expr& e, const std::string& name, const Expr& value);
/// Substitutes a type for a free type variable throughout an expression.
Expr subst_ty_in(const Expr& e, const std::string& var, const Ty& t);

// ------------------------------
// surface syntax
// ------------------------------

Expr parse(std::string_view text);
Ty parse_type(std::string_view text);
std::string print(const Expr& e);

/// Perforation sites in pre-order: the i-th RedSeq node is labelled "L<i>".
std::vector<const ExprNode*> redseq_sites(const Expr& e);

}  // namespace approx
