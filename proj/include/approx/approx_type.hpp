#pragma once

#include "approx/syntax.hpp"
#include "approx/typing.hpp"

#include <json.hpp>

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace approx {

enum class FamKind { Fl, Nat, Bool, Pi, PiTy, Var };

struct ApproxTyNode;
using ApproxTy = std::shared_ptr<const ApproxTyNode>;

/// Approximation family descriptor. Pi(dom, body) approximates functions,
/// PiTy(X, body) abstracts over a family bound to X, Var(X) refers to it.
struct ApproxTyNode {
  FamKind kind;
  std::string var;
  ApproxTy dom;
  ApproxTy body;
};

ApproxTy fl_family();
ApproxTy nat_family();
ApproxTy bool_family();
ApproxTy pi_family(ApproxTy dom, ApproxTy body);
ApproxTy poly_family(std::string var, ApproxTy body);
ApproxTy fam_var(std::string var);

// Names attached to a family variable X.
std::string err_tyvar(const std::string& x);    // X^q
std::string zero_name(const std::string& x);    // X^0
std::string plus_name(const std::string& x);    // X^+
std::string err_var(const std::string& x);      // x^q for value variables

Ty exact_type(const ApproxTy& f);
Ty approx_type(const ApproxTy& f);
Ty err_type(const ApproxTy& f);
Expr fam_zero(const ApproxTy& f);
Expr fam_plus(const ApproxTy& f);
/// Error that bounds every distance (infinity at each leaf).
Expr fam_top(const ApproxTy& f);
/// Constant error c at every scalar leaf; naturals round c up.
Expr fam_const(const ApproxTy& f, const Rational& c);
/// q1 +_F q2, folded for the scalar families.
Expr fam_add(const ApproxTy& f, const Expr& q1, const Expr& q2);

bool fam_equal(const ApproxTy& a, const ApproxTy& b);
/// No Pi or PiTy inside.
bool fam_scalar(const ApproxTy& f);
std::string fam_str(const ApproxTy& f);
nlohmann::ordered_json fam_json(const ApproxTy& f);

/// Family whose exact type is t: Real->Fl, Nat->Nat, Bool->Bool, arrows to
/// Pi, foralls to PiTy, type variables to family variables.
ApproxTy family_of(const Ty& t);
ApproxTy subst_family(const ApproxTy& body, const std::string& var, const ApproxTy& f);
ApproxTy instantiate_poly(const ApproxTy& poly, const ApproxTy& f);

// ------------------------------
// approximation contexts
// ------------------------------

/// Filled in once a fixed point has been compiled: the binder stands for
/// fix e, fix a and fix (q (fix e)).
struct FixBinding {
  Expr exact;
  Expr approx;
  Expr err;
  bool ready = false;
};

struct ValTriple {
  std::string xe, xa, xq;
  ApproxTy family;
  std::shared_ptr<FixBinding> fix;
};

struct TyTriple {
  std::string xe, xa, xq, zero, plus;
};

struct Constraint {
  std::string description;
  Expr prop;
};

using CtxEntry = std::variant<ValTriple, TyTriple, Constraint>;

class ApproxCtx {
 public:
  ApproxCtx with_value(const std::string& x, ApproxTy family, std::shared_ptr<FixBinding> fix = nullptr) const;
  ApproxCtx with_type(const std::string& x) const;
  ApproxCtx with_constraint(std::string description, Expr prop) const;

  const ValTriple* lookup(const std::string& x) const;
  const std::vector<CtxEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  TyCtx exact_ctx() const;
  TyCtx approx_ctx() const;
  /// Exact and error projections together, the context of error expressions.
  TyCtx error_ctx() const;
  std::string str() const;

 private:
  std::vector<CtxEntry> entries_;
};

}  // namespace approx
