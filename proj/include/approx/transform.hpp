#pragma once

#include "approx/approx_type.hpp"
#include "approx/membership.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace approx {

class NoRuleApplies : public Error {
 public:
  NoRuleApplies(const std::string& what, Span span)
      : Error("no rule applies to " + what + " at bytes " + std::to_string(span.begin) + "-" +
              std::to_string(span.end)) {}
};

class SideConditionFailed : public Error {
 public:
  SideConditionFailed(const std::string& description, const std::string& counterexample)
      : Error("side condition failed: " + description + ": " + counterexample) {}
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

struct CompileOpts {
  bool enable_sin_subst = false;
  std::map<std::string, std::uint64_t> perforation;  // site label -> K
  std::optional<Expr> weaken_to;
  std::optional<Rational> weaken_by;
  int sample_budget_for_side_conditions = 64;
  std::uint64_t seed = 42;
  EvalConfig eval;
};

struct SideCondition {
  std::string description;
  std::string method;  // "static", "construction" or "sampled"
  std::optional<Verdict> verdict;
};

struct Derivation {
  std::string rule;
  std::string site;
  Span span;
  std::string context;
  Expr exact, approx, err;
  ApproxTy family;
  std::vector<std::shared_ptr<SideCondition>> side_conditions;
  std::vector<Derivation> premises;

  Json to_json() const;
  /// Rule names used anywhere in the tree.
  void collect_rules(std::vector<std::string>& out) const;
};

struct CompileResult {
  Expr approx;
  Expr err;
  ApproxTy family;
  Derivation derivation;
};

CompileResult compile(const ApproxCtx& ctx, const Expr& e, const ApproxTy& target, const CompileOpts& opts);
/// Closed program: infers the family from the type of e.
CompileResult compile_program(const Expr& e, const CompileOpts& opts);

/// A-Weak on a finished result: the new error must dominate the old one.
CompileResult weaken(const CompileResult& r, const Expr& bigger, const CompileOpts& opts);

/// Labels L0, L1, ... of the redseq nodes in pre-order.
std::map<const ExprNode*, std::string> site_labels(const Expr& e);

}  // namespace approx
