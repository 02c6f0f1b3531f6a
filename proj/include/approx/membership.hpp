#pragma once

#include "approx/approx_type.hpp"
#include "approx/evaluator.hpp"
#include "approx/quant.hpp"
#include "approx/rng.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace approx {

enum class VStatus { Pass, Fail, Inconclusive };
std::string to_string(VStatus s);

struct SampleConfig {
  int trials = 1000;
  std::uint64_t seed = 42;
  int first_trial = 0;  // replay starts here
  EvalConfig eval;
  /// Undecided comparisons are retried at doubled precision up to this.
  int max_precision_bits = 1024;
  /// Optional clamp |x| <= bound for sampled exact reals.
  std::optional<Rational> real_bound;
};

/// Everything needed to reproduce one failed trial.
struct Replay {
  std::uint64_t seed = 0;
  int trial = 0;
  int precision_bits = 0;
  std::vector<std::string> inputs;
  std::string exact, approx, bound, distance;
  Json to_json() const;
};

struct Verdict {
  VStatus status = VStatus::Pass;
  int trials = 0;
  int passes = 0;
  int inconclusive = 0;
  int slack_passes = 0;       // decided only up to the enclosure width
  int samples_evaluated = 0;  // distinct trials actually run
  std::string max_slack = "0";
  std::string reason;
  std::vector<Replay> failures;

  Json to_json() const;
};

/// A closed member triple e in appr(q, a).
struct MemberExpr {
  Expr e, a, q;
};

/// Constructs a member of a ground family; nullopt for polymorphic parts.
std::optional<MemberExpr> sample_member(const ApproxTy& f, Rng& rng, const SampleConfig& cfg);

/// Values for the variables of a context, satisfying its constraints.
struct Substitution {
  Env exact, approx, err;
  std::vector<std::string> shown;
  std::vector<std::pair<std::string, ApproxTy>> families;
};

std::optional<Substitution> sample_substitution(const ApproxCtx& ctx, Rng& rng, int trial, const SampleConfig& cfg);
ApproxTy close_family(const ApproxTy& f, const Substitution& s);

Verdict appr_member(const ApproxTy& f, const Expr& q, const Expr& a, const Expr& e, const SampleConfig& cfg);
/// Membership under every sampled substitution of ctx.
Verdict appr_member_in(const ApproxCtx& ctx, const ApproxTy& f, const Expr& q, const Expr& a, const Expr& e,
                       const SampleConfig& cfg);
Verdict aeq_check(const ApproxTy& f, const Expr& q, const Expr& e1, const Expr& e2, const SampleConfig& cfg);

enum class ProbeKind {
  Member,  // x in appr(q, y)
  Aeq,     // x and y within q
  Leq,     // x <= y as errors of the family
};

struct Probe {
  ProbeKind kind;
  ApproxTy family;
  std::optional<ValuePtr> x, y, q;
};

/// Builds the probes of one trial from a sampled substitution.
using ProbeFn = std::function<std::vector<Probe>(const Substitution&, const EvalConfig&, Rng&)>;

Verdict check_probes(const ApproxCtx& ctx, const SampleConfig& cfg, const ProbeFn& fn);

AxiomReport check_approx_axioms(const ApproxTy& f, const SampleConfig& cfg);

}  // namespace approx
