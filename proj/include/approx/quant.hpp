#pragma once

#include "approx/evaluator.hpp"
#include "approx/rng.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace approx {

using Json = nlohmann::ordered_json;

/// A quantification type: carrier ErrReal (exact checks) or a pointwise
/// lifting dom_1 -> ... -> dom_n -> ErrReal (sampled checks). Elements are
/// closed error expressions.
struct QuantInstance {
  std::string name;
  std::vector<Ty> domain;  // empty for the scalar instance
  Expr zero;
  std::function<Expr(const Expr&, const Expr&)> plus;
  std::function<Expr(Rng&)> sample;

  Ty carrier() const;
  bool scalar() const { return domain.empty(); }
};

QuantInstance q_reals();
/// Pointwise lifting of q_reals over the given argument types.
QuantInstance q_lifted(std::vector<Ty> domain);

enum class QStatus { Yes, No, YesOnSamples };

struct QVerdict {
  QStatus status = QStatus::Yes;
  std::string witness;  // surface syntax of the refuting input
};

QVerdict q_leq(const QuantInstance& inst, const Expr& q1, const Expr& q2, int trials, std::uint64_t seed,
               const EvalConfig& cfg = {});
Expr q_plus(const QuantInstance& inst, const Expr& q1, const Expr& q2);

struct AxiomResult {
  std::string axiom;
  std::string status;  // "pass", "pass-on-samples", "fail", "inconclusive"
  std::string witness;
  int checked = 0;
};

struct AxiomReport {
  std::string subject;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<AxiomResult> results;

  bool ok() const;
  Json to_json() const;
};

AxiomReport check_quant_axioms(const QuantInstance& inst, int trials, std::uint64_t seed,
                               const EvalConfig& cfg = {});

/// Random element of Q_R as an exact rational or infinity.
Expr sample_err_literal(Rng& rng);
/// Random exact real literal.
Expr sample_real_literal(Rng& rng);
/// Random value of a first-order type, used as a probe input.
Expr sample_probe(const Ty& t, Rng& rng);

}  // namespace approx
