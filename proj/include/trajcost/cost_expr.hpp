#pragma once

#include <string>
#include <vector>

#include "trajcost/costs.hpp"

namespace trajcost {

struct CostTerm {
  CostId id;
  double weight;

  friend bool operator==(const CostTerm& a, const CostTerm& b) {
    return a.id == b.id && a.weight == b.weight;
  }
};

/// Parsed weighted list of partial-cost terms, the in-memory form of the
/// [(X1|w1),...,(XN|wN)] shorthand. Order is preserved, duplicates are
/// allowed and sum. Immutable after construction.
class CostSpec {
 public:
  /// Requires at least one term and finite weights (negative permitted).
  explicit CostSpec(std::vector<CostTerm> terms);

  const std::vector<CostTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool uses(CostId id) const;

  /// Returns a spec with every weight multiplied by c.
  CostSpec scaled(double c) const;

  friend bool operator==(const CostSpec& a, const CostSpec& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::vector<CostTerm> terms_;
};

/// Parses the shorthand notation "[(X1|w1),...,(XN|wN)]".
/// Whitespace-insensitive; identifiers are matched case-sensitively and
/// the curvature cost can be written "K" or as the Greek letter kappa.
/// Throws ParseError carrying the byte offset and a reason.
CostSpec parse_cost_expr(const std::string& text);

/// Canonical formatting: no spaces, weights printed with the shortest
/// round-trip decimal representation. parse(format(s)) == s.
std::string format_cost_expr(const CostSpec& spec);

/// One evaluated term of a composition.
struct TermEvaluation {
  std::string label;    // partial token (or extension label)
  double weight = 0.0;  // composition weight
  double raw = 0.0;     // unweighted partial value
  double contribution = 0.0;  // weight * raw
};

struct CostBreakdown {
  double total = 0.0;
  std::vector<TermEvaluation> terms;
};

/// Weighted superposition sum_i w_i * J_i with a per-term breakdown.
/// Missing-context errors propagate naming the offending term.
CostBreakdown evaluate(const CostSpec& spec, const Trajectory& trajectory,
                       const EvaluationContext& ctx);

/// Human-readable reasons the context cannot serve this spec (one entry
/// per unsatisfied term), empty when evaluation would succeed.
std::vector<std::string> missing_context(const CostSpec& spec,
                                         const EvaluationContext& ctx);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

}  // namespace trajcost
