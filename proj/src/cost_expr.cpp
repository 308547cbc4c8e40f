#include "trajcost/cost_expr.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "trajcost/errors.hpp"

namespace trajcost {

CostSpec::CostSpec(std::vector<CostTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw std::invalid_argument("cost spec needs at least one term");
  }
  for (const auto& term : terms_) {
    if (!std::isfinite(term.weight)) {
      throw std::invalid_argument("cost spec weights must be finite");
    }
  }
}

bool CostSpec::uses(CostId id) const {
  for (const auto& term : terms_) {
    if (term.id == id) return true;
  }
  return false;
}

CostSpec CostSpec::scaled(double c) const {
  std::vector<CostTerm> scaled_terms = terms_;
  for (auto& term : scaled_terms) term.weight *= c;
  return CostSpec(std::move(scaled_terms));
}

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  std::size_t pos() const { return pos_; }

  void expect(char c, const char* what) {
    skip_ws();
    if (done() || text_[pos_] != c) {
      throw ParseError("cost expression: expected '" + std::string(1, c) +
                           "' (" + what + ") at offset " + std::to_string(pos_),
                       pos_);
    }
    ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (!done() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  // Identifier: everything up to the next '|', with surrounding
  // whitespace trimmed. Identifiers contain no whitespace themselves.
  std::string read_identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '|' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == start) {
      throw ParseError(
          "cost expression: expected a partial-cost identifier at offset " +
              std::to_string(start),
          start);
    }
    return text_.substr(start, pos_ - start);
  }

  double read_weight() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t begin = pos_;
    if (begin < text_.size() && text_[begin] == '+') ++begin;  // from_chars rejects '+'
    double value = 0.0;
    const auto result = std::from_chars(text_.data() + begin,
                                        text_.data() + text_.size(), value);
    if (result.ec != std::errc{} || result.ptr == text_.data() + begin) {
      throw ParseError("cost expression: expected a weight at offset " +
                           std::to_string(start),
                       start);
    }
    if (!std::isfinite(value)) {
      throw ParseError("cost expression: weight at offset " +
                           std::to_string(start) + " is not finite",
                       start);
    }
    pos_ = result.ptr - text_.data();
    return value;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

CostSpec parse_cost_expr(const std::string& text) {
  Cursor cur(text);
  cur.expect('[', "opening bracket");
  std::vector<CostTerm> terms;
  if (cur.consume(']')) {
    throw ParseError("cost expression: empty term list", cur.pos());
  }
  do {
    cur.expect('(', "term opening");
    const std::size_t id_pos = cur.pos();
    const std::string token = cur.read_identifier();
    const auto id = cost_id_from_token(token);
    if (!id) {
      throw ParseError("cost expression: unknown partial '" + token +
                           "' at offset " + std::to_string(id_pos),
                       id_pos);
    }
    cur.expect('|', "identifier/weight separator");
    const double weight = cur.read_weight();
    cur.expect(')', "term closing");
    terms.push_back({*id, weight});
  } while (cur.consume(','));
  cur.expect(']', "closing bracket");
  cur.skip_ws();
  if (!cur.done()) {
    throw ParseError("cost expression: trailing characters at offset " +
                         std::to_string(cur.pos()),
                     cur.pos());
  }
  return CostSpec(std::move(terms));
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string format_cost_expr(const CostSpec& spec) {
  std::string out = "[";
  bool first = true;
  for (const auto& term : spec.terms()) {
    if (!first) out += ',';
    first = false;
    out += '(';
    out += to_token(term.id);
    out += '|';
    out += format_double(term.weight);
    out += ')';
  }
  out += ']';
  return out;
}

CostBreakdown evaluate(const CostSpec& spec, const Trajectory& trajectory,
                       const EvaluationContext& ctx) {
  CostBreakdown breakdown;
  breakdown.terms.reserve(spec.size());
  for (const auto& term : spec.terms()) {
    TermEvaluation te;
    te.label = std::string(to_token(term.id));
    te.weight = term.weight;
    te.raw = evaluate_partial(term.id, trajectory, ctx);
    te.contribution = term.weight * te.raw;
    breakdown.total += te.contribution;
    breakdown.terms.push_back(std::move(te));
  }
  return breakdown;
}

std::vector<std::string> missing_context(const CostSpec& spec,
                                         const EvaluationContext& ctx) {
  std::vector<std::string> gaps;
  for (const auto& term : spec.terms()) {
    const std::string gap = context_gap(term.id, ctx);
    if (!gap.empty()) gaps.push_back(gap);
  }
  return gaps;
}

}  // namespace trajcost
