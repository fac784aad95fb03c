#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "expfield/field.hpp"
#include "expfield/rational.hpp"

namespace expfield {

// Leaf variables of an exponential polynomial: coefficient symbols (named
// elements of a presented field) and indeterminates X_1, X_2, ... (by index).
struct ExpVar {
  enum class Kind { Symbol, Indeterminate };
  Kind kind;
  std::string name;   // Symbol only
  std::size_t index;  // Indeterminate only

  static ExpVar symbol(std::string name) { return {Kind::Symbol, std::move(name), 0}; }
  static ExpVar indeterminate(std::size_t index) { return {Kind::Indeterminate, {}, index}; }

  // Symbols sort before indeterminates.
  std::strong_ordering operator<=>(const ExpVar& o) const;
  bool operator==(const ExpVar& o) const = default;
};

struct EpNode;

// An element of the free exponential-polynomial ring, in canonical form
//   sum of  c * m * exp(u)
// with c rational, m a monomial in the leaves and u itself canonical (the
// zero exponent means no exp factor). exp(u) * exp(v) = exp(u + v) and
// exp(0) = 1 therefore hold by construction. Nodes are hash-consed, so two
// ExpPolys are equal iff their node pointers are equal.
class ExpPoly {
 public:
  ExpPoly();  // zero

  static ExpPoly constant(const Rational& q);
  static ExpPoly symbol(const std::string& name);
  static ExpPoly indeterminate(std::size_t index);

  ExpPoly operator+(const ExpPoly& o) const;
  ExpPoly operator-(const ExpPoly& o) const;
  ExpPoly operator-() const;
  ExpPoly operator*(const ExpPoly& o) const;
  ExpPoly pow(unsigned n) const;
  ExpPoly scaled(const Rational& q) const;

  bool is_zero() const;
  bool operator==(const ExpPoly& o) const { return node_ == o.node_; }
  // Structural total order, independent of allocation addresses.
  std::strong_ordering operator<=>(const ExpPoly& o) const;

  // Deepest nesting of exp.
  std::size_t exp_depth() const;
  // One past the largest indeterminate index used.
  std::size_t indeterminate_count() const;

  // Indeterminates print as names[i] when given, else X<i+1>.
  std::string to_string(const std::vector<std::string>& names = {}) const;

  const EpNode* node() const { return node_; }
  explicit ExpPoly(const EpNode* node) : node_(node) {}

 private:
  const EpNode* node_;
};

ExpPoly ep_add(const ExpPoly& f, const ExpPoly& g);
ExpPoly ep_mul(const ExpPoly& f, const ExpPoly& g);
ExpPoly ep_exp(const ExpPoly& f);

// Formal partial derivative in indeterminate `index`, with
// d exp(u) = exp(u) du. Symbols are constants.
ExpPoly ep_partial(const ExpPoly& f, std::size_t index);

// Replaces indeterminate i by values[i] (indices past the end stay put).
ExpPoly ep_substitute(const ExpPoly& f, const std::vector<ExpPoly>& values);

// Where an exponential polynomial can be evaluated: values for coefficient
// symbols and the (partial) exponential map of a presented field.
class EvaluationTarget {
 public:
  virtual ~EvaluationTarget() = default;
  virtual const FieldPtr& field() const = 0;
  // Throws InputError for unknown symbols.
  virtual FieldElement symbol_value(const std::string& name) const = 0;
  // Throws ExpUndefined outside the domain of exp.
  virtual FieldElement exp_value(const FieldElement& argument) const = 0;
};

FieldElement ep_eval(const ExpPoly& f, const std::vector<FieldElement>& point, const EvaluationTarget& target);

// A term of the canonical form, exposed for printers and tests.
struct EpTerm {
  Rational coeff;
  std::vector<std::pair<ExpVar, unsigned>> monomial;  // sorted, exponents > 0
  ExpPoly exponent;                                   // zero: no exp factor
};
const std::vector<EpTerm>& ep_terms(const ExpPoly& f);

}  // namespace expfield
