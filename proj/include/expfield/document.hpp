#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "expfield/errors.hpp"
#include "expfield/exp_poly.hpp"
#include "expfield/presentation.hpp"

namespace expfield {

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

// Expression syntax tree. Numbers are nonnegative integer literals; p/q is a
// division node.
struct Expr {
  enum class Kind { Num, Id, Add, Sub, Mul, Div, Neg, Pow, Exp };
  Kind kind;
  Integer number;    // Num
  std::string name;  // Id
  std::vector<std::shared_ptr<const Expr>> args;

  bool operator==(const Expr& o) const;
};
using ExprPtr = std::shared_ptr<const Expr>;

std::string print_expr(const ExprPtr& e);

struct FieldDecl {
  std::string name;
  std::vector<std::string> gens;  // declared here (imported base generators excluded)
  std::optional<std::vector<std::string>> base_set;
  std::string base_name;
  std::vector<std::pair<std::string, std::string>> exps;
  std::vector<std::pair<ExprPtr, ExprPtr>> rels;
  std::optional<std::vector<std::string>> abasis;
  bool egg = false;

  bool operator==(const FieldDecl& o) const;
};

struct TupleDecl {
  std::string name;
  std::string field;
  std::vector<ExprPtr> entries;
  bool operator==(const TupleDecl& o) const;
};

struct CertificateDecl {
  std::string name;
  std::string field;
  std::vector<std::pair<std::string, ExprPtr>> equations;
  std::vector<ExprPtr> witness;
  std::vector<std::string> coeffs;
  bool operator==(const CertificateDecl& o) const;
};

struct ParseOptions {
  std::size_t max_exp_depth = 8;
};

// A parsed .efd document. Presentations are built on first use.
class Document {
 public:
  static Document parse(const std::string& text, const ParseOptions& options = {});
  static Document load(const std::string& path, const ParseOptions& options = {});

  const std::vector<FieldDecl>& fields() const { return fields_; }
  const std::vector<TupleDecl>& tuples() const { return tuples_; }
  const std::vector<CertificateDecl>& certificates() const { return certificates_; }

  const FieldDecl* find_field(const std::string& name) const;
  const TupleDecl* find_tuple(const std::string& name) const;
  const CertificateDecl* find_certificate(const std::string& name) const;

  // Throws InputError for unknown names.
  PresentationPtr presentation(const std::string& field) const;

  std::string print() const;
  bool operator==(const Document& o) const;

 private:
  enum class ItemKind { Field, Tuple, Certificate };
  std::vector<std::pair<ItemKind, std::size_t>> order_;
  std::vector<FieldDecl> fields_;
  std::vector<TupleDecl> tuples_;
  std::vector<CertificateDecl> certificates_;
  mutable std::map<std::string, PresentationPtr> built_;
};

// Standalone fragments, as used on the command line.
std::vector<ExprPtr> parse_expr_list(const std::string& text);  // "(e1, e2, ...)"
std::vector<std::string> parse_id_set(const std::string& text);  // "{a, b}"
std::vector<std::pair<std::string, ExprPtr>> parse_assignments(const std::string& text);  // "(x = 1, y = 0)"

// Evaluations of expressions. Relations must be polynomial; field elements
// may use division, integer powers and exp (through the presentation);
// exponential polynomials read X1, X2, ... as indeterminates and other
// identifiers as coefficient symbols.
Poly expr_to_poly(const ExprPtr& e, const RingPtr& ring);
FieldElement expr_to_element(const ExprPtr& e, const Presentation& p);
ExpPoly expr_to_exp_poly(const ExprPtr& e, const Presentation& p);

}  // namespace expfield
