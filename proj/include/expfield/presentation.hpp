#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "expfield/exp_poly.hpp"
#include "expfield/field.hpp"
#include "expfield/matrix.hpp"
#include "expfield/rational.hpp"

namespace expfield {

// exp(generators[arg]) = generators[value].
struct ExpPair {
  std::size_t arg;
  std::size_t value;
  bool operator==(const ExpPair&) const = default;
};

// Declared data of a finitely presented partial E-field.
struct PresentationData {
  std::string name;
  std::vector<std::string> generators;
  // Polynomials in the generators (any ring whose variables are `generators`).
  std::vector<Poly> relations;
  std::vector<ExpPair> exps;
  // Indices into exps forming the Q-basis of A(F); chosen greedily in
  // declaration order when absent.
  std::optional<std::vector<std::size_t>> basis;
  // Without a declared basis, the greedy choice starts from these (the basis
  // inherited from an imported base field).
  std::vector<std::size_t> basis_seed;
  // Generator indices of the base subfield.
  std::vector<std::size_t> base;
  // Name of the field the base was imported from (empty for `base {...}`).
  std::string base_name;
  bool egg = false;
};

// The subfield generated by some generators, the exponentials of the A-elements
// among them, and a Q-span of A-elements (with their exponentials). Spans are
// coordinate vectors over the presentation's total A-basis.
struct Subfield {
  std::vector<std::size_t> generators;
  std::vector<QVector> span;

  static Subfield empty() { return {}; }
};

struct ValidationCheck {
  std::string check;
  bool passed = true;
  std::string detail;
  std::string witness;  // offending polynomial, when there is one
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const;
};

class Presentation : public EvaluationTarget {
 public:
  // Builds the quotient field; throws ResourceLimit from the Groebner engine
  // and InputError for structurally malformed data (bad indices).
  explicit Presentation(PresentationData data);

  const std::string& name() const { return data_.name; }
  const PresentationData& data() const { return data_; }
  const std::vector<std::string>& generators() const { return data_.generators; }
  std::size_t generator_count() const { return data_.generators.size(); }
  const std::vector<ExpPair>& exps() const { return data_.exps; }
  const std::vector<std::size_t>& base_generators() const { return data_.base; }
  bool egg() const { return data_.egg; }
  const FieldPtr& field() const override { return field_; }

  // Generator index by name, or -1.
  std::ptrdiff_t generator_index(const std::string& name) const;
  FieldElement generator(std::size_t index) const { return FieldElement::generator(field_, index); }
  FieldElement constant(const Rational& q) const { return FieldElement::constant(field_, q); }
  bool is_base_generator(std::size_t g) const;

  // Indices into exps() of the total A-basis (base part included).
  const std::vector<std::size_t>& basis() const { return basis_; }
  std::size_t basis_size() const { return basis_.size(); }
  // Basis positions whose argument is a base generator.
  std::vector<std::size_t> base_basis_positions() const;
  // Coordinates of each exp argument over the basis (nullopt when an
  // argument lies outside the declared basis span).
  const std::vector<std::optional<QVector>>& exp_arg_coordinates() const { return arg_coords_; }

  // Coordinates of h over the A-basis, or nullopt if h is not in A(F).
  std::optional<QVector> coordinates(const FieldElement& h) const;
  // As coordinates(), but throws ExpUndefined naming h.
  QVector a_coordinates(const FieldElement& h) const;
  FieldElement a_element(const QVector& coords) const;
  // exp of the A-element with the given coordinates: the product of basis
  // exponentials to integer powers, or one exp value times such a product.
  FieldElement exp_of(const QVector& coords) const;

  FieldElement symbol_value(const std::string& name) const override;
  FieldElement exp_value(const FieldElement& argument) const override;

  Subfield base_subfield() const { return Subfield{data_.base, {}}; }
  std::vector<FieldElement> subfield_elements(const Subfield& s) const;
  std::vector<QVector> subfield_a_part(const Subfield& s) const;

  // The base as a presentation of its own: base generators, the elimination
  // ideal, and the exp pairs and basis elements inside the base.
  std::shared_ptr<const Presentation> base_presentation() const;

  // With a named base field, also checks that the relations impose nothing
  // new on the base generators.
  ValidationReport validate(const Presentation* named_base = nullptr) const;

  // Transcendence degree over Q of the field generated by the elements, by
  // Jacobian rank; cached.
  std::size_t td_absolute(const std::vector<FieldElement>& elements) const;
  // The same number via the Krull dimension of an elimination ideal. Much
  // slower; kept as a cross-check.
  std::size_t td_by_elimination(const std::vector<FieldElement>& elements) const;

 private:
  const Matrix<FieldElement>& relation_jacobian() const;
  std::vector<Rational> nf_vector(const Poly& p, std::map<Monomial, std::size_t>& index) const;

  PresentationData data_;
  FieldPtr field_;
  std::vector<std::size_t> basis_;
  std::vector<std::optional<QVector>> arg_coords_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, std::size_t> td_cache_;
  mutable std::once_flag jacobian_once_;
  mutable Matrix<FieldElement> relation_jacobian_;
  mutable std::size_t relation_rank_ = 0;
  mutable std::shared_ptr<const Presentation> base_cache_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

}  // namespace expfield
