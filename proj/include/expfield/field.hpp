#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "expfield/groebner.hpp"
#include "expfield/poly.hpp"

namespace expfield {

// Fraction field of Q[generators]/I for a declared-prime ideal I. Equality is
// decided by normal forms modulo a grevlex Groebner basis of I.
class QuotientField {
 public:
  // Throws ResourceLimit if the Groebner computation exceeds its budget.
  QuotientField(std::vector<std::string> generators, std::vector<Poly> relations);

  const RingPtr& ring() const { return ring_; }
  const GroebnerBasis& basis() const { return gb_; }
  const std::vector<Poly>& relations() const { return relations_; }
  bool is_proper() const { return !gb_.is_unit(); }

  Poly normal_form(const Poly& p) const { return expfield::normal_form(p, gb_); }
  bool is_zero(const Poly& p) const { return ideal_member(p, gb_); }

  // A polynomial p with p * d = 1 modulo I, when one exists.
  std::optional<Poly> ring_inverse(const Poly& d) const;

 private:
  RingPtr ring_;
  std::vector<Poly> relations_;
  GroebnerBasis gb_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, std::optional<Poly>> inverse_cache_;
};

using FieldPtr = std::shared_ptr<const QuotientField>;

class FieldElement {
 public:
  FieldElement(FieldPtr field, Poly num);
  // Throws DivisionByZero when den is zero in the field.
  FieldElement(FieldPtr field, Poly num, Poly den);

  static FieldElement constant(FieldPtr field, const Rational& q);
  static FieldElement generator(FieldPtr field, std::size_t index);

  const FieldPtr& field() const { return field_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  // Constant value if the element is a rational number.
  std::optional<Rational> as_rational() const;

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement pow(long n) const;
  FieldElement scaled(const Rational& q) const;

  // Same element with the denominator removed when it is invertible in the
  // quotient ring (1/x becomes x/2 modulo x^2 - 2).
  FieldElement rationalized() const;

  bool operator==(const FieldElement& o) const;
  std::string to_string() const;

 private:
  void normalize();

  FieldPtr field_;
  Poly num_;
  Poly den_;
};

inline bool is_zero(const FieldElement& a) { return a.is_zero(); }
FieldElement inverse(const FieldElement& a);

// Field arithmetic with quotient rationalization, as exposed to users.
enum class FieldOp { Add, Sub, Mul, Div };
FieldElement fe_arith(const FieldElement& a, const FieldElement& b, FieldOp op);

}  // namespace expfield
