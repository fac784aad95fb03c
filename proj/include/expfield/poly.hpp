#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expfield/rational.hpp"

namespace expfield {

using Exponent = std::uint32_t;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

  std::size_t size() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<Exponent>& exponents() const { return exps_; }

  Exponent degree() const;
  bool is_one() const;
  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  // Requires divides(*this, numerator).
  Monomial quotient_of(const Monomial& numerator) const;

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<Exponent> exps_;
};

// A block order: blocks are compared in sequence, each by graded reverse
// lexicographic order on its own variables. A single block over all variables
// is grevlex; singleton blocks give lex.
class MonomialOrder {
 public:
  static MonomialOrder grevlex(std::size_t nvars);
  static MonomialOrder lex(std::size_t nvars);
  // Variables in `first` dominate the rest (an elimination order for them).
  static MonomialOrder elimination(std::size_t nvars, std::span<const std::size_t> first);
  static MonomialOrder blocks(std::vector<std::vector<std::size_t>> blocks);

  // <0, 0, >0 like strcmp.
  int compare(const Monomial& a, const Monomial& b) const;
  const std::vector<std::vector<std::size_t>>& block_list() const { return blocks_; }
  bool operator==(const MonomialOrder&) const = default;

 private:
  std::vector<std::vector<std::size_t>> blocks_;
};

struct PolyRing {
  std::vector<std::string> variables;
  MonomialOrder order;

  std::size_t size() const { return variables.size(); }
  std::ptrdiff_t index_of(std::string_view name) const;
  bool operator==(const PolyRing&) const = default;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::string> variables);
RingPtr make_ring(std::vector<std::string> variables, MonomialOrder order);

struct Term {
  Monomial monomial;
  Rational coeff;
};

// Multivariate polynomial over Q; terms are kept sorted in decreasing order
// under the ring's monomial order with no zero coefficients.
class Poly {
 public:
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr ring, const Rational& c);
  static Poly variable(RingPtr ring, std::size_t index);
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);
  // Terms already strictly decreasing with nonzero coefficients.
  static Poly from_sorted(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (zero if absent).
  Rational constant_coeff() const;
  const Term& lead() const { return terms_.front(); }
  Exponent total_degree() const;
  // Variable indices that occur in some term.
  std::vector<std::size_t> support() const;
  bool is_linear() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Rational& c) const;
  Poly times_term(const Monomial& m, const Rational& c) const;
  Poly pow(unsigned n) const;
  Poly monic() const;
  Poly partial(std::size_t var) const;
  // Removes the leading term.
  void drop_lead();

  // Maps variable i to variable var_map[i] of `target` (same coefficients).
  Poly moved_to(const RingPtr& target, std::span<const std::size_t> var_map) const;
  // Substitutes values[i] for variable i; all values share one ring.
  Poly substitute(std::span<const Poly> values, const RingPtr& target) const;

  // Exact polynomial division: returns q with *this == q * d, or an empty
  // optional when d does not divide.
  std::optional<Poly> divide_exact(const Poly& d) const;

  bool operator==(const Poly& o) const;
  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

std::string monomial_to_string(const Monomial& m, const PolyRing& ring);

}  // namespace expfield
