#include "expfield/field.hpp"

#include <cassert>

#include "expfield/errors.hpp"

namespace expfield {

QuotientField::QuotientField(std::vector<std::string> generators, std::vector<Poly> relations)
    : ring_(make_ring(std::move(generators))) {
  std::vector<std::size_t> identity(ring_->size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  for (const auto& r : relations) relations_.push_back(r.ring() == ring_ ? r : r.moved_to(ring_, identity));
  gb_ = buchberger(Ideal{ring_, relations_});
}

std::optional<Poly> QuotientField::ring_inverse(const Poly& d) const {
  const std::string key = d.to_string();
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = inverse_cache_.find(key); it != inverse_cache_.end()) return it->second;
  }
  // Groebner basis of I + <t d - 1> with t eliminated first; a basis element
  // t - p exhibits p as the inverse.
  const std::size_t n = ring_->size();
  auto vars = ring_->variables;
  vars.push_back("%inv");
  const std::size_t t_index = n;
  const std::size_t first[] = {t_index};
  RingPtr big = make_ring(std::move(vars), MonomialOrder::elimination(n + 1, first));
  std::vector<std::size_t> embed(n);
  for (std::size_t i = 0; i < n; ++i) embed[i] = i;
  Ideal ideal{big, {}};
  for (const auto& g : gb_.basis) ideal.generators.push_back(g.moved_to(big, embed));
  ideal.generators.push_back(Poly::variable(big, t_index) * d.moved_to(big, embed) -
                             Poly::constant(big, Rational(1)));
  const GroebnerBasis gb = buchberger(ideal);
  std::optional<Poly> result;
  for (const auto& g : gb.basis) {
    const auto& m = g.lead().monomial;
    if (m[t_index] != 1 || m.degree() != 1) continue;
    bool linear_in_t = true;
    Poly rest(ring_);
    std::vector<Term> tail;
    for (std::size_t k = 1; k < g.terms().size(); ++k) {
      const auto& term = g.terms()[k];
      if (term.monomial[t_index] != 0) {
        linear_in_t = false;
        break;
      }
      std::vector<Exponent> e(term.monomial.exponents().begin(), term.monomial.exponents().end() - 1);
      tail.push_back({Monomial(std::move(e)), -term.coeff});
    }
    if (!linear_in_t) continue;
    result = normal_form(Poly::from_terms(ring_, std::move(tail)));
    break;
  }
  std::lock_guard lock(cache_mutex_);
  inverse_cache_.emplace(key, result);
  return result;
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, Poly num)
    : field_(std::move(field)), num_(field_->normal_form(num)), den_(Poly::constant(field_->ring(), Rational(1))) {}

FieldElement::FieldElement(FieldPtr field, Poly num, Poly den)
    : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

FieldElement FieldElement::constant(FieldPtr field, const Rational& q) {
  auto ring = field->ring();
  return FieldElement(std::move(field), Poly::constant(ring, q));
}

FieldElement FieldElement::generator(FieldPtr field, std::size_t index) {
  auto ring = field->ring();
  return FieldElement(std::move(field), Poly::variable(ring, index));
}

void FieldElement::normalize() {
  const auto& ring = field_->ring();
  num_ = field_->normal_form(num_);
  den_ = field_->normal_form(den_);
  if (den_.is_zero()) throw DivisionByZero();
  if (num_.is_zero()) {
    den_ = Poly::constant(ring, Rational(1));
    return;
  }
  if (den_.is_constant()) {
    num_ = num_.scaled(Rational(1) / den_.constant_coeff());
    den_ = Poly::constant(ring, Rational(1));
    return;
  }
  if (auto q = num_.divide_exact(den_)) {
    num_ = field_->normal_form(*q);
    den_ = Poly::constant(ring, Rational(1));
    return;
  }
  // Cancel the largest monomial dividing every term of both parts.
  Monomial common = den_.lead().monomial;
  auto meet = [&](const Poly& p) {
    for (const auto& t : p.terms())
      for (std::size_t v = 0; v < common.size(); ++v) common[v] = std::min(common[v], t.monomial[v]);
  };
  meet(num_);
  meet(den_);
  if (!common.is_one()) {
    auto divide = [&](const Poly& p) {
      std::vector<Term> out;
      for (const auto& t : p.terms()) out.push_back({common.quotient_of(t.monomial), t.coeff});
      return Poly::from_terms(ring, std::move(out));
    };
    num_ = divide(num_);
    den_ = divide(den_);
  }
  const Rational lc = den_.lead().coeff;
  if (lc != 1) {
    num_ = num_.scaled(Rational(1) / lc);
    den_ = den_.scaled(Rational(1) / lc);
  }
}

std::optional<Rational> FieldElement::as_rational() const {
  if (num_.is_constant() && den_.is_constant()) return num_.constant_coeff() / den_.constant_coeff();
  return std::nullopt;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.num_ = -r.num_;
  return r;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  assert(field_ == o.field_);
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_ == o.den_) return FieldElement(field_, num_ + o.num_, den_);
  return FieldElement(field_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  assert(field_ == o.field_);
  if (is_zero() || o.is_zero()) return constant(field_, Rational(0));
  return FieldElement(field_, num_ * o.num_, den_ * o.den_);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  assert(field_ == o.field_);
  if (o.is_zero()) throw DivisionByZero();
  return FieldElement(field_, num_ * o.den_, den_ * o.num_);
}

FieldElement FieldElement::pow(long n) const {
  if (n < 0) return inverse(*this).pow(-n);
  FieldElement result = constant(field_, Rational(1));
  FieldElement base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

FieldElement FieldElement::scaled(const Rational& q) const {
  if (expfield::is_zero(q)) return constant(field_, Rational(0));
  FieldElement r = *this;
  r.num_ = r.num_.scaled(q);
  return r;
}

FieldElement FieldElement::rationalized() const {
  if (den_.is_constant()) return *this;
  if (auto inv = field_->ring_inverse(den_)) return FieldElement(field_, num_ * *inv);
  return *this;
}

bool FieldElement::operator==(const FieldElement& o) const {
  assert(field_ == o.field_);
  if (den_ == o.den_) return field_->is_zero(num_ - o.num_);
  return field_->is_zero(num_ * o.den_ - o.num_ * den_);
}

std::string FieldElement::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  auto wrap = [](const Poly& p) {
    const std::string s = p.to_string();
    return p.size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

FieldElement inverse(const FieldElement& a) { return FieldElement::constant(a.field(), Rational(1)) / a; }

FieldElement fe_arith(const FieldElement& a, const FieldElement& b, FieldOp op) {
  switch (op) {
    case FieldOp::Add:
      return a + b;
    case FieldOp::Sub:
      return a - b;
    case FieldOp::Mul:
      return a * b;
    case FieldOp::Div:
      return (a / b).rationalized();
  }
  return a;
}

}  // namespace expfield
