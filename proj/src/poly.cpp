#include "expfield/poly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <optional>

namespace expfield {

Exponent Monomial::degree() const { return std::accumulate(exps_.begin(), exps_.end(), Exponent{0}); }

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) m.exps_[i] += other.exps_[i];
  return m;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial m = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) m.exps_[i] = std::max(m.exps_[i], other.exps_[i]);
  return m;
}

Monomial Monomial::quotient_of(const Monomial& numerator) const {
  Monomial m = numerator;
  for (std::size_t i = 0; i < exps_.size(); ++i) m.exps_[i] -= exps_[i];
  return m;
}

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) {
  std::vector<std::size_t> all(nvars);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return blocks({std::move(all)});
}

MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  std::vector<std::vector<std::size_t>> b;
  for (std::size_t i = 0; i < nvars; ++i) b.push_back({i});
  return blocks(std::move(b));
}

MonomialOrder MonomialOrder::elimination(std::size_t nvars, std::span<const std::size_t> first) {
  std::vector<bool> in_first(nvars, false);
  std::vector<std::size_t> head(first.begin(), first.end());
  std::sort(head.begin(), head.end());
  for (auto v : head) in_first[v] = true;
  std::vector<std::size_t> tail;
  for (std::size_t v = 0; v < nvars; ++v)
    if (!in_first[v]) tail.push_back(v);
  std::vector<std::vector<std::size_t>> b;
  if (!head.empty()) b.push_back(std::move(head));
  if (!tail.empty()) b.push_back(std::move(tail));
  return blocks(std::move(b));
}

MonomialOrder MonomialOrder::blocks(std::vector<std::vector<std::size_t>> blocks) {
  MonomialOrder o;
  o.blocks_ = std::move(blocks);
  return o;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  for (const auto& block : blocks_) {
    Exponent da = 0, db = 0;
    for (auto v : block) {
      da += a[v];
      db += b[v];
    }
    if (da != db) return da < db ? -1 : 1;
    for (auto it = block.rbegin(); it != block.rend(); ++it) {
      if (a[*it] != b[*it]) return a[*it] > b[*it] ? -1 : 1;
    }
  }
  return 0;
}

std::ptrdiff_t PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == name) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

RingPtr make_ring(std::vector<std::string> variables) {
  const auto n = variables.size();
  return make_ring(std::move(variables), MonomialOrder::grevlex(n));
}

RingPtr make_ring(std::vector<std::string> variables, MonomialOrder order) {
  return std::make_shared<const PolyRing>(PolyRing{std::move(variables), std::move(order)});
}

// ---------------------------------------------------------------------------

Poly Poly::constant(RingPtr ring, const Rational& c) {
  Poly p(ring);
  if (!expfield::is_zero(c)) p.terms_.push_back({Monomial(ring->size()), c});
  return p;
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  Poly p(ring);
  Monomial m(ring->size());
  m[index] = 1;
  p.terms_.push_back({std::move(m), Rational(1)});
  return p;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  const auto& order = ring->order;
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return order.compare(a.monomial, b.monomial) > 0; });
  Poly p(std::move(ring));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
      if (expfield::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
    } else if (!expfield::is_zero(t.coeff)) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Poly Poly::from_sorted(RingPtr ring, std::vector<Term> terms) {
  Poly p(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

Rational Poly::constant_coeff() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
  return Rational(0);
}

Exponent Poly::total_degree() const {
  Exponent d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

std::vector<std::size_t> Poly::support() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < ring_->size(); ++v) {
    for (const auto& t : terms_) {
      if (t.monomial[v] != 0) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

bool Poly::is_linear() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.monomial.degree() <= 1; });
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

Poly merge(const Poly& a, const Poly& b, bool subtract) {
  assert(a.ring() == b.ring() || *a.ring() == *b.ring());
  const auto& order = a.ring()->order;
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    int c;
    if (ia == ea)
      c = -1;
    else if (ib == eb)
      c = 1;
    else
      c = order.compare(ia->monomial, ib->monomial);
    if (c > 0) {
      out.push_back(*ia++);
    } else if (c < 0) {
      out.push_back({ib->monomial, subtract ? Rational(-ib->coeff) : ib->coeff});
      ++ib;
    } else {
      Rational s = subtract ? Rational(ia->coeff - ib->coeff) : Rational(ia->coeff + ib->coeff);
      if (!is_zero(s)) out.push_back({ia->monomial, std::move(s)});
      ++ia;
      ++ib;
    }
  }
  return Poly::from_sorted(a.ring(), std::move(out));
}

}  // namespace

Poly Poly::operator+(const Poly& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  return merge(*this, o, false);
}

Poly Poly::operator-(const Poly& o) const {
  if (o.is_zero()) return *this;
  return merge(*this, o, true);
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) out.push_back({a.monomial * b.monomial, a.coeff * b.coeff});
  return from_terms(ring_, std::move(out));
}

Poly Poly::scaled(const Rational& c) const {
  if (expfield::is_zero(c)) return Poly(ring_);
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Poly Poly::times_term(const Monomial& m, const Rational& c) const {
  if (expfield::is_zero(c)) return Poly(ring_);
  Poly p = *this;
  for (auto& t : p.terms_) {
    t.monomial = t.monomial * m;
    t.coeff *= c;
  }
  return p;
}

Poly Poly::pow(unsigned n) const {
  Poly result = constant(ring_, Rational(1));
  Poly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / lead().coeff);
}

Poly Poly::partial(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.monomial[var] == 0) continue;
    Term d = t;
    d.coeff *= t.monomial[var];
    d.monomial[var] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(ring_, std::move(out));
}

void Poly::drop_lead() { terms_.erase(terms_.begin()); }

Poly Poly::moved_to(const RingPtr& target, std::span<const std::size_t> var_map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->size());
    for (std::size_t v = 0; v < t.monomial.size(); ++v) m[var_map[v]] += t.monomial[v];
    out.push_back({std::move(m), t.coeff});
  }
  return from_terms(target, std::move(out));
}

Poly Poly::substitute(std::span<const Poly> values, const RingPtr& target) const {
  Poly result(target);
  for (const auto& t : terms_) {
    Poly term = constant(target, t.coeff);
    for (std::size_t v = 0; v < t.monomial.size(); ++v)
      if (t.monomial[v] != 0) term = term * values[v].pow(t.monomial[v]);
    result += term;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) return std::nullopt;
  Poly rest = *this;
  std::vector<Term> quotient;
  while (!rest.is_zero()) {
    const Term& lt = rest.lead();
    if (!d.lead().monomial.divides(lt.monomial)) return std::nullopt;
    Term q{d.lead().monomial.quotient_of(lt.monomial), lt.coeff / d.lead().coeff};
    rest -= d.times_term(q.monomial, q.coeff);
    quotient.push_back(std::move(q));
  }
  return from_terms(ring_, std::move(quotient));
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].monomial != o.terms_[i].monomial || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

std::string monomial_to_string(const Monomial& m, const PolyRing& ring) {
  std::string out;
  for (std::size_t v = 0; v < m.size(); ++v) {
    if (m[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.variables[v];
    if (m[v] > 1) out += '^' + std::to_string(m[v]);
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    const bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = monomial_to_string(t.monomial, *ring_);
    if (mono.empty()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace expfield
