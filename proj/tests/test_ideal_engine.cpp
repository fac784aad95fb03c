#include <doctest.h>

#include <chrono>
#include <random>

#include "expfield/errors.hpp"
#include "expfield/field.hpp"
#include "expfield/groebner.hpp"
#include "ideal_cases.hpp"

using namespace expfield;

namespace {

struct Vars {
  RingPtr ring;
  std::vector<Poly> v;
};

Vars ring_of(std::vector<std::string> names) {
  Vars r{make_ring(names), {}};
  for (std::size_t i = 0; i < names.size(); ++i) r.v.push_back(Poly::variable(r.ring, i));
  return r;
}

Poly c(const RingPtr& ring, long num, long den = 1) { return Poly::constant(ring, make_rational(num, den)); }

Rational eval_at(const Poly& p, const std::vector<Rational>& point) {
  Rational sum(0);
  for (const auto& t : p.terms()) {
    Rational term = t.coeff;
    for (std::size_t v = 0; v < point.size(); ++v)
      for (Exponent e = 0; e < t.monomial[v]; ++e) term *= point[v];
    sum += term;
  }
  return sum;
}

Poly random_poly(std::mt19937& rng, const RingPtr& ring, int terms, int max_deg) {
  std::uniform_int_distribution<int> coeff(-5, 5), deg(0, max_deg);
  std::vector<Term> out;
  for (int i = 0; i < terms; ++i) {
    Monomial m(ring->size());
    for (std::size_t v = 0; v < ring->size(); ++v) m[v] = static_cast<Exponent>(deg(rng));
    out.push_back({m, Rational(coeff(rng))});
  }
  return Poly::from_terms(ring, out);
}

}  // namespace

TEST_CASE("buchberger examples") {
  auto [ring, v] = ring_of({"x"});
  const Poly f = v[0] * v[0] - c(ring, 2);
  const auto gb = buchberger(Ideal{ring, {f}});
  REQUIRE(gb.basis.size() == 1);
  CHECK(gb.basis[0] == f);

  auto r3 = ring_of({"x", "y", "z"});
  const auto& x = r3.v[0];
  const auto& y = r3.v[1];
  const auto& z = r3.v[2];
  const auto gb2 = buchberger(Ideal{r3.ring, {x - y, y - z}});
  REQUIRE(gb2.basis.size() == 2);
  CHECK(gb2.basis[0] == x - z);
  CHECK(gb2.basis[1] == y - z);

  const auto unit = buchberger(Ideal{r3.ring, {c(r3.ring, 1)}});
  CHECK(unit.is_unit());
}

TEST_CASE("ideal membership examples") {
  auto [ring, v] = ring_of({"x", "y", "z"});
  const auto& x = v[0];
  const auto& y = v[1];
  const auto& z = v[2];
  const Poly circle = x * x + y * y - c(ring, 1);
  CHECK(ideal_member(circle, buchberger(Ideal{ring, {circle}})));
  CHECK_FALSE(ideal_member(x, buchberger(Ideal{ring, {x * x - c(ring, 2)}})));
  CHECK(ideal_member(x - z, buchberger(Ideal{ring, {x - y, y - z}})));
}

TEST_CASE("krull dimension examples") {
  auto [ring, v] = ring_of({"x", "y"});
  const auto& x = v[0];
  const auto& y = v[1];
  CHECK(krull_dimension(buchberger(Ideal{ring, {}})) == 2);
  CHECK(krull_dimension(buchberger(Ideal{ring, {y * y - x * x * x}})) == 1);
  CHECK(krull_dimension(buchberger(Ideal{ring, {x, y}})) == 0);
  CHECK_THROWS_AS(krull_dimension(buchberger(Ideal{ring, {c(ring, 1)}})), InputError);
  for (std::size_t n = 0; n <= 5; ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    CHECK(krull_dimension(buchberger(Ideal{make_ring(names), {}})) == n);
  }
}

TEST_CASE("eliminate examples") {
  auto [ring, v] = ring_of({"x", "y"});
  const auto& x = v[0];
  const auto& y = v[1];
  const std::size_t keep_y[] = {1};
  CHECK(eliminate(Ideal{ring, {y - x * x}}, keep_y).generators.empty());
  CHECK(eliminate(Ideal{ring, {x - y}}, keep_y).generators.empty());
  const auto e = eliminate(Ideal{ring, {x * x - c(ring, 2), y - x}}, keep_y);
  REQUIRE(e.generators.size() == 1);
  CHECK(e.generators[0] == y * y - c(ring, 2));
}

TEST_CASE("normal form is idempotent and reduction traces reconstruct p") {
  std::mt19937 rng(99);
  auto [ring, v] = ring_of({"x", "y", "z"});
  for (int trial = 0; trial < 40; ++trial) {
    Ideal ideal{ring, {}};
    const int gens = 1 + static_cast<int>(rng() % 3);
    for (int g = 0; g < gens; ++g) ideal.generators.push_back(random_poly(rng, ring, 3, 2));
    const auto gb = buchberger(ideal);
    const Poly p = random_poly(rng, ring, 5, 3);
    const Poly nf = normal_form(p, gb);
    CHECK(normal_form(nf, gb) == nf);
    // A combination of the original generators is always a member.
    Poly combo(ring);
    for (const auto& g : ideal.generators) combo += g * random_poly(rng, ring, 2, 1);
    CHECK(ideal_member(combo, gb));
    // p - nf(p) lies in the ideal, so both reduce to the same remainder.
    CHECK(normal_form(p - nf, gb).is_zero());
  }
}

TEST_CASE("membership agrees with vanishing at a rational point") {
  // Ideals with a known common zero: a polynomial not vanishing there
  // cannot be a member.
  std::mt19937 rng(5);
  auto [ring, v] = ring_of({"x", "y", "z"});
  const std::vector<Rational> point{Rational(1), Rational(-2), make_rational(1, 3)};
  for (int trial = 0; trial < 40; ++trial) {
    Ideal ideal{ring, {}};
    for (int g = 0; g < 2; ++g) {
      Poly f = random_poly(rng, ring, 3, 2);
      ideal.generators.push_back(f - c(ring, 1) * Poly::constant(ring, eval_at(f, point)));
    }
    const auto gb = buchberger(ideal);
    CHECK_FALSE(gb.is_unit());
    const Poly p = random_poly(rng, ring, 3, 2);
    if (eval_at(p, point) != 0) CHECK_FALSE(ideal_member(p, gb));
  }
}

TEST_CASE("pair budget is a hard error") {
  auto [ring, v] = ring_of({"x", "y", "z"});
  const auto& x = v[0];
  const auto& y = v[1];
  const auto& z = v[2];
  // The twisted cubic: its generators need S-pair reductions.
  Ideal cubic{ring, {x * z - y * y, y - x * x, z - x * y}};
  Ideal cubic2{ring, {x * z - y * y, x * y - z, y * z - x * x * z}};
  CHECK_THROWS_AS(buchberger(cubic2, 0), ResourceLimit);
  CHECK_NOTHROW(buchberger(cubic2, 10000));
  CHECK(krull_dimension(buchberger(cubic)) == 1);
}

TEST_CASE("fraction field arithmetic") {
  auto field = std::make_shared<const QuotientField>(std::vector<std::string>{"x"},
                                                     std::vector<Poly>{});
  auto sqrt2 = std::make_shared<const QuotientField>(
      std::vector<std::string>{"x"},
      std::vector<Poly>{Poly::variable(make_ring({"x"}), 0).pow(2) - Poly::constant(make_ring({"x"}), 2)});
  const FieldElement x = FieldElement::generator(sqrt2, 0);
  const FieldElement one = FieldElement::constant(sqrt2, 1);
  const FieldElement zero = FieldElement::constant(sqrt2, 0);
  CHECK(fe_arith(x, zero, FieldOp::Add) == x);
  CHECK(fe_arith(x, x, FieldOp::Div) == one);
  const FieldElement inv = fe_arith(one, x, FieldOp::Div);
  CHECK(inv.den().is_constant());
  CHECK(inv.num() == Poly::variable(sqrt2->ring(), 0).scaled(make_rational(1, 2)));
  CHECK_THROWS_AS(fe_arith(one, x * x - FieldElement::constant(sqrt2, 2), FieldOp::Div), DivisionByZero);

  // In Q(t), 1/t has no polynomial representative and stays a fraction.
  const FieldElement t = FieldElement::generator(field, 0);
  const FieldElement inv_t = fe_arith(FieldElement::constant(field, 1), t, FieldOp::Div);
  CHECK_FALSE(inv_t.den().is_constant());
  CHECK(inv_t * t == FieldElement::constant(field, 1));
  CHECK(inv_t.den().lead().coeff == 1);
}

TEST_CASE("nonzero operands never yield a zero denominator in a prime quotient") {
  std::mt19937 rng(11);
  auto ring = make_ring({"a", "b"});
  const Poly a = Poly::variable(ring, 0), b = Poly::variable(ring, 1);
  auto field = std::make_shared<const QuotientField>(std::vector<std::string>{"a", "b"},
                                                     std::vector<Poly>{a * a + Poly::constant(ring, 1)});
  for (int trial = 0; trial < 60; ++trial) {
    const FieldElement p(field, random_poly(rng, ring, 3, 2), random_poly(rng, ring, 2, 1) + b);
    const FieldElement q(field, random_poly(rng, ring, 3, 2) + b);
    if (p.is_zero() || q.is_zero()) continue;
    for (auto op : {FieldOp::Add, FieldOp::Sub, FieldOp::Mul, FieldOp::Div}) {
      const FieldElement r = fe_arith(p, q, op);
      CHECK_FALSE(field->is_zero(r.den()));
    }
    CHECK((p / q) * q == p);
  }
}

TEST_CASE("twelve small ideals against hand oracles") {
  const auto [R, cases] = testing_support::twelve_ideals();
  REQUIRE(cases.size() == 12);
  for (const auto& cs : cases) {
    CAPTURE(cs.dim);
    const auto start = std::chrono::steady_clock::now();
    const auto gb = buchberger(Ideal{R, cs.gens});
    CHECK(krull_dimension(gb) == cs.dim);
    CHECK(testing_support::same_ideal(R, eliminate(gb, cs.keep).generators, cs.elim));
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(10));
  }
}
