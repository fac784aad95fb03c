#include <doctest.h>

#include <random>

#include "expfield/errors.hpp"
#include "expfield/exp_poly.hpp"

using namespace expfield;

namespace {

const ExpPoly X = ExpPoly::indeterminate(0);
const ExpPoly Y = ExpPoly::indeterminate(1);
ExpPoly q(long n, long d = 1) { return ExpPoly::constant(make_rational(n, d)); }

// Random exponential polynomial in X, Y and a symbol c, of nesting depth at
// most `depth`.
ExpPoly random_ep(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 4), coeff(-3, 3);
  switch (pick(rng)) {
    case 0:
      return X;
    case 1:
      return Y;
    case 2:
      return q(coeff(rng), 1 + static_cast<long>(rng() % 2));
    case 3:
      return ExpPoly::symbol("c");
    case 4:
      return X * Y + q(1);
    case 5:
      return random_ep(rng, depth - 1) * random_ep(rng, depth - 1) + random_ep(rng, depth - 1);
    default:
      return ep_exp(random_ep(rng, depth - 1));
  }
}

// Exponential polynomials over Q with exp total: evaluation at rationals is
// only defined for exp-free terms, so this target refuses exp entirely and
// serves the evaluation tests of exp-free polynomials.
class PolynomialTarget : public EvaluationTarget {
 public:
  PolynomialTarget()
      : field_(std::make_shared<const QuotientField>(std::vector<std::string>{"c", "e"}, std::vector<Poly>{})) {}
  const FieldPtr& field() const override { return field_; }
  FieldElement symbol_value(const std::string& name) const override {
    if (name == "c") return FieldElement::generator(field_, 0);
    throw InputError("unknown symbol " + name);
  }
  // exp is defined only at 0 and at c (with value e).
  FieldElement exp_value(const FieldElement& a) const override {
    if (a.is_zero()) return FieldElement::constant(field_, 1);
    if (a == FieldElement::generator(field_, 0)) return FieldElement::generator(field_, 1);
    throw ExpUndefined(a.to_string());
  }

 private:
  FieldPtr field_;
};

}  // namespace

TEST_CASE("canonical forms") {
  CHECK(ep_exp(ExpPoly()) == q(1));
  CHECK(ep_exp(X + Y) == ep_mul(ep_exp(X), ep_exp(Y)));
  CHECK(ep_mul(X, ep_exp(X)) + ep_mul(ep_exp(X), X) == q(2) * X * ep_exp(X));
  CHECK((X + Y) * (X - Y) == X * X - Y * Y);
  CHECK(ep_exp(X) * ep_exp(-X) == q(1));
  CHECK(ep_exp(q(1, 2)) != q(1));  // exp of a constant stays symbolic
  CHECK(ep_exp(q(1)) * ep_exp(q(1)) == ep_exp(q(2)));
}

TEST_CASE("printing") {
  CHECK((q(2) * X * ep_exp(X)).to_string() == "2*X1*exp(X1)");
  CHECK((X - q(1, 2)).to_string() == "-1/2 + X1");
  CHECK((ExpPoly::symbol("r") * Y * Y).to_string({"s", "t"}) == "r*t^2");
  CHECK(ep_exp(ep_exp(X)).exp_depth() == 2);
  CHECK((X * Y).indeterminate_count() == 2);
}

TEST_CASE("partial derivatives") {
  CHECK(ep_partial(ep_exp(X), 0) == ep_exp(X));
  const ExpPoly f = X * ep_exp(X * X);
  CHECK(ep_partial(f, 0) == ep_exp(X * X) + q(2) * X * X * ep_exp(X * X));
  CHECK(ep_partial(ep_exp(X), 1).is_zero());
  CHECK(ep_partial(ExpPoly::symbol("c") * X, 0) == ExpPoly::symbol("c"));
  CHECK(ep_partial(ep_exp(ep_exp(X)), 0) == ep_exp(X + ep_exp(X)));
}

TEST_CASE("sum and product rules on random exponential polynomials") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 150; ++trial) {
    const ExpPoly f = random_ep(rng, 3);
    const ExpPoly g = random_ep(rng, 3);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(ep_partial(f + g, i) == ep_partial(f, i) + ep_partial(g, i));
      CHECK(ep_partial(f * g, i) == f * ep_partial(g, i) + g * ep_partial(f, i));
    }
    CHECK(ep_exp(f) * ep_exp(g) == ep_exp(f + g));
    CHECK(f + g == g + f);
    CHECK(f * g == g * f);
    CHECK(((f <=> g) == 0) == (f == g));
  }
}

TEST_CASE("chain rule along a polynomial path") {
  // For X = p(T), Y = r(T) with T = X1 after substitution:
  // d/dT f(p, r) = f_X(p, r) p' + f_Y(p, r) r'.
  std::mt19937 rng(4242);
  const ExpPoly T = ExpPoly::indeterminate(0);
  const ExpPoly p = T * T + q(1);
  const ExpPoly r = q(3) * T - q(1, 2);
  for (int trial = 0; trial < 60; ++trial) {
    const ExpPoly f = random_ep(rng, 2);
    const ExpPoly lhs = ep_partial(ep_substitute(f, {p, r}), 0);
    const ExpPoly rhs = ep_substitute(ep_partial(f, 0), {p, r}) * ep_partial(p, 0) +
                        ep_substitute(ep_partial(f, 1), {p, r}) * ep_partial(r, 0);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("evaluation") {
  PolynomialTarget target;
  const auto& field = target.field();
  const FieldElement two = FieldElement::constant(field, 2);
  const FieldElement c = FieldElement::generator(field, 0);
  const FieldElement e = FieldElement::generator(field, 1);
  CHECK(ep_eval(X, {c}, target) == c);
  CHECK(ep_eval(ep_exp(X) - ExpPoly::symbol("c"), {c}, target) == e - c);
  CHECK(ep_eval(ep_exp(X - ExpPoly::symbol("c")), {c}, target) == FieldElement::constant(field, 1));
  CHECK_THROWS_AS(ep_eval(ep_exp(X), {two}, target), ExpUndefined);
  CHECK_THROWS_AS(ep_eval(ExpPoly::symbol("zz"), {}, target), InputError);

  std::mt19937 rng(8);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const ExpPoly f = q(coeff(rng)) * X * X + ExpPoly::symbol("c") * Y + q(coeff(rng));
    const ExpPoly g = X - q(coeff(rng)) * Y * ExpPoly::symbol("c");
    const std::vector<FieldElement> point{FieldElement::constant(field, coeff(rng)), c + two};
    CHECK(ep_eval(f * g, point, target) == ep_eval(f, point, target) * ep_eval(g, point, target));
    CHECK(ep_eval(f + g, point, target) == ep_eval(f, point, target) + ep_eval(g, point, target));
  }
}
