#include <doctest.h>

#include "expfield/document.hpp"
#include "support.hpp"

using namespace expfield;
using namespace testing_support;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    Document::parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << text);
  return ParseError("", 0, 0);
}

}  // namespace

TEST_CASE("minimal documents") {
  const auto doc = Document::parse("field F { gens x, ex; exp x = ex; }");
  const auto p = doc.presentation("F");
  CHECK(p->exps().size() == 1);
  CHECK(p->validate().ok());

  const auto rel = Document::parse("field G { gens x; rel x^2 + 1 = 0; }");
  CHECK(rel.fields().front().rels.size() == 1);
  CHECK(rel.presentation("G")->field()->basis().basis.size() == 1);
}

TEST_CASE("syntax errors carry positions") {
  auto e = parse_error("field F {\n  gens x, ex;\n  exp x = ;\n}");
  CHECK(e.line() == 3);
  CHECK(e.column() == 11);

  e = parse_error("field F { gens x; }\nfield F { gens y; }");
  CHECK(e.line() == 2);
  CHECK(std::string(e.what()).find("F") != std::string::npos);

  e = parse_error("field F { gens x; }\nfield G { gens x; rel y = 0; }");
  CHECK(e.line() == 2);
  CHECK(std::string(e.what()).find("unknown symbol y") != std::string::npos);

  e = parse_error("field F { gens x; rel exp(x) = 1; }");
  CHECK(e.line() == 1);

  e = parse_error("field F { base G; gens x; }");
  CHECK(e.line() == 1);

  e = parse_error("tuple t in H = (x);");
  CHECK(e.line() == 1);

  e = parse_error("field F { gens x, ex; exp x = ex; }\nkhovanskii k in F { f1 = X1; coeffs = {}; }");
  CHECK(e.line() == 2);
}

TEST_CASE("exp nesting depth is limited") {
  std::string e = "x";
  for (int i = 0; i < 9; ++i) e = "exp(" + e + ")";
  const std::string text = "field F { gens x, ex; exp x = ex; }\nkhovanskii k in F { f1 = " + e + "; witness = (x); coeffs = {}; }";
  CHECK_THROWS_AS(Document::parse(text), ParseError);
  CHECK_NOTHROW(Document::parse(text, ParseOptions{10}));
}

TEST_CASE("expression printing respects precedence") {
  const auto show = [](const std::string& s) { return print_expr(parse_expr_list("(" + s + ")").front()); };
  CHECK(show("a - (b - c)") == "a - (b - c)");
  CHECK(show("(a - b) - c") == "a - b - c");
  CHECK(show("a / (b * c)") == "a/(b*c)");
  CHECK(show("(a + b)^2") == "(a + b)^2");
  CHECK(show("-a^2") == "-a^2");
  CHECK(show("(-a)^2") == "(-a)^2");
  CHECK(show("exp(X1 + 1) * 2") == "exp(X1 + 1)*2");
  CHECK(show("2 ^ (3 ^ 2)") == show("2^(3^2)"));
}

TEST_CASE("round trip on the whole corpus") {
  const auto files = corpus_files();
  REQUIRE(files.size() >= 20);
  for (const auto& f : files) {
    CAPTURE(f);
    const auto doc = corpus(f);
    const auto printed = doc.print();
    const auto again = Document::parse(printed);
    CHECK(again == doc);
    CHECK(again.print() == printed);
  }
}

TEST_CASE("corpus size limits") {
  std::size_t certificates = 0;
  for (const auto& f : corpus_fields()) {
    CAPTURE(f.p->name());
    CHECK(f.p->generator_count() <= 8);
  }
  for (const auto& f : corpus_files()) certificates += corpus(f).certificates().size();
  CHECK(certificates >= 10);
}

TEST_CASE("named bases import generators and relations") {
  const auto doc = corpus("anchor.efd");
  const auto pa = doc.presentation("pa");
  CHECK(pa->generators() == std::vector<std::string>{"r", "s", "x", "E"});
  CHECK(pa->base_generators() == std::vector<std::size_t>{0, 1});
  CHECK(pa->data().base_name == "base_rs");
  CHECK(pa->validate(doc.presentation("base_rs").get()).ok());
}

TEST_CASE("command-line fragments") {
  CHECK(parse_id_set("{a, b}") == std::vector<std::string>{"a", "b"});
  CHECK(parse_id_set("{}").empty());
  const auto a = parse_assignments("(x = 1, y = 2/3)");
  REQUIRE(a.size() == 2);
  CHECK(a[1].first == "y");
  CHECK_THROWS_AS(parse_expr_list("(x,"), ParseError);

  const auto doc = corpus("free1.efd");
  const auto p = doc.presentation("free1");
  CHECK_THROWS_AS(expr_to_element(parse_expr_list("(1/(x - x))").front(), *p), DivisionByZero);
  CHECK(expr_to_element(parse_expr_list("(exp(2*x))").front(), *p) == gen(*p, "ex").pow(2));
  CHECK_THROWS_AS(expr_to_element(parse_expr_list("(exp(ex))").front(), *p), ExpUndefined);
}
