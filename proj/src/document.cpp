#include "expfield/document.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace expfield {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Id, Num, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '#' || (ch == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, c = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
        ++j;
      out.push_back({Tok::Id, text.substr(i, j - i), l, c});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Num, text.substr(i, j - i), l, c});
      advance(j - i);
    } else if (std::string("{}(),;=+-*/^").find(ch) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, ch), l, c});
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

ExprPtr make(Expr::Kind kind, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->args = std::move(args);
  return e;
}

class Parser {
 public:
  Parser(const std::string& text, ParseOptions options) : tokens_(tokenize(text)), options_(options) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    throw ParseError(message + (t.kind == Tok::End ? " at end of input" : " at '" + t.text + "'"), t.line, t.column);
  }

  bool accept(const std::string& punct) {
    if (peek().kind == Tok::Punct && peek().text == punct) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& punct) {
    if (!accept(punct)) fail("expected '" + punct + "'");
  }
  bool accept_keyword(const std::string& word) {
    if (peek().kind == Tok::Id && peek().text == word) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_keyword(const std::string& word) {
    if (!accept_keyword(word)) fail("expected '" + word + "'");
  }
  std::string identifier() {
    if (peek().kind != Tok::Id) fail("expected an identifier");
    if (peek().text == "exp") fail("'exp' is reserved");
    return tokens_[pos_++].text;
  }

  std::vector<std::string> id_list(const std::string& close) {
    std::vector<std::string> out;
    if (accept(close)) return out;
    do out.push_back(identifier());
    while (accept(","));
    expect(close);
    return out;
  }

  std::vector<ExprPtr> expr_tuple() {
    expect("(");
    std::vector<ExprPtr> out;
    if (accept(")")) return out;
    do out.push_back(expr());
    while (accept(","));
    expect(")");
    return out;
  }

  ExprPtr expr() {
    ExprPtr left = term();
    while (true) {
      if (accept("+"))
        left = make(Expr::Kind::Add, {left, term()});
      else if (accept("-"))
        left = make(Expr::Kind::Sub, {left, term()});
      else
        return left;
    }
  }

  ExprPtr term() {
    ExprPtr left = unary();
    while (true) {
      if (accept("*"))
        left = make(Expr::Kind::Mul, {left, unary()});
      else if (accept("/"))
        left = make(Expr::Kind::Div, {left, unary()});
      else
        return left;
    }
  }

  ExprPtr unary() {
    if (accept("-")) return make(Expr::Kind::Neg, {unary()});
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (accept("^")) return make(Expr::Kind::Pow, {base, unary()});
    return base;
  }

  ExprPtr atom() {
    const Token& t = peek();
    if (t.kind == Tok::Num) {
      ++pos_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Num;
      e->number = Integer(t.text);
      return e;
    }
    if (t.kind == Tok::Id && t.text == "exp") {
      ++pos_;
      expect("(");
      if (++exp_depth_ > options_.max_exp_depth)
        throw ParseError("exp nesting deeper than " + std::to_string(options_.max_exp_depth), t.line, t.column);
      ExprPtr inner = expr();
      --exp_depth_;
      expect(")");
      return make(Expr::Kind::Exp, {inner});
    }
    if (t.kind == Tok::Id) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Id;
      e->name = identifier();
      return e;
    }
    if (accept("(")) {
      ExprPtr inner = expr();
      expect(")");
      return inner;
    }
    fail("expected an expression");
  }

  FieldDecl field() {
    FieldDecl f;
    f.name = identifier();
    expect("{");
    while (!accept("}")) {
      if (accept_keyword("gens")) {
        do f.gens.push_back(identifier());
        while (accept(","));
      } else if (accept_keyword("base")) {
        if (f.base_set || !f.base_name.empty()) fail("second base clause");
        if (accept("{"))
          f.base_set = id_list("}");
        else
          f.base_name = identifier();
      } else if (accept_keyword("exp")) {
        std::string a = identifier();
        expect("=");
        f.exps.emplace_back(std::move(a), identifier());
      } else if (accept_keyword("rel")) {
        ExprPtr lhs = expr();
        expect("=");
        f.rels.emplace_back(lhs, expr());
      } else if (accept_keyword("abasis")) {
        if (f.abasis) fail("second abasis clause");
        expect("{");
        f.abasis = id_list("}");
      } else if (accept_keyword("egg")) {
        f.egg = true;
      } else {
        fail("expected a field clause (gens, base, exp, rel, abasis, egg)");
      }
      expect(";");
    }
    return f;
  }

  TupleDecl tuple() {
    TupleDecl t;
    t.name = identifier();
    expect_keyword("in");
    t.field = identifier();
    expect("=");
    t.entries = expr_tuple();
    expect(";");
    return t;
  }

  CertificateDecl certificate() {
    CertificateDecl c;
    c.name = identifier();
    expect_keyword("in");
    c.field = identifier();
    expect("{");
    bool have_witness = false, have_coeffs = false;
    while (!accept("}")) {
      if (accept_keyword("witness")) {
        expect("=");
        c.witness = expr_tuple();
        have_witness = true;
      } else if (accept_keyword("coeffs")) {
        expect("=");
        expect("{");
        c.coeffs = id_list("}");
        have_coeffs = true;
      } else {
        std::string name = identifier();
        expect("=");
        c.equations.emplace_back(std::move(name), expr());
      }
      expect(";");
    }
    if (!have_witness) fail("certificate " + c.name + " lacks a witness clause");
    if (!have_coeffs) fail("certificate " + c.name + " lacks a coeffs clause");
    return c;
  }

  std::size_t pos_ = 0;

 private:
  std::vector<Token> tokens_;
  ParseOptions options_;
  std::size_t exp_depth_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string print_at(const ExprPtr& e, int min_prec) {
  std::string s = print_expr(e);
  return precedence(*e) < min_prec ? "(" + s + ")" : s;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string print_tuple(const std::vector<ExprPtr>& entries) {
  std::vector<std::string> parts;
  for (const auto& e : entries) parts.push_back(print_expr(e));
  return "(" + join(parts, ", ") + ")";
}

bool same_exprs(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(*a[i] == *b[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation

Rational constant_value(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Num:
      return Rational(e->number);
    case Expr::Kind::Neg:
      return -constant_value(e->args[0]);
    case Expr::Kind::Add:
      return constant_value(e->args[0]) + constant_value(e->args[1]);
    case Expr::Kind::Sub:
      return constant_value(e->args[0]) - constant_value(e->args[1]);
    case Expr::Kind::Mul:
      return constant_value(e->args[0]) * constant_value(e->args[1]);
    case Expr::Kind::Div: {
      const Rational d = constant_value(e->args[1]);
      if (is_zero(d)) throw InputError("division by zero in " + print_expr(e));
      return constant_value(e->args[0]) / d;
    }
    default:
      throw InputError("expected a rational constant, got " + print_expr(e));
  }
}

bool is_constant_expr(const ExprPtr& e) {
  if (e->kind == Expr::Kind::Num) return true;
  if (e->kind == Expr::Kind::Id || e->kind == Expr::Kind::Exp || e->kind == Expr::Kind::Pow) return false;
  for (const auto& a : e->args)
    if (!is_constant_expr(a)) return false;
  return true;
}

long small_integer(const ExprPtr& e, bool allow_negative) {
  const Rational q = constant_value(e);
  if (!is_integral(q) || !q.get_num().fits_slong_p()) throw InputError("exponent must be an integer: " + print_expr(e));
  const long n = q.get_num().get_si();
  if (n < 0 && !allow_negative) throw InputError("negative exponent in a polynomial: " + print_expr(e));
  if (n > 10000 || n < -10000) throw InputError("exponent out of range: " + print_expr(e));
  return n;
}

std::optional<std::size_t> indeterminate_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 'X') return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  const unsigned long k = std::stoul(name.substr(1));
  if (k == 0) return std::nullopt;
  return k - 1;
}

}  // namespace

// ---------------------------------------------------------------------------

bool Expr::operator==(const Expr& o) const {
  if (kind != o.kind || number != o.number || name != o.name || args.size() != o.args.size()) return false;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!(*args[i] == *o.args[i])) return false;
  return true;
}

std::string print_expr(const ExprPtr& e) {
  const int p = precedence(*e);
  switch (e->kind) {
    case Expr::Kind::Num:
      return e->number.get_str();
    case Expr::Kind::Id:
      return e->name;
    case Expr::Kind::Add:
      return print_at(e->args[0], p) + " + " + print_at(e->args[1], p + 1);
    case Expr::Kind::Sub:
      return print_at(e->args[0], p) + " - " + print_at(e->args[1], p + 1);
    case Expr::Kind::Mul:
      return print_at(e->args[0], p) + "*" + print_at(e->args[1], p + 1);
    case Expr::Kind::Div:
      return print_at(e->args[0], p) + "/" + print_at(e->args[1], p + 1);
    case Expr::Kind::Neg:
      return "-" + print_at(e->args[0], p);
    case Expr::Kind::Pow:
      return print_at(e->args[0], p + 1) + "^" + print_at(e->args[1], 3);
    case Expr::Kind::Exp:
      return "exp(" + print_expr(e->args[0]) + ")";
  }
  return {};
}

bool FieldDecl::operator==(const FieldDecl& o) const {
  if (name != o.name || gens != o.gens || base_set != o.base_set || base_name != o.base_name || exps != o.exps ||
      abasis != o.abasis || egg != o.egg || rels.size() != o.rels.size())
    return false;
  for (std::size_t i = 0; i < rels.size(); ++i)
    if (!(*rels[i].first == *o.rels[i].first) || !(*rels[i].second == *o.rels[i].second)) return false;
  return true;
}

bool TupleDecl::operator==(const TupleDecl& o) const {
  return name == o.name && field == o.field && same_exprs(entries, o.entries);
}

bool CertificateDecl::operator==(const CertificateDecl& o) const {
  if (name != o.name || field != o.field || coeffs != o.coeffs || !same_exprs(witness, o.witness) ||
      equations.size() != o.equations.size())
    return false;
  for (std::size_t i = 0; i < equations.size(); ++i)
    if (equations[i].first != o.equations[i].first || !(*equations[i].second == *o.equations[i].second)) return false;
  return true;
}

Document Document::parse(const std::string& text, const ParseOptions& options) {
  Parser parser(text, options);
  Document doc;
  std::set<std::string> names;
  std::vector<Token> field_at;
  auto claim = [&](const std::string& name, const Token& at) {
    if (!names.insert(name).second) throw ParseError("duplicate name " + name, at.line, at.column);
  };
  while (!parser.at_end()) {
    if (parser.accept_keyword("field")) {
      const Token at = parser.peek();
      FieldDecl f = parser.field();
      claim(f.name, at);
      field_at.push_back(at);
      if (!f.base_name.empty() && !doc.find_field(f.base_name))
        throw ParseError("unknown base field " + f.base_name, at.line, at.column);
      doc.order_.push_back({ItemKind::Field, doc.fields_.size()});
      doc.fields_.push_back(std::move(f));
    } else if (parser.accept_keyword("tuple")) {
      const Token at = parser.peek();
      TupleDecl t = parser.tuple();
      claim(t.name, at);
      if (!doc.find_field(t.field)) throw ParseError("unknown field " + t.field, at.line, at.column);
      doc.order_.push_back({ItemKind::Tuple, doc.tuples_.size()});
      doc.tuples_.push_back(std::move(t));
    } else if (parser.accept_keyword("khovanskii")) {
      const Token at = parser.peek();
      CertificateDecl c = parser.certificate();
      claim(c.name, at);
      if (!doc.find_field(c.field)) throw ParseError("unknown field " + c.field, at.line, at.column);
      doc.order_.push_back({ItemKind::Certificate, doc.certificates_.size()});
      doc.certificates_.push_back(std::move(c));
    } else {
      parser.fail("expected 'field', 'tuple' or 'khovanskii'");
    }
  }
  // Symbols inside fields must be declared generators.
  for (std::size_t fi = 0; fi < doc.fields_.size(); ++fi) {
    const auto& f = doc.fields_[fi];
    const Token& at = field_at[fi];
    std::set<std::string> gens(f.gens.begin(), f.gens.end());
    if (!f.base_name.empty()) {
      for (const auto* b = doc.find_field(f.base_name); b != nullptr;
           b = b->base_name.empty() ? nullptr : doc.find_field(b->base_name)) {
        gens.insert(b->gens.begin(), b->gens.end());
      }
    }
    auto need = [&](const std::string& g) {
      if (!gens.count(g)) throw ParseError("unknown symbol " + g + " in field " + f.name, at.line, at.column);
    };
    if (f.base_set)
      for (const auto& g : *f.base_set) need(g);
    for (const auto& [a, e] : f.exps) {
      need(a);
      need(e);
    }
    if (f.abasis)
      for (const auto& g : *f.abasis) need(g);
    std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& e) {
      if (e->kind == Expr::Kind::Id) need(e->name);
      if (e->kind == Expr::Kind::Exp)
        throw ParseError("relations of field " + f.name + " must be polynomial", at.line, at.column);
      for (const auto& a : e->args) walk(a);
    };
    for (const auto& [l, r] : f.rels) {
      walk(l);
      walk(r);
    }
  }
  return doc;
}

Document Document::load(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), options);
}

const FieldDecl* Document::find_field(const std::string& name) const {
  for (const auto& f : fields_)
    if (f.name == name) return &f;
  return nullptr;
}

const TupleDecl* Document::find_tuple(const std::string& name) const {
  for (const auto& t : tuples_)
    if (t.name == name) return &t;
  return nullptr;
}

const CertificateDecl* Document::find_certificate(const std::string& name) const {
  for (const auto& c : certificates_)
    if (c.name == name) return &c;
  return nullptr;
}

PresentationPtr Document::presentation(const std::string& field) const {
  if (auto it = built_.find(field); it != built_.end()) return it->second;
  const FieldDecl* decl = find_field(field);
  if (decl == nullptr) throw InputError("unknown field " + field);

  PresentationData data;
  data.name = decl->name;
  data.egg = decl->egg;
  PresentationPtr base;
  if (!decl->base_name.empty()) {
    base = presentation(decl->base_name);
    data.generators = base->generators();
    for (std::size_t g = 0; g < data.generators.size(); ++g) data.base.push_back(g);
    data.exps = base->exps();
    data.basis_seed = base->basis();
    data.base_name = decl->base_name;
  }
  const std::size_t imported = data.generators.size();
  data.generators.insert(data.generators.end(), decl->gens.begin(), decl->gens.end());
  std::set<std::string> seen;
  for (const auto& g : data.generators)
    if (!seen.insert(g).second) throw InputError("duplicate generator " + g + " in field " + decl->name);
  auto index_of = [&](const std::string& g) {
    for (std::size_t i = 0; i < data.generators.size(); ++i)
      if (data.generators[i] == g) return i;
    throw InputError("unknown symbol " + g + " in field " + decl->name);
  };
  if (decl->base_set)
    for (const auto& g : *decl->base_set) data.base.push_back(index_of(g));
  RingPtr ring = make_ring(data.generators);
  if (base) {
    std::vector<std::size_t> embed(imported);
    for (std::size_t i = 0; i < imported; ++i) embed[i] = i;
    for (const auto& r : base->field()->relations()) data.relations.push_back(r.moved_to(ring, embed));
  }
  for (const auto& [lhs, rhs] : decl->rels) data.relations.push_back(expr_to_poly(lhs, ring) - expr_to_poly(rhs, ring));
  for (const auto& [a, e] : decl->exps) data.exps.push_back({index_of(a), index_of(e)});
  if (decl->abasis) {
    std::vector<std::size_t> basis = base ? base->basis() : std::vector<std::size_t>{};
    for (const auto& g : *decl->abasis) {
      const std::size_t gi = index_of(g);
      std::size_t k = 0;
      while (k < data.exps.size() && data.exps[k].arg != gi) ++k;
      if (k == data.exps.size()) throw InputError("abasis element " + g + " has no exp clause in " + decl->name);
      if (std::find(basis.begin(), basis.end(), k) == basis.end()) basis.push_back(k);
    }
    data.basis = basis;
  }
  auto built = std::make_shared<const Presentation>(std::move(data));
  built_.emplace(field, built);
  return built;
}

std::string Document::print() const {
  std::string out;
  for (std::size_t i = 0; i < order_.size(); ++i) {
    const auto [kind, index] = order_[i];
    if (i > 0) out += "\n";
    if (kind == ItemKind::Field) {
      const auto& f = fields_[index];
      out += "field " + f.name + " {\n";
      if (!f.base_name.empty()) out += "  base " + f.base_name + ";\n";
      if (!f.gens.empty()) out += "  gens " + join(f.gens, ", ") + ";\n";
      if (f.base_set) out += "  base {" + join(*f.base_set, ", ") + "};\n";
      for (const auto& [a, e] : f.exps) out += "  exp " + a + " = " + e + ";\n";
      for (const auto& [l, r] : f.rels) out += "  rel " + print_expr(l) + " = " + print_expr(r) + ";\n";
      if (f.abasis) out += "  abasis {" + join(*f.abasis, ", ") + "};\n";
      if (f.egg) out += "  egg;\n";
      out += "}\n";
    } else if (kind == ItemKind::Tuple) {
      const auto& t = tuples_[index];
      out += "tuple " + t.name + " in " + t.field + " = " + print_tuple(t.entries) + ";\n";
    } else {
      const auto& c = certificates_[index];
      out += "khovanskii " + c.name + " in " + c.field + " {\n";
      for (const auto& [n, e] : c.equations) out += "  " + n + " = " + print_expr(e) + ";\n";
      out += "  witness = " + print_tuple(c.witness) + ";\n";
      out += "  coeffs = {" + join(c.coeffs, ", ") + "};\n";
      out += "}\n";
    }
  }
  return out;
}

bool Document::operator==(const Document& o) const {
  return order_ == o.order_ && fields_ == o.fields_ && tuples_ == o.tuples_ && certificates_ == o.certificates_;
}

std::vector<ExprPtr> parse_expr_list(const std::string& text) {
  Parser parser(text, {});
  auto out = parser.expr_tuple();
  if (!parser.at_end()) parser.fail("trailing input");
  return out;
}

std::vector<std::string> parse_id_set(const std::string& text) {
  Parser parser(text, {});
  parser.expect("{");
  auto out = parser.id_list("}");
  if (!parser.at_end()) parser.fail("trailing input");
  return out;
}

std::vector<std::pair<std::string, ExprPtr>> parse_assignments(const std::string& text) {
  Parser parser(text, {});
  std::vector<std::pair<std::string, ExprPtr>> out;
  parser.expect("(");
  if (!parser.accept(")")) {
    do {
      std::string name = parser.identifier();
      parser.expect("=");
      out.emplace_back(std::move(name), parser.expr());
    } while (parser.accept(","));
    parser.expect(")");
  }
  if (!parser.at_end()) parser.fail("trailing input");
  return out;
}

Poly expr_to_poly(const ExprPtr& e, const RingPtr& ring) {
  switch (e->kind) {
    case Expr::Kind::Num:
      return Poly::constant(ring, Rational(e->number));
    case Expr::Kind::Id: {
      const auto i = ring->index_of(e->name);
      if (i < 0) throw InputError("unknown symbol " + e->name);
      return Poly::variable(ring, static_cast<std::size_t>(i));
    }
    case Expr::Kind::Add:
      return expr_to_poly(e->args[0], ring) + expr_to_poly(e->args[1], ring);
    case Expr::Kind::Sub:
      return expr_to_poly(e->args[0], ring) - expr_to_poly(e->args[1], ring);
    case Expr::Kind::Mul:
      return expr_to_poly(e->args[0], ring) * expr_to_poly(e->args[1], ring);
    case Expr::Kind::Div: {
      if (!is_constant_expr(e->args[1])) throw InputError("polynomial division by a non-constant: " + print_expr(e));
      const Rational d = constant_value(e->args[1]);
      if (is_zero(d)) throw InputError("division by zero in " + print_expr(e));
      return expr_to_poly(e->args[0], ring).scaled(Rational(1) / d);
    }
    case Expr::Kind::Neg:
      return -expr_to_poly(e->args[0], ring);
    case Expr::Kind::Pow:
      return expr_to_poly(e->args[0], ring).pow(static_cast<unsigned>(small_integer(e->args[1], false)));
    case Expr::Kind::Exp:
      throw InputError("exp is not allowed in a polynomial: " + print_expr(e));
  }
  throw InputError("bad expression");
}

FieldElement expr_to_element(const ExprPtr& e, const Presentation& p) {
  switch (e->kind) {
    case Expr::Kind::Num:
      return p.constant(Rational(e->number));
    case Expr::Kind::Id:
      return p.symbol_value(e->name);
    case Expr::Kind::Add:
      return expr_to_element(e->args[0], p) + expr_to_element(e->args[1], p);
    case Expr::Kind::Sub:
      return expr_to_element(e->args[0], p) - expr_to_element(e->args[1], p);
    case Expr::Kind::Mul:
      return expr_to_element(e->args[0], p) * expr_to_element(e->args[1], p);
    case Expr::Kind::Div:
      return expr_to_element(e->args[0], p) / expr_to_element(e->args[1], p);
    case Expr::Kind::Neg:
      return -expr_to_element(e->args[0], p);
    case Expr::Kind::Pow:
      return expr_to_element(e->args[0], p).pow(small_integer(e->args[1], true));
    case Expr::Kind::Exp:
      return p.exp_value(expr_to_element(e->args[0], p));
  }
  throw InputError("bad expression");
}

ExpPoly expr_to_exp_poly(const ExprPtr& e, const Presentation& p) {
  switch (e->kind) {
    case Expr::Kind::Num:
      return ExpPoly::constant(Rational(e->number));
    case Expr::Kind::Id: {
      if (p.generator_index(e->name) >= 0) return ExpPoly::symbol(e->name);
      if (auto k = indeterminate_index(e->name)) return ExpPoly::indeterminate(*k);
      throw InputError("unknown symbol " + e->name + " (indeterminates are X1, X2, ...)");
    }
    case Expr::Kind::Add:
      return expr_to_exp_poly(e->args[0], p) + expr_to_exp_poly(e->args[1], p);
    case Expr::Kind::Sub:
      return expr_to_exp_poly(e->args[0], p) - expr_to_exp_poly(e->args[1], p);
    case Expr::Kind::Mul:
      return expr_to_exp_poly(e->args[0], p) * expr_to_exp_poly(e->args[1], p);
    case Expr::Kind::Div: {
      if (!is_constant_expr(e->args[1])) throw InputError("division by a non-constant: " + print_expr(e));
      const Rational d = constant_value(e->args[1]);
      if (is_zero(d)) throw InputError("division by zero in " + print_expr(e));
      return expr_to_exp_poly(e->args[0], p).scaled(Rational(1) / d);
    }
    case Expr::Kind::Neg:
      return -expr_to_exp_poly(e->args[0], p);
    case Expr::Kind::Pow:
      return expr_to_exp_poly(e->args[0], p).pow(static_cast<unsigned>(small_integer(e->args[1], false)));
    case Expr::Kind::Exp:
      return ep_exp(expr_to_exp_poly(e->args[0], p));
  }
  throw InputError("bad expression");
}

}  // namespace expfield
