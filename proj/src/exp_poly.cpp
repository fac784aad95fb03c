#include "expfield/exp_poly.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <unordered_map>

#include "expfield/errors.hpp"

namespace expfield {

struct EpNode {
  std::vector<EpTerm> terms;
  std::size_t hash = 0;
  std::size_t depth = 0;
  std::size_t indeterminates = 0;
};

namespace {

using Factors = std::vector<std::pair<ExpVar, unsigned>>;

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t hash_rational(const Rational& q) {
  std::size_t h = static_cast<std::size_t>(mpz_getlimbn(q.get_num_mpz_t(), 0));
  h = mix(h, static_cast<std::size_t>(sgn(q) + 1));
  return mix(h, static_cast<std::size_t>(mpz_getlimbn(q.get_den_mpz_t(), 0)));
}

std::size_t hash_terms(const std::vector<EpTerm>& terms) {
  std::size_t h = terms.size();
  for (const auto& t : terms) {
    h = mix(h, hash_rational(t.coeff));
    for (const auto& [v, e] : t.monomial) {
      h = mix(h, v.kind == ExpVar::Kind::Symbol ? std::hash<std::string>{}(v.name) : v.index * 31 + 7);
      h = mix(h, e);
    }
    h = mix(h, t.exponent.node()->hash);
  }
  return h;
}

bool same_terms(const std::vector<EpTerm>& a, const std::vector<EpTerm>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].exponent.node() != b[i].exponent.node() || a[i].coeff != b[i].coeff ||
        a[i].monomial != b[i].monomial)
      return false;
  }
  return true;
}

// Append-only, internally synchronized node table. Nodes live for the whole
// process, so raw pointers to them never dangle.
class Interner {
 public:
  const EpNode* intern(std::vector<EpTerm> terms) {
    const std::size_t h = hash_terms(terms);
    std::lock_guard lock(mutex_);
    auto& bucket = table_[h];
    for (const EpNode* n : bucket)
      if (same_terms(n->terms, terms)) return n;
    EpNode& node = storage_.emplace_back();
    node.hash = h;
    for (const auto& t : terms) {
      if (!t.exponent.is_zero()) node.depth = std::max(node.depth, t.exponent.node()->depth + 1);
      node.indeterminates = std::max(node.indeterminates, t.exponent.node()->indeterminates);
      for (const auto& [v, e] : t.monomial)
        if (v.kind == ExpVar::Kind::Indeterminate) node.indeterminates = std::max(node.indeterminates, v.index + 1);
    }
    node.terms = std::move(terms);
    bucket.push_back(&node);
    return &node;
  }

 private:
  std::mutex mutex_;
  std::deque<EpNode> storage_;
  std::unordered_map<std::size_t, std::vector<const EpNode*>> table_;
};

Interner& interner() {
  static Interner instance;
  return instance;
}

const EpNode* zero_node() {
  static const EpNode* z = interner().intern({});
  return z;
}

unsigned degree(const Factors& m) {
  unsigned d = 0;
  for (const auto& f : m) d += f.second;
  return d;
}

std::strong_ordering compare_factors(const Factors& a, const Factors& b) {
  if (auto c = degree(a) <=> degree(b); c != 0) return c;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (auto c = a[i].first <=> b[i].first; c != 0) return c;
    if (auto c = a[i].second <=> b[i].second; c != 0) return c;
  }
  return a.size() <=> b.size();
}

std::strong_ordering compare_nodes(const EpNode* a, const EpNode* b);

// Order of terms inside a sum: plain terms before exp terms, then by monomial,
// then by exponent.
std::strong_ordering compare_term_keys(const EpTerm& a, const EpTerm& b) {
  const bool ea = !a.exponent.is_zero(), eb = !b.exponent.is_zero();
  if (ea != eb) return ea ? std::strong_ordering::greater : std::strong_ordering::less;
  if (auto c = compare_factors(a.monomial, b.monomial); c != 0) return c;
  return compare_nodes(a.exponent.node(), b.exponent.node());
}

std::strong_ordering compare_nodes(const EpNode* a, const EpNode* b) {
  if (a == b) return std::strong_ordering::equal;
  const auto& ta = a->terms;
  const auto& tb = b->terms;
  for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
    if (auto c = compare_term_keys(ta[i], tb[i]); c != 0) return c;
    if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff ? std::strong_ordering::less
                                                                      : std::strong_ordering::greater;
  }
  return ta.size() <=> tb.size();
}

ExpPoly canonical_sum(std::vector<EpTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const EpTerm& a, const EpTerm& b) { return compare_term_keys(a, b) < 0; });
  std::vector<EpTerm> out;
  for (auto& t : terms) {
    if (!out.empty() && compare_term_keys(out.back(), t) == 0) {
      out.back().coeff += t.coeff;
      if (is_zero(out.back().coeff)) out.pop_back();
    } else if (!is_zero(t.coeff)) {
      out.push_back(std::move(t));
    }
  }
  return ExpPoly(interner().intern(std::move(out)));
}

Factors multiply_factors(const Factors& a, const Factors& b) {
  Factors out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].first, a[i].second + b[j].second});
      ++i;
      ++j;
    }
  }
  return out;
}

std::string rational_text(const Rational& q) { return q.get_str(); }

}  // namespace

std::strong_ordering ExpVar::operator<=>(const ExpVar& o) const {
  if (kind != o.kind) return kind == Kind::Symbol ? std::strong_ordering::less : std::strong_ordering::greater;
  if (kind == Kind::Symbol) {
    const int c = name.compare(o.name);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  return index <=> o.index;
}

ExpPoly::ExpPoly() : node_(zero_node()) {}

ExpPoly ExpPoly::constant(const Rational& q) {
  if (expfield::is_zero(q)) return ExpPoly();
  return ExpPoly(interner().intern({EpTerm{q, {}, ExpPoly()}}));
}

ExpPoly ExpPoly::symbol(const std::string& name) {
  return ExpPoly(interner().intern({EpTerm{Rational(1), {{ExpVar::symbol(name), 1u}}, ExpPoly()}}));
}

ExpPoly ExpPoly::indeterminate(std::size_t index) {
  return ExpPoly(interner().intern({EpTerm{Rational(1), {{ExpVar::indeterminate(index), 1u}}, ExpPoly()}}));
}

bool ExpPoly::is_zero() const { return node_->terms.empty(); }

ExpPoly ExpPoly::operator+(const ExpPoly& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  std::vector<EpTerm> terms = node_->terms;
  terms.insert(terms.end(), o.node_->terms.begin(), o.node_->terms.end());
  return canonical_sum(std::move(terms));
}

ExpPoly ExpPoly::operator-() const { return scaled(Rational(-1)); }

ExpPoly ExpPoly::operator-(const ExpPoly& o) const { return *this + (-o); }

ExpPoly ExpPoly::operator*(const ExpPoly& o) const {
  if (is_zero() || o.is_zero()) return ExpPoly();
  std::vector<EpTerm> terms;
  for (const auto& a : node_->terms)
    for (const auto& b : o.node_->terms)
      terms.push_back({a.coeff * b.coeff, multiply_factors(a.monomial, b.monomial), a.exponent + b.exponent});
  return canonical_sum(std::move(terms));
}

ExpPoly ExpPoly::pow(unsigned n) const {
  ExpPoly result = constant(Rational(1));
  ExpPoly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

ExpPoly ExpPoly::scaled(const Rational& q) const {
  if (expfield::is_zero(q)) return ExpPoly();
  std::vector<EpTerm> terms = node_->terms;
  for (auto& t : terms) t.coeff *= q;
  return ExpPoly(interner().intern(std::move(terms)));
}

std::strong_ordering ExpPoly::operator<=>(const ExpPoly& o) const { return compare_nodes(node_, o.node_); }

std::size_t ExpPoly::exp_depth() const { return node_->depth; }

std::size_t ExpPoly::indeterminate_count() const { return node_->indeterminates; }

std::string ExpPoly::to_string(const std::vector<std::string>& names) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : node_->terms) {
    Rational c = t.coeff;
    const bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::vector<std::string> factors;
    for (const auto& [v, e] : t.monomial) {
      std::string leaf = v.kind == ExpVar::Kind::Symbol ? v.name
                         : v.index < names.size()      ? names[v.index]
                                                       : "X" + std::to_string(v.index + 1);
      if (e > 1) leaf += "^" + std::to_string(e);
      factors.push_back(std::move(leaf));
    }
    if (!t.exponent.is_zero()) factors.push_back("exp(" + t.exponent.to_string(names) + ")");
    if (factors.empty() || c != 1) factors.insert(factors.begin(), rational_text(c));
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i > 0) out += "*";
      out += factors[i];
    }
  }
  return out;
}

ExpPoly ep_add(const ExpPoly& f, const ExpPoly& g) { return f + g; }
ExpPoly ep_mul(const ExpPoly& f, const ExpPoly& g) { return f * g; }

ExpPoly ep_exp(const ExpPoly& f) {
  return ExpPoly(interner().intern({EpTerm{Rational(1), {}, f}}));
}

ExpPoly ep_partial(const ExpPoly& f, std::size_t index) {
  std::vector<EpTerm> terms;
  for (const auto& t : f.node()->terms) {
    for (std::size_t k = 0; k < t.monomial.size(); ++k) {
      const auto& [v, e] = t.monomial[k];
      if (v.kind != ExpVar::Kind::Indeterminate || v.index != index) continue;
      Factors m = t.monomial;
      if (e == 1)
        m.erase(m.begin() + static_cast<std::ptrdiff_t>(k));
      else
        m[k].second = e - 1;
      terms.push_back({t.coeff * e, std::move(m), t.exponent});
    }
    if (!t.exponent.is_zero()) {
      const ExpPoly du = ep_partial(t.exponent, index);
      if (!du.is_zero()) {
        const ExpPoly self(interner().intern({EpTerm{t.coeff, t.monomial, t.exponent}}));
        const ExpPoly product = self * du;
        terms.insert(terms.end(), product.node()->terms.begin(), product.node()->terms.end());
      }
    }
  }
  return canonical_sum(std::move(terms));
}

ExpPoly ep_substitute(const ExpPoly& f, const std::vector<ExpPoly>& values) {
  ExpPoly result;
  for (const auto& t : f.node()->terms) {
    ExpPoly term = ExpPoly::constant(t.coeff);
    for (const auto& [v, e] : t.monomial) {
      const bool replaced = v.kind == ExpVar::Kind::Indeterminate && v.index < values.size();
      const ExpPoly leaf(interner().intern({EpTerm{Rational(1), {{v, 1u}}, ExpPoly()}}));
      term = term * (replaced ? values[v.index] : leaf).pow(e);
    }
    if (!t.exponent.is_zero()) term = term * ep_exp(ep_substitute(t.exponent, values));
    result = result + term;
  }
  return result;
}

FieldElement ep_eval(const ExpPoly& f, const std::vector<FieldElement>& point, const EvaluationTarget& target) {
  const FieldPtr& field = target.field();
  std::map<const EpNode*, FieldElement> memo;
  std::map<std::string, FieldElement> symbols;
  std::function<FieldElement(const EpNode*)> eval = [&](const EpNode* node) -> FieldElement {
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    FieldElement sum = FieldElement::constant(field, Rational(0));
    for (const auto& t : node->terms) {
      FieldElement term = FieldElement::constant(field, t.coeff);
      for (const auto& [v, e] : t.monomial) {
        if (v.kind == ExpVar::Kind::Indeterminate) {
          if (v.index >= point.size())
            throw InputError("evaluation point has " + std::to_string(point.size()) + " entries but X" +
                             std::to_string(v.index + 1) + " occurs");
          term = term * point[v.index].pow(e);
        } else {
          auto it = symbols.find(v.name);
          if (it == symbols.end()) it = symbols.emplace(v.name, target.symbol_value(v.name)).first;
          term = term * it->second.pow(e);
        }
      }
      if (!t.exponent.is_zero()) term = term * target.exp_value(eval(t.exponent.node()));
      sum = sum + term;
    }
    memo.emplace(node, sum);
    return sum;
  };
  return eval(f.node());
}

const std::vector<EpTerm>& ep_terms(const ExpPoly& f) { return f.node()->terms; }

}  // namespace expfield
