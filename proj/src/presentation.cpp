#include "expfield/presentation.hpp"

#include <algorithm>
#include <set>

#include "expfield/errors.hpp"
#include "expfield/groebner.hpp"
#include "expfield/linear_algebra.hpp"

namespace expfield {

namespace {

std::vector<std::size_t> iota_vector(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Dense univariate polynomials, coefficient of x^i at position i.
using UniPoly = std::vector<Rational>;

void trim(UniPoly& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

UniPoly uni_remainder(UniPoly a, const UniPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    trim(a);
  }
  return a;
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UniPoly r = uni_remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Rational uni_eval(const UniPoly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<Integer> positive_divisors(Integer n) {
  std::vector<Integer> out;
  if (n < 0) n = -n;
  if (n > 1000000) return out;  // too large to enumerate; skip the spot check
  for (Integer d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// Why the univariate polynomial p (degree >= 2) is visibly reducible over Q,
// or an empty string.
std::string visible_factor(const UniPoly& p, const std::string& var) {
  if (p.size() < 3) return {};
  if (is_zero(p[0])) return var + " divides it";
  UniPoly derivative;
  for (std::size_t i = 1; i < p.size(); ++i) derivative.push_back(p[i] * static_cast<unsigned long>(i));
  if (uni_gcd(p, derivative).size() > 1) return "repeated factor";
  Integer scale = 1;
  for (const auto& c : p) scale = lcm(scale, Integer(c.get_den()));
  const Integer a0 = Integer(Rational(p.front() * scale).get_num());
  const Integer an = Integer(Rational(p.back() * scale).get_num());
  const auto ps = positive_divisors(a0);
  const auto qs = positive_divisors(an);
  for (const auto& num : ps) {
    for (const auto& den : qs) {
      for (int sign : {1, -1}) {
        const Rational root = make_rational(Integer(num * sign), den);
        if (is_zero(uni_eval(p, root))) return "rational root " + root.get_str();
      }
    }
  }
  return {};
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out;
}

Poly product_of_powers(const RingPtr& ring, const std::vector<std::pair<std::size_t, unsigned>>& factors) {
  Poly p = Poly::constant(ring, Rational(1));
  for (const auto& [g, e] : factors) p = p * Poly::variable(ring, g).pow(e);
  return p;
}

}  // namespace

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

Presentation::Presentation(PresentationData data) : data_(std::move(data)) {
  const std::size_t n = data_.generators.size();
  std::set<std::string> seen;
  for (const auto& g : data_.generators)
    if (!seen.insert(g).second) throw InputError("duplicate generator " + g + " in field " + data_.name);
  for (const auto& e : data_.exps)
    if (e.arg >= n || e.value >= n) throw InputError("exp pair refers to an unknown generator");
  for (auto b : data_.base)
    if (b >= n) throw InputError("base refers to an unknown generator");
  std::sort(data_.base.begin(), data_.base.end());
  data_.base.erase(std::unique(data_.base.begin(), data_.base.end()), data_.base.end());

  field_ = std::make_shared<const QuotientField>(data_.generators, data_.relations);

  std::map<Monomial, std::size_t> index;
  std::vector<std::vector<Rational>> arg_vectors;
  for (const auto& e : data_.exps) arg_vectors.push_back(nf_vector(Poly::variable(field_->ring(), e.arg), index));
  auto column_matrix = [&](const std::vector<std::size_t>& cols) {
    QMatrix m(index.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto& v = arg_vectors[cols[c]];
      for (std::size_t r = 0; r < v.size(); ++r) m(r, c) = v[r];
    }
    return m;
  };

  if (data_.basis) {
    for (auto k : *data_.basis)
      if (k >= data_.exps.size()) throw InputError("abasis names an argument without an exp pair");
    basis_ = *data_.basis;
  } else {
    for (auto k : data_.basis_seed)
      if (k >= data_.exps.size()) throw InputError("inherited basis names an unknown exp pair");
    basis_ = data_.basis_seed;
    for (std::size_t k = 0; k < data_.exps.size(); ++k) {
      if (std::find(basis_.begin(), basis_.end(), k) != basis_.end()) continue;
      auto trial = basis_;
      trial.push_back(k);
      if (q_rank(column_matrix(trial)) == trial.size()) basis_ = std::move(trial);
    }
  }

  const QMatrix basis_matrix = column_matrix(basis_);
  for (std::size_t k = 0; k < data_.exps.size(); ++k) {
    QVector rhs(index.size(), Rational(0));
    for (std::size_t r = 0; r < arg_vectors[k].size(); ++r) rhs[r] = arg_vectors[k][r];
    arg_coords_.push_back(q_solve(basis_matrix, rhs));
  }
}

std::vector<Rational> Presentation::nf_vector(const Poly& p, std::map<Monomial, std::size_t>& index) const {
  const Poly nf = field_->normal_form(p);
  for (const auto& t : nf.terms()) index.emplace(t.monomial, index.size());
  std::vector<Rational> v(index.size(), Rational(0));
  for (const auto& t : nf.terms()) v[index.at(t.monomial)] = t.coeff;
  return v;
}

std::ptrdiff_t Presentation::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < data_.generators.size(); ++i)
    if (data_.generators[i] == name) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

bool Presentation::is_base_generator(std::size_t g) const {
  return std::binary_search(data_.base.begin(), data_.base.end(), g);
}

std::vector<std::size_t> Presentation::base_basis_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < basis_.size(); ++j)
    if (is_base_generator(data_.exps[basis_[j]].arg)) out.push_back(j);
  return out;
}

std::optional<QVector> Presentation::coordinates(const FieldElement& h) const {
  const std::size_t n = basis_.size();
  if (h.is_zero()) return QVector(n, Rational(0));
  // nf(num) = sum_j q_j nf(den * a_j)
  std::map<Monomial, std::size_t> index;
  std::vector<std::vector<Rational>> cols;
  for (auto k : basis_) cols.push_back(nf_vector(h.den() * Poly::variable(field_->ring(), data_.exps[k].arg), index));
  const auto rhs_vec = nf_vector(h.num(), index);
  QMatrix m(index.size(), n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < cols[c].size(); ++r) m(r, c) = cols[c][r];
  QVector rhs(index.size(), Rational(0));
  for (std::size_t r = 0; r < rhs_vec.size(); ++r) rhs[r] = rhs_vec[r];
  return q_solve(m, rhs);
}

QVector Presentation::a_coordinates(const FieldElement& h) const {
  auto c = coordinates(h);
  if (!c) throw ExpUndefined(h.to_string(), "not in the Q-span of the A-basis of " + data_.name);
  return *c;
}

FieldElement Presentation::a_element(const QVector& coords) const {
  FieldElement sum = constant(Rational(0));
  for (std::size_t j = 0; j < coords.size(); ++j)
    if (!is_zero(coords[j])) sum = sum + generator(data_.exps[basis_[j]].arg).scaled(coords[j]);
  return sum;
}

FieldElement Presentation::exp_of(const QVector& coords) const {
  auto integral_product = [&](const QVector& c) -> std::optional<FieldElement> {
    FieldElement prod = constant(Rational(1));
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (is_zero(c[j])) continue;
      if (!is_integral(c[j])) return std::nullopt;
      prod = prod * generator(data_.exps[basis_[j]].value).pow(c[j].get_num().get_si());
    }
    return prod;
  };
  if (auto p = integral_product(coords)) return *p;
  for (std::size_t k = 0; k < data_.exps.size(); ++k) {
    if (!arg_coords_[k]) continue;
    QVector rest = coords;
    for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= (*arg_coords_[k])[j];
    if (auto p = integral_product(rest)) return generator(data_.exps[k].value) * *p;
  }
  throw ExpUndefined(a_element(coords).to_string(), "needs a rational power of an exp value that is not presented");
}

FieldElement Presentation::symbol_value(const std::string& name) const {
  const auto g = generator_index(name);
  if (g < 0) throw InputError("unknown symbol " + name + " in field " + data_.name);
  return generator(static_cast<std::size_t>(g));
}

FieldElement Presentation::exp_value(const FieldElement& argument) const { return exp_of(a_coordinates(argument)); }

std::vector<FieldElement> Presentation::subfield_elements(const Subfield& s) const {
  std::vector<FieldElement> out;
  std::set<std::size_t> gens(s.generators.begin(), s.generators.end());
  for (const auto& e : data_.exps)
    if (gens.count(e.arg)) gens.insert(e.value);
  for (auto g : gens) out.push_back(generator(g));
  for (const auto& v : s.span) {
    out.push_back(a_element(v));
    out.push_back(exp_of(v));
  }
  return out;
}

std::vector<QVector> Presentation::subfield_a_part(const Subfield& s) const {
  std::vector<QVector> out;
  const std::set<std::size_t> gens(s.generators.begin(), s.generators.end());
  for (std::size_t k = 0; k < data_.exps.size(); ++k)
    if (gens.count(data_.exps[k].arg) && arg_coords_[k]) out.push_back(*arg_coords_[k]);
  for (const auto& v : s.span) out.push_back(v);
  return out;
}

std::shared_ptr<const Presentation> Presentation::base_presentation() const {
  {
    std::lock_guard lock(cache_mutex_);
    if (base_cache_) return base_cache_;
  }
  PresentationData d;
  d.name = data_.base_name.empty() ? data_.name + ".base" : data_.base_name;
  std::vector<std::size_t> position(data_.generators.size(), SIZE_MAX);
  for (auto g : data_.base) {
    position[g] = d.generators.size();
    d.generators.push_back(data_.generators[g]);
  }
  RingPtr small = make_ring(d.generators);
  const Ideal elim = eliminate(field_->basis(), data_.base);
  for (const auto& p : elim.generators) d.relations.push_back(p.moved_to(small, position));
  std::vector<std::size_t> pair_position(data_.exps.size(), SIZE_MAX);
  for (std::size_t k = 0; k < data_.exps.size(); ++k) {
    const auto& e = data_.exps[k];
    if (is_base_generator(e.arg) && is_base_generator(e.value)) {
      pair_position[k] = d.exps.size();
      d.exps.push_back({position[e.arg], position[e.value]});
    }
  }
  std::vector<std::size_t> basis;
  for (auto k : basis_)
    if (pair_position[k] != SIZE_MAX) basis.push_back(pair_position[k]);
  d.basis = basis;
  std::set<std::size_t> covered;
  for (auto k : basis) covered.insert(d.exps[k].arg);
  for (const auto& e : d.exps) covered.insert(e.value);
  d.egg = covered.size() == d.generators.size();
  auto built = std::make_shared<const Presentation>(std::move(d));
  std::lock_guard lock(cache_mutex_);
  if (!base_cache_) base_cache_ = built;
  return base_cache_;
}

ValidationReport Presentation::validate(const Presentation* named_base) const {
  ValidationReport report;
  const RingPtr& ring = field_->ring();
  auto add = [&](std::string check, bool passed, std::string detail = {}, std::string witness = {}) {
    report.checks.push_back({std::move(check), passed, std::move(detail), std::move(witness)});
  };

  if (!field_->is_proper()) {
    add("proper-ideal", false, "the relations generate the unit ideal", "1");
    return report;
  }
  add("proper-ideal", true);

  {
    bool ok = true;
    for (const auto& f : field_->relations()) {
      const auto support = f.support();
      if (support.size() != 1) continue;
      UniPoly u(f.total_degree() + 1, Rational(0));
      for (const auto& t : f.terms()) u[t.monomial[support[0]]] += t.coeff;
      const std::string why = visible_factor(u, data_.generators[support[0]]);
      if (!why.empty()) {
        add("prime-spot-check", false, "univariate relation is reducible: " + why, f.to_string());
        ok = false;
      }
    }
    if (ok) add("prime-spot-check", true);
  }

  {
    std::map<Monomial, std::size_t> index;
    std::vector<std::vector<Rational>> vecs;
    for (auto k : basis_) vecs.push_back(nf_vector(Poly::variable(ring, data_.exps[k].arg), index));
    QMatrix m(index.size(), basis_.size());
    for (std::size_t c = 0; c < vecs.size(); ++c)
      for (std::size_t r = 0; r < vecs[c].size(); ++r) m(r, c) = vecs[c][r];
    const auto kernel = q_kernel(m);
    if (kernel.empty()) {
      add("basis-independent", true);
    } else {
      Poly combo(ring);
      for (std::size_t j = 0; j < basis_.size(); ++j)
        combo += Poly::variable(ring, data_.exps[basis_[j]].arg).scaled(kernel[0][j]);
      add("basis-independent", false, "a rational combination of the A-basis vanishes", combo.to_string());
    }
  }

  {
    bool ok = true;
    for (std::size_t k = 0; k < data_.exps.size(); ++k) {
      if (arg_coords_[k]) continue;
      ok = false;
      add("basis-spans", false, "exp argument " + data_.generators[data_.exps[k].arg] + " is outside the span of the A-basis",
          data_.generators[data_.exps[k].arg]);
    }
    if (ok) add("basis-spans", true);
  }

  {
    // Every integer relation among exp arguments must hold multiplicatively
    // among their values.
    std::map<Monomial, std::size_t> index;
    std::vector<std::vector<Rational>> vecs;
    for (const auto& e : data_.exps) vecs.push_back(nf_vector(Poly::variable(ring, e.arg), index));
    QMatrix m(index.size(), data_.exps.size());
    for (std::size_t c = 0; c < vecs.size(); ++c)
      for (std::size_t r = 0; r < vecs[c].size(); ++r) m(r, c) = vecs[c][r];
    bool ok = true;
    for (const auto& v : q_kernel(m)) {
      const QVector q = primitive_part(v);
      std::vector<std::pair<std::size_t, unsigned>> plus, minus;
      for (std::size_t k = 0; k < q.size(); ++k) {
        if (is_zero(q[k])) continue;
        const unsigned e = static_cast<unsigned>(Integer(abs(q[k].get_num())).get_ui());
        (sgn(q[k]) > 0 ? plus : minus).push_back({data_.exps[k].value, e});
      }
      const Poly law = product_of_powers(ring, plus) - product_of_powers(ring, minus);
      if (!field_->is_zero(law)) {
        ok = false;
        add("multiplicativity", false, "exp of a vanishing combination of arguments is not 1", law.to_string());
      }
    }
    if (ok) add("multiplicativity", true);
  }

  {
    bool ok = true;
    for (const auto& e : data_.exps) {
      if (!field_->is_zero(Poly::variable(ring, e.value))) continue;
      ok = false;
      add("exp-units", false, "exp value is zero", data_.generators[e.value]);
    }
    if (ok) add("exp-units", true);
  }

  if (data_.egg) {
    std::set<std::size_t> covered(data_.base.begin(), data_.base.end());
    for (const auto& e : data_.exps) {
      covered.insert(e.value);
      covered.insert(e.arg);
    }
    std::vector<std::string> missing;
    for (std::size_t g = 0; g < data_.generators.size(); ++g)
      if (!covered.count(g)) missing.push_back(data_.generators[g]);
    if (missing.empty())
      add("egg", true);
    else
      add("egg", false, "generators neither in A(F), exp(A(F)) nor the base: " + join_names(missing),
          missing.front());
  }

  {
    bool ok = true;
    const auto base_positions = base_basis_positions();
    for (std::size_t k = 0; k < data_.exps.size(); ++k) {
      const auto& e = data_.exps[k];
      if (!is_base_generator(e.arg)) continue;
      if (!is_base_generator(e.value)) {
        ok = false;
        add("base-closed", false, "exp of base element " + data_.generators[e.arg] + " lies outside the base",
            data_.generators[e.value]);
        continue;
      }
      if (!arg_coords_[k]) continue;
      for (std::size_t j = 0; j < basis_.size(); ++j) {
        if (is_zero((*arg_coords_[k])[j])) continue;
        if (std::find(base_positions.begin(), base_positions.end(), j) != base_positions.end()) continue;
        ok = false;
        add("base-closed", false, "base argument " + data_.generators[e.arg] + " needs non-base basis elements",
            data_.generators[e.arg]);
        break;
      }
    }
    if (ok) add("base-closed", true);
  }

  if (named_base != nullptr) {
    // I meets Q[base] exactly in the base field's ideal.
    std::vector<std::size_t> to_base(data_.generators.size(), 0);
    for (auto g : data_.base) {
      const auto b = named_base->generator_index(data_.generators[g]);
      if (b >= 0) to_base[g] = static_cast<std::size_t>(b);
    }
    bool ok = true;
    for (const auto& p : eliminate(field_->basis(), data_.base).generators) {
      const Poly q = p.moved_to(named_base->field()->ring(), to_base);
      if (named_base->field()->is_zero(q)) continue;
      ok = false;
      add("base-ideal", false, "the relations impose a new relation on the base " + named_base->name(), p.to_string());
      break;
    }
    if (ok) add("base-ideal", true);
  }
  return report;
}

namespace {

struct TdKey {
  std::vector<bool> kept;
  std::vector<const FieldElement*> fresh;
  std::string key;
};

// c * g + d with g a generator generates the same field as g.
TdKey td_key(std::size_t n, const std::vector<FieldElement>& elements, const char* tag) {
  TdKey k{std::vector<bool>(n, false), {}, tag};
  for (const auto& e : elements) {
    if (e.as_rational()) continue;
    if (e.den().is_constant() && e.num().is_linear()) {
      const auto support = e.num().support();
      if (support.size() == 1) {
        k.kept[support[0]] = true;
        continue;
      }
    }
    k.fresh.push_back(&e);
  }
  std::vector<std::string> parts;
  for (std::size_t g = 0; g < n; ++g)
    if (k.kept[g]) parts.push_back("g" + std::to_string(g));
  for (const auto* e : k.fresh) parts.push_back(e->to_string());
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  for (const auto& p : parts) k.key += p + ";";
  return k;
}

}  // namespace

const Matrix<FieldElement>& Presentation::relation_jacobian() const {
  std::call_once(jacobian_once_, [this] {
    const std::size_t n = data_.generators.size();
    relation_jacobian_ = Matrix<FieldElement>(0, n, constant(Rational(0)));
    std::vector<FieldElement> row;
    for (const auto& f : field_->basis().basis) {
      row.clear();
      for (std::size_t g = 0; g < n; ++g) row.push_back(FieldElement(field_, f.partial(g)));
      relation_jacobian_.append_row(row);
    }
    relation_rank_ = rank_division_free(relation_jacobian_);
  });
  return relation_jacobian_;
}

// Jacobian criterion: in characteristic zero, td of the field generated by
// h_1..h_k is rank(dF ; dh) - rank(dF), with F the relations.
std::size_t Presentation::td_absolute(const std::vector<FieldElement>& elements) const {
  const std::size_t n = data_.generators.size();
  const TdKey k = td_key(n, elements, "j:");
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = td_cache_.find(k.key); it != td_cache_.end()) return it->second;
  }
  Matrix<FieldElement> m = relation_jacobian();
  std::vector<FieldElement> row;
  for (std::size_t g = 0; g < n; ++g) {
    if (!k.kept[g]) continue;
    row.assign(n, constant(Rational(0)));
    row[g] = constant(Rational(1));
    m.append_row(row);
  }
  // d(a/b) is proportional to b da - a db.
  for (const auto* e : k.fresh) {
    row.clear();
    for (std::size_t g = 0; g < n; ++g)
      row.push_back(FieldElement(field_, e->den() * e->num().partial(g) - e->num() * e->den().partial(g)));
    m.append_row(row);
  }
  const std::size_t result = rank_division_free(std::move(m)) - relation_rank_;
  std::lock_guard lock(cache_mutex_);
  td_cache_.emplace(k.key, result);
  return result;
}

std::size_t Presentation::td_by_elimination(const std::vector<FieldElement>& elements) const {
  const std::size_t n = data_.generators.size();
  const TdKey k = td_key(n, elements, "e:");
  const auto& kept = k.kept;
  const auto& fresh = k.fresh;
  const std::string& key = k.key;
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = td_cache_.find(key); it != td_cache_.end()) return it->second;
  }
  const bool rabinowitsch = std::any_of(fresh.begin(), fresh.end(), [](const FieldElement* e) { return !e->den().is_constant(); });
  std::vector<std::string> vars = data_.generators;
  for (std::size_t i = 0; i < fresh.size(); ++i) vars.push_back("%t" + std::to_string(i));
  if (rabinowitsch) vars.push_back("%s");
  const std::size_t total = vars.size();
  std::vector<std::size_t> keep_vars;
  for (std::size_t g = 0; g < n; ++g)
    if (kept[g]) keep_vars.push_back(g);
  for (std::size_t i = 0; i < fresh.size(); ++i) keep_vars.push_back(n + i);

  std::size_t result = 0;
  if (!keep_vars.empty()) {
    RingPtr big = make_ring(vars);
    const auto embed = iota_vector(n);
    Ideal ideal{big, {}};
    for (const auto& g : field_->basis().basis) ideal.generators.push_back(g.moved_to(big, embed));
    Poly dens = Poly::constant(big, Rational(1));
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      const Poly num = fresh[i]->num().moved_to(big, embed);
      const Poly den = fresh[i]->den().moved_to(big, embed);
      ideal.generators.push_back(den * Poly::variable(big, n + i) - num);
      if (!den.is_constant()) dens = dens * den;
    }
    if (rabinowitsch) ideal.generators.push_back(Poly::variable(big, total - 1) * dens - Poly::constant(big, Rational(1)));

    std::vector<std::string> small_vars;
    std::vector<std::size_t> to_small(total, 0);
    for (auto v : keep_vars) {
      to_small[v] = small_vars.size();
      small_vars.push_back(vars[v]);
    }
    RingPtr small = make_ring(small_vars);
    Ideal reduced{small, {}};
    const bool nothing_to_eliminate = keep_vars.size() == total;
    const Ideal elim = nothing_to_eliminate ? ideal : eliminate(ideal, keep_vars);
    for (const auto& p : elim.generators) reduced.generators.push_back(p.moved_to(small, to_small));
    result = krull_dimension(buchberger(reduced));
  }
  std::lock_guard lock(cache_mutex_);
  td_cache_.emplace(key, result);
  return result;
}

}  // namespace expfield
