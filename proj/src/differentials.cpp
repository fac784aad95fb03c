#include "expfield/differentials.hpp"

#include <algorithm>
#include <set>

#include "expfield/linear_algebra.hpp"
#include "expfield/predimension.hpp"
#include "expfield/search.hpp"

namespace expfield {

namespace {

FieldElement fe(const Presentation& p, const Poly& f) { return FieldElement(p.field(), f); }

FMatrix empty_matrix(const Presentation& p, std::size_t cols) { return FMatrix(0, cols, p.constant(Rational(0))); }

void append(FMatrix& m, const FMatrix& rows) {
  for (std::size_t r = 0; r < rows.rows(); ++r) m.append_row(rows.row(r));
}

bool all_zero(const FVector& v) {
  return std::all_of(v.begin(), v.end(), [](const FieldElement& e) { return e.is_zero(); });
}

// Multiplies a row by its distinct denominators so every entry is a
// polynomial class.
FVector cleared(const Presentation& p, FVector row) {
  std::vector<Poly> dens;
  for (const auto& e : row) {
    if (e.is_zero() || e.den().is_constant()) continue;
    if (std::none_of(dens.begin(), dens.end(), [&](const Poly& d) { return d == e.den(); })) dens.push_back(e.den());
  }
  if (dens.empty()) return row;
  Poly scale = Poly::constant(p.field()->ring(), Rational(1));
  for (const auto& d : dens) scale = scale * d;
  const FieldElement s = fe(p, scale);
  for (auto& e : row) e = e * s;
  return row;
}

std::size_t rank_with(const FMatrix& rows, const std::vector<FVector>& extra) {
  FMatrix m = rows;
  for (const auto& v : extra) m.append_row(v);
  return rank_division_free(std::move(m));
}

// d of a polynomial in the generators, given each generator's differential.
FVector poly_differential(const Presentation& p, const Poly& f, const std::vector<FVector>& dg, std::size_t cols) {
  FVector out(cols, p.constant(Rational(0)));
  for (std::size_t g = 0; g < p.generator_count(); ++g) {
    const Poly df = f.partial(g);
    if (df.is_zero() || all_zero(dg[g])) continue;
    const FieldElement c = fe(p, df);
    for (std::size_t k = 0; k < cols; ++k)
      if (!dg[g][k].is_zero()) out[k] = out[k] + c * dg[g][k];
  }
  return out;
}

FVector quotient_differential(const Presentation& p, const FieldElement& h, const std::vector<FVector>& dg,
                              std::size_t cols) {
  const FVector dnum = poly_differential(p, h.num(), dg, cols);
  if (h.den().is_constant()) {
    FVector out = dnum;
    const Rational c = h.den().constant_coeff();
    for (auto& e : out) e = e.scaled(Rational(1) / c);
    return out;
  }
  const FVector dden = poly_differential(p, h.den(), dg, cols);
  const FieldElement num = fe(p, h.num());
  const FieldElement den = fe(p, h.den());
  const FieldElement den2 = den * den;
  FVector out;
  for (std::size_t k = 0; k < cols; ++k) out.push_back((den * dnum[k] - num * dden[k]) / den2);
  return out;
}

std::vector<FVector> unit_differentials(const Presentation& p) {
  const std::size_t m = p.generator_count();
  std::vector<FVector> dg(m, FVector(m, p.constant(Rational(0))));
  for (std::size_t g = 0; g < m; ++g) dg[g][g] = p.constant(Rational(1));
  return dg;
}

FieldElement dot(const FVector& a, const FVector& b, const FieldElement& zero) {
  FieldElement s = zero;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s = s + a[i] * b[i];
  return s;
}

std::vector<std::size_t> positions_outside(const Presentation& p, const Subfield& base) {
  const std::set<std::size_t> gens(base.generators.begin(), base.generators.end());
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < p.basis_size(); ++j)
    if (!gens.count(p.exps()[p.basis()[j]].arg)) out.push_back(j);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Chart make_chart(const Presentation& p, const std::vector<std::size_t>& constant_generators) {
  Chart chart;
  const auto& gens = p.generators();
  const auto& exps = p.exps();
  const auto& coords = p.exp_arg_coordinates();
  const std::size_t m = gens.size();
  const std::set<std::size_t> constant(constant_generators.begin(), constant_generators.end());
  chart.constant_generators.assign(constant.begin(), constant.end());
  for (std::size_t k = 0; k < exps.size(); ++k)
    if (!coords[k])
      throw InputError("exp argument " + gens[exps[k].arg] + " is outside the span of the A-basis of " + p.name());

  std::vector<ExpPoly> basis_rw;
  for (auto k : p.basis()) {
    const std::size_t arg = exps[k].arg;
    if (constant.count(arg)) {
      basis_rw.push_back(ExpPoly::symbol(gens[arg]));
    } else {
      basis_rw.push_back(ExpPoly::indeterminate(chart.column_names.size()));
      chart.column_names.push_back(gens[arg]);
      chart.point.push_back(p.generator(arg));
    }
  }
  auto expansion = [&](std::size_t k) {
    ExpPoly sum;
    for (std::size_t j = 0; j < basis_rw.size(); ++j)
      if (!is_zero((*coords[k])[j])) sum = sum + basis_rw[j].scaled((*coords[k])[j]);
    return sum;
  };

  std::vector<std::ptrdiff_t> arg_pair(m, -1), value_pair(m, -1);
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (arg_pair[exps[k].arg] < 0) arg_pair[exps[k].arg] = static_cast<std::ptrdiff_t>(k);
    if (value_pair[exps[k].value] < 0) value_pair[exps[k].value] = static_cast<std::ptrdiff_t>(k);
  }
  chart.rewrites.resize(m);
  for (std::size_t g = 0; g < m; ++g) {
    if (constant.count(g))
      chart.rewrites[g] = ExpPoly::symbol(gens[g]);
    else if (arg_pair[g] >= 0)
      chart.rewrites[g] = expansion(static_cast<std::size_t>(arg_pair[g]));
    else if (value_pair[g] >= 0)
      chart.rewrites[g] = ep_exp(expansion(static_cast<std::size_t>(value_pair[g])));
  }
  for (std::size_t g = 0; g < m; ++g) {
    if (constant.count(g) || arg_pair[g] >= 0 || value_pair[g] >= 0) continue;
    chart.rewrites[g] = ExpPoly::indeterminate(chart.column_names.size());
    chart.column_names.push_back(gens[g]);
    chart.point.push_back(p.generator(g));
  }

  auto keep = [&](const ExpPoly& f) {
    if (!f.is_zero() && f.indeterminate_count() > 0) chart.structural.push_back(f);
  };
  for (std::size_t k = 0; k < exps.size(); ++k) {
    const ExpPoly target = ep_exp(expansion(k));
    if (!(chart.rewrites[exps[k].value] == target)) keep(chart.rewrites[exps[k].value] - target);
  }
  for (std::size_t g = 0; g < m; ++g) {
    if (arg_pair[g] < 0) continue;
    const ExpPoly e = expansion(static_cast<std::size_t>(arg_pair[g]));
    if (!(chart.rewrites[g] == e)) keep(chart.rewrites[g] - e);
  }

  const std::size_t cols = chart.columns();
  for (std::size_t g = 0; g < m; ++g) {
    FVector d;
    for (std::size_t c = 0; c < cols; ++c) d.push_back(ep_eval(ep_partial(chart.rewrites[g], c), chart.point, p));
    chart.generator_differentials.push_back(std::move(d));
  }
  return chart;
}

ExpPoly rewrite_poly(const Chart& chart, const Poly& f) {
  ExpPoly sum;
  for (const auto& t : f.terms()) {
    ExpPoly term = ExpPoly::constant(t.coeff);
    for (std::size_t v = 0; v < t.monomial.size(); ++v)
      if (t.monomial[v] > 0) term = term * chart.rewrites[v].pow(static_cast<unsigned>(t.monomial[v]));
    sum = sum + term;
  }
  return sum;
}

FVector differential(const Presentation& p, const Chart& chart, const FieldElement& h) {
  return quotient_differential(p, h, chart.generator_differentials, chart.columns());
}

FMatrix DiffModule::all_rows() const {
  FMatrix m = empty_matrix(*field, columns());
  append(m, relation_matrix);
  append(m, constant_rows);
  return m;
}

DiffModule xi_presentation(const PresentationPtr& p, const DiffBase& c) {
  DiffModule mod;
  mod.field = p;
  mod.chart = make_chart(*p, c.subfield.generators);
  const std::size_t cols = mod.chart.columns();
  for (const auto& name : mod.chart.column_names) mod.basis_symbols.push_back("d" + name);
  mod.relation_matrix = empty_matrix(*p, cols);
  mod.constant_rows = empty_matrix(*p, cols);

  auto add_relation = [&](const ExpPoly& f, const std::string& source) {
    FVector row;
    for (std::size_t k = 0; k < cols; ++k) row.push_back(ep_eval(ep_partial(f, k), mod.chart.point, *p));
    mod.relation_matrix.append_row(cleared(*p, std::move(row)));
    mod.row_sources.push_back(source);
  };
  for (const auto& q : p->field()->basis().basis) add_relation(rewrite_poly(mod.chart, q), q.to_string() + " = 0");
  for (const auto& s : mod.chart.structural) add_relation(s, s.to_string(mod.chart.column_names) + " = 0");

  std::vector<FieldElement> constants;
  for (const auto& v : c.subfield.span) {
    constants.push_back(p->a_element(v));
    constants.push_back(p->exp_of(v));
  }
  constants.insert(constants.end(), c.extra.begin(), c.extra.end());
  for (const auto& h : constants) {
    FVector row = differential(*p, mod.chart, h);
    if (!all_zero(row)) mod.constant_rows.append_row(cleared(*p, std::move(row)));
  }

  const std::set<std::size_t> constant(c.subfield.generators.begin(), c.subfield.generators.end());
  for (auto k : p->basis()) {
    const auto& e = p->exps()[k];
    if (constant.count(e.arg)) continue;
    const auto& a = p->generators()[e.arg];
    const auto& v = p->generators()[e.value];
    mod.lambda_forms.push_back("d" + v + "/" + v + " - d" + a);
  }
  return mod;
}

XiSystem::XiSystem(const PresentationPtr& p, const DiffBase& c)
    : p_(p), module_(xi_presentation(p, c)), rank_(rank_division_free(module_.all_rows())) {}

std::size_t XiSystem::kernel_dimension() const {
  return kernel_basis(module_.all_rows(), p_->constant(Rational(0)), p_->constant(Rational(1))).size();
}

FVector XiSystem::differential(const FieldElement& h) const { return expfield::differential(*p_, module_.chart, h); }

bool XiSystem::kills(const FieldElement& h) const {
  const FVector dh = differential(h);
  if (all_zero(dh)) return true;
  return rank_with(module_.all_rows(), {cleared(*p_, dh)}) == rank_;
}

std::size_t XiSystem::rank_of(const std::vector<FieldElement>& elements) const {
  std::vector<FVector> rows;
  for (const auto& h : elements) {
    FVector dh = differential(h);
    if (!all_zero(dh)) rows.push_back(cleared(*p_, std::move(dh)));
  }
  if (rows.empty()) return 0;
  return rank_with(module_.all_rows(), rows) - rank_;
}

std::size_t xi_dim(const PresentationPtr& p, const DiffBase& c) { return XiSystem(p, c).dimension(); }

std::size_t eder_dim(const PresentationPtr& p, const DiffBase& c) { return XiSystem(p, c).kernel_dimension(); }

bool cl_member(const PresentationPtr& p, const DiffBase& c, const FieldElement& h) { return XiSystem(p, c).kills(h); }

std::vector<std::size_t> closure_generators(const PresentationPtr& p, const DiffBase& c) {
  const XiSystem sys(p, c);
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < p->generator_count(); ++g)
    if (sys.kills(p->generator(g))) out.push_back(g);
  return out;
}

Subfield closure(const PresentationPtr& p, const DiffBase& c) {
  const XiSystem sys(p, c);
  Subfield out;
  for (std::size_t g = 0; g < p->generator_count(); ++g)
    if (sys.kills(p->generator(g))) out.generators.push_back(g);

  // Rational v with sum v_j da_j zero in Xi(F/C): reduce each da_j modulo
  // the row space, then solve over Q through normal forms.
  const std::size_t cols = sys.module().columns();
  const std::size_t nb = p->basis_size();
  FMatrix rows = sys.module().all_rows();
  const auto pivots = rref_in_place(rows);
  std::vector<FVector> residues;
  for (std::size_t j = 0; j < nb; ++j) {
    FVector w = sys.differential(p->generator(p->exps()[p->basis()[j]].arg));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const FieldElement f = w[pivots[i]];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < cols; ++k) w[k] = w[k] - f * rows(i, k);
    }
    residues.push_back(std::move(w));
  }
  std::vector<std::vector<std::pair<std::size_t, Rational>>> equations;  // sparse rows over j
  for (std::size_t k = 0; k < cols; ++k) {
    // sum_j v_j n_j / d_j = 0  <=>  sum_j v_j n_j prod_{i != j} d_i = 0
    std::vector<std::size_t> present;
    for (std::size_t j = 0; j < nb; ++j)
      if (!residues[j][k].is_zero()) present.push_back(j);
    if (present.empty()) continue;
    std::map<Monomial, std::map<std::size_t, Rational>> rowsq;
    for (auto j : present) {
      Poly term = residues[j][k].num();
      for (auto i : present)
        if (i != j) term = term * residues[i][k].den();
      const Poly nf = p->field()->normal_form(term);
      for (const auto& t : nf.terms()) rowsq[t.monomial][j] += t.coeff;
    }
    for (const auto& [mono, entries] : rowsq) {
      std::vector<std::pair<std::size_t, Rational>> eq(entries.begin(), entries.end());
      equations.push_back(std::move(eq));
    }
  }
  QMatrix q(equations.size(), nb);
  for (std::size_t r = 0; r < equations.size(); ++r)
    for (const auto& [j, v] : equations[r]) q(r, j) = v;
  std::vector<QVector> kernel;
  if (equations.empty()) {
    for (std::size_t j = 0; j < nb; ++j) {
      QVector e(nb, Rational(0));
      e[j] = 1;
      kernel.push_back(e);
    }
  } else {
    kernel = q_kernel(q);
  }
  for (auto& v : kernel) out.span.push_back(primitive_part(v));
  return out;
}

bool exchange_check(const PresentationPtr& p, const DiffBase& c, const FieldElement& a, const FieldElement& b) {
  if (XiSystem(p, c).kills(a)) return true;
  if (!XiSystem(p, c.with(b)).kills(a)) return true;
  return XiSystem(p, c.with(a)).kills(b);
}

// ---------------------------------------------------------------------------

FVector derivation_on_generators(const Derivation& d) {
  const Chart chart = make_chart(*d.field);
  const FieldElement zero = d.field->constant(Rational(0));
  FVector out;
  for (const auto& dg : chart.generator_differentials) out.push_back(dot(dg, d.values, zero));
  return out;
}

FieldElement apply(const Derivation& d, const FieldElement& h) {
  const Chart chart = make_chart(*d.field);
  return dot(differential(*d.field, chart, h), d.values, d.field->constant(Rational(0)));
}

DerivationCheck verify_derivation(const Derivation& d) {
  DerivationCheck check;
  const Presentation& p = *d.field;
  const FVector dg = derivation_on_generators(d);
  const auto& gens = p.generators();
  for (const auto& e : p.exps()) {
    const FieldElement lhs = dg[e.value];
    const FieldElement rhs = p.generator(e.value) * dg[e.arg];
    if (!(lhs == rhs)) {
      check.ok = false;
      check.failures.push_back("D(" + gens[e.value] + ") = " + lhs.to_string() + " but " + gens[e.value] + "*D(" +
                               gens[e.arg] + ") = " + rhs.to_string());
    }
  }
  const auto units = unit_differentials(p);
  for (const auto& q : p.field()->basis().basis) {
    const FVector grad = poly_differential(p, q, units, p.generator_count());
    const FieldElement value = dot(grad, dg, p.constant(Rational(0)));
    if (!value.is_zero()) {
      check.ok = false;
      check.failures.push_back("D(" + q.to_string() + ") = " + value.to_string());
    }
  }
  return check;
}

Derivation make_derivation(const PresentationPtr& p, const std::vector<std::pair<std::string, FieldElement>>& values) {
  const Chart chart = make_chart(*p);
  Derivation d{p, chart.column_names, FVector(chart.columns(), p->constant(Rational(0))), std::nullopt};
  for (const auto& [name, value] : values) {
    auto it = std::find(chart.column_names.begin(), chart.column_names.end(), name);
    if (it == chart.column_names.end()) {
      std::string cols;
      for (const auto& c : chart.column_names) cols += (cols.empty() ? "" : ", ") + c;
      throw InputError("derivations of " + p->name() + " are given on " + (cols.empty() ? "no columns" : cols) +
                       ", not " + name);
    }
    d.values[static_cast<std::size_t>(it - chart.column_names.begin())] = value;
  }
  return d;
}

std::vector<Derivation> eder_basis(const PresentationPtr& p) {
  const XiSystem sys(p, DiffBase{});
  std::vector<Derivation> out;
  for (auto& v : kernel_basis(sys.module().all_rows(), p->constant(Rational(0)), p->constant(Rational(1))))
    out.push_back(Derivation{p, sys.module().chart.column_names, std::move(v), std::nullopt});
  return out;
}

FieldElement embed(const FieldElement& h, const Presentation& from, const Presentation& to) {
  std::vector<std::size_t> map;
  for (const auto& g : from.generators()) {
    const auto i = to.generator_index(g);
    if (i < 0) throw InputError("generator " + g + " of " + from.name() + " is missing from " + to.name());
    map.push_back(static_cast<std::size_t>(i));
  }
  const RingPtr& ring = to.field()->ring();
  return FieldElement(to.field(), h.num().moved_to(ring, map), h.den().moved_to(ring, map));
}

Derivation extend_derivation(const PresentationPtr& f1, const PresentationPtr& f2, const Derivation& d) {
  const auto check = verify_derivation(d);
  if (!check.ok) throw InputError("not an E-derivation on " + f1->name() + ": " + check.failures.front());
  const DiffModule mod = xi_presentation(f2, DiffBase{});
  const std::size_t cols = mod.columns();
  const FieldElement zero = f2->constant(Rational(0));
  FMatrix system = mod.relation_matrix;
  FVector rhs(system.rows(), zero);
  const FVector d1 = derivation_on_generators(d);
  for (std::size_t g = 0; g < f1->generator_count(); ++g) {
    const auto g2 = f2->generator_index(f1->generators()[g]);
    if (g2 < 0) throw InputError("generator " + f1->generators()[g] + " of " + f1->name() + " is missing from " + f2->name());
    system.append_row(mod.chart.generator_differentials[static_cast<std::size_t>(g2)]);
    rhs.push_back(embed(d1[g], *f1, *f2));
  }
  if (system.rows() == 0) system = FMatrix(0, cols, zero);
  auto x = solve_linear(system, std::span<const FieldElement>(rhs), zero);
  if (!x) throw NoExtension("the derivation of " + f1->name() + " does not extend to " + f2->name());
  return Derivation{f2, mod.chart.column_names, std::move(*x), std::nullopt};
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> new_basis_positions(const Presentation& p) { return positions_outside(p, p.base_subfield()); }

OmegaReport omega_hat(const PresentationPtr& p, const Subfield& base) {
  const std::size_t m = p->generator_count();
  const auto units = unit_differentials(*p);
  FMatrix rows = empty_matrix(*p, m);
  for (const auto& q : p->field()->basis().basis) {
    FVector row = poly_differential(*p, q, units, m);
    if (!all_zero(row)) rows.append_row(row);
  }
  for (const auto& h : p->subfield_elements(base)) {
    FVector row = quotient_differential(*p, h, units, m);
    if (!all_zero(row)) rows.append_row(cleared(*p, std::move(row)));
  }
  const auto positions = positions_outside(*p, base);
  std::vector<FVector> omegas;
  for (auto j : positions) {
    const auto& e = p->exps()[p->basis()[j]];
    FVector w(m, p->constant(Rational(0)));
    w[e.value] = inverse(p->generator(e.value));
    w[e.arg] = w[e.arg] - p->constant(Rational(1));
    omegas.push_back(cleared(*p, std::move(w)));
  }
  OmegaReport r;
  r.n = positions.size();
  r.rank = omegas.empty() ? 0 : rank_with(rows, omegas) - rank_division_free(rows);
  return r;
}

AxFactReport ax_fact_witness(const PresentationPtr& p, const Subfield& base, long bound) {
  AxFactReport r;
  r.omega = omega_hat(p, base);
  r.applicable = r.omega.dependent();
  if (!r.applicable) return r;
  const auto positions = positions_outside(*p, base);
  for (const auto& m : primitive_vectors(positions.size(), bound)) {
    ++r.candidates_tried;
    QVector v(p->basis_size(), Rational(0));
    for (std::size_t i = 0; i < positions.size(); ++i) v[positions[i]] = Rational(m[i]);
    const FieldElement b = p->a_element(v);
    if (td(*p, {b}, base) != 0) continue;
    if (td(*p, {p->exp_of(v)}, base) != 0) continue;
    std::vector<Integer> out;
    for (long x : m) out.emplace_back(x);
    r.m = out;
    r.b = b.to_string();
    break;
  }
  return r;
}

}  // namespace expfield
