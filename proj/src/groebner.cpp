#include "expfield/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <string>

#include "expfield/errors.hpp"

namespace expfield {

namespace {

std::atomic<std::size_t> g_spair_budget{kSpairBudget};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

// Remainder of p by `reducers` (monic), reducing every term.
Poly reduce(Poly p, const std::vector<Poly>& reducers) {
  const auto& ring = p.ring();
  std::vector<Term> remainder;
  while (!p.is_zero()) {
    const Term lt = p.lead();
    const Poly* hit = nullptr;
    for (const auto& g : reducers) {
      if (g.lead().monomial.divides(lt.monomial)) {
        hit = &g;
        break;
      }
    }
    if (hit == nullptr) {
      remainder.push_back(lt);
      p.drop_lead();
    } else {
      p -= hit->times_term(hit->lead().monomial.quotient_of(lt.monomial), lt.coeff);
    }
  }
  return Poly::from_sorted(ring, std::move(remainder));
}

Poly s_polynomial(const Poly& f, const Poly& g, const Monomial& lcm) {
  return f.times_term(f.lead().monomial.quotient_of(lcm), Rational(1)) -
         g.times_term(g.lead().monomial.quotient_of(lcm), Rational(1));
}

bool in_pending(const std::vector<Pair>& pending, std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return std::any_of(pending.begin(), pending.end(), [&](const Pair& p) { return p.i == a && p.j == b; });
}

// Drops elements whose leading monomial is divisible by another's, then
// interreduces and sorts.
std::vector<Poly> reduced_basis(std::vector<Poly> g) {
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = g[i].lead().monomial;
      const auto& mj = g[j].lead().monomial;
      // Equal leading monomials: keep the earlier one only.
      if (mj.divides(mi) && (mi != mj || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<Poly> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly head = Poly::from_sorted(minimal[i].ring(), {minimal[i].lead()});
    Poly tail = minimal[i];
    tail.drop_lead();
    out.push_back((head + reduce(tail, others)).monic());
  }
  const auto& order = out.empty() ? MonomialOrder{} : out[0].ring()->order;
  std::sort(out.begin(), out.end(),
            [&](const Poly& a, const Poly& b) { return order.compare(a.lead().monomial, b.lead().monomial) > 0; });
  return out;
}

}  // namespace

std::size_t default_spair_budget() { return g_spair_budget.load(); }
void set_default_spair_budget(std::size_t budget) { g_spair_budget.store(budget); }

GroebnerBasis buchberger(const Ideal& ideal) { return buchberger(ideal, default_spair_budget()); }

GroebnerBasis buchberger(const Ideal& ideal, std::size_t spair_budget) {
  const RingPtr& ring = ideal.ring;
  const auto& order = ring->order;
  std::vector<Poly> g;
  for (const auto& f : ideal.generators) {
    Poly r = reduce(f, g);
    if (r.is_zero()) continue;
    if (r.is_constant()) return {ring, {Poly::constant(ring, Rational(1))}};
    g.push_back(r.monic());
  }

  std::vector<Pair> pending;
  auto add_pairs_for = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i)
      pending.push_back({i, k, g[i].lead().monomial.lcm(g[k].lead().monomial)});
  };
  for (std::size_t k = 0; k < g.size(); ++k) add_pairs_for(k);

  std::size_t reduced = 0;
  while (!pending.empty()) {
    // Normal selection: smallest lcm, ties broken by index pair.
    std::size_t best = 0;
    for (std::size_t p = 1; p < pending.size(); ++p) {
      const int c = order.compare(pending[p].lcm, pending[best].lcm);
      if (c < 0 || (c == 0 && std::tie(pending[p].i, pending[p].j) < std::tie(pending[best].i, pending[best].j)))
        best = p;
    }
    const Pair pair = pending[best];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));

    const auto& mi = g[pair.i].lead().monomial;
    const auto& mj = g[pair.j].lead().monomial;
    if (mi.coprime(mj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == pair.i || k == pair.j) continue;
      if (g[k].lead().monomial.divides(pair.lcm) && !in_pending(pending, pair.i, k) &&
          !in_pending(pending, pair.j, k))
        chain = true;
    }
    if (chain) continue;

    if (++reduced > spair_budget)
      throw ResourceLimit("Groebner S-pair budget of " + std::to_string(spair_budget) + " exhausted");
    Poly r = reduce(s_polynomial(g[pair.i], g[pair.j], pair.lcm), g);
    if (r.is_zero()) continue;
    if (r.is_constant()) return {ring, {Poly::constant(ring, Rational(1))}};
    g.push_back(r.monic());
    add_pairs_for(g.size() - 1);
  }
  return {ring, reduced_basis(std::move(g))};
}

Poly normal_form(const Poly& p, const GroebnerBasis& gb) { return reduce(p, gb.basis); }

bool ideal_member(const Poly& p, const GroebnerBasis& gb) { return normal_form(p, gb).is_zero(); }

std::size_t krull_dimension(const GroebnerBasis& gb) {
  if (gb.is_unit()) throw InputError("Krull dimension of the unit ideal is undefined");
  const std::size_t n = gb.ring->size();
  std::vector<std::vector<std::size_t>> supports;
  for (const auto& g : gb.basis) {
    std::vector<std::size_t> s;
    const auto& m = g.lead().monomial;
    for (std::size_t v = 0; v < n; ++v)
      if (m[v] != 0) s.push_back(v);
    supports.push_back(std::move(s));
  }
  // Minimum hitting set of the leading-monomial supports by branch and bound;
  // its complement is a maximal independent set.
  std::vector<bool> chosen(n, false);
  std::size_t best = n;
  std::function<void(std::size_t)> search = [&](std::size_t size) {
    if (size >= best) return;
    const std::vector<std::size_t>* unhit = nullptr;
    for (const auto& s : supports) {
      if (std::none_of(s.begin(), s.end(), [&](std::size_t v) { return chosen[v]; })) {
        if (unhit == nullptr || s.size() < unhit->size()) unhit = &s;
      }
    }
    if (unhit == nullptr) {
      best = size;
      return;
    }
    for (auto v : *unhit) {
      chosen[v] = true;
      search(size + 1);
      chosen[v] = false;
    }
  };
  search(0);
  return n - best;
}

Ideal eliminate(const Ideal& ideal, std::span<const std::size_t> keep) {
  const RingPtr& ring = ideal.ring;
  const std::size_t n = ring->size();
  std::vector<bool> kept(n, false);
  for (auto v : keep) kept[v] = true;
  std::vector<std::size_t> drop;
  for (std::size_t v = 0; v < n; ++v)
    if (!kept[v]) drop.push_back(v);

  RingPtr elim = make_ring(ring->variables, MonomialOrder::elimination(n, drop));
  std::vector<std::size_t> identity(n);
  for (std::size_t v = 0; v < n; ++v) identity[v] = v;
  Ideal moved{elim, {}};
  for (const auto& f : ideal.generators) moved.generators.push_back(f.moved_to(elim, identity));
  const GroebnerBasis gb = buchberger(moved);

  Ideal out{ring, {}};
  for (const auto& g : gb.basis) {
    const auto support = g.support();
    if (std::all_of(support.begin(), support.end(), [&](std::size_t v) { return kept[v]; }))
      out.generators.push_back(g.moved_to(ring, identity));
  }
  return out;
}

Ideal eliminate(const GroebnerBasis& gb, std::span<const std::size_t> keep) {
  return eliminate(Ideal{gb.ring, gb.basis}, keep);
}

}  // namespace expfield
