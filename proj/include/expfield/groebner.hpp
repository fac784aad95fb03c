#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "expfield/poly.hpp"

namespace expfield {

struct Ideal {
  RingPtr ring;
  std::vector<Poly> generators;
};

// Reduced Groebner basis under the ring's monomial order: monic, no leading
// monomial divides another, sorted by decreasing leading monomial.
struct GroebnerBasis {
  RingPtr ring;
  std::vector<Poly> basis;

  bool is_unit() const { return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero(); }
};

// Number of S-pairs Buchberger may reduce before giving up with ResourceLimit.
inline constexpr std::size_t kSpairBudget = 10000;
std::size_t default_spair_budget();
void set_default_spair_budget(std::size_t budget);

GroebnerBasis buchberger(const Ideal& ideal);
GroebnerBasis buchberger(const Ideal& ideal, std::size_t spair_budget);

// Fully reduced remainder of p modulo the basis.
Poly normal_form(const Poly& p, const GroebnerBasis& gb);
bool ideal_member(const Poly& p, const GroebnerBasis& gb);

// Dimension of the quotient ring: the largest set of variables no leading
// monomial is supported on. Throws InputError for the unit ideal.
std::size_t krull_dimension(const GroebnerBasis& gb);

// Generators of the ideal intersected with Q[keep], in the original ring.
Ideal eliminate(const Ideal& ideal, std::span<const std::size_t> keep);
Ideal eliminate(const GroebnerBasis& gb, std::span<const std::size_t> keep);

}  // namespace expfield
