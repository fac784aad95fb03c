#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "expfield/errors.hpp"
#include "expfield/exp_poly.hpp"
#include "expfield/matrix.hpp"
#include "expfield/presentation.hpp"

namespace expfield {

using FMatrix = Matrix<FieldElement>;
using FVector = std::vector<FieldElement>;

// The constants of a differential computation: a subfield plus extra
// elements adjoined to it (an enlarged base).
struct DiffBase {
  Subfield subfield;
  std::vector<FieldElement> extra;

  static DiffBase of(Subfield s) { return {std::move(s), {}}; }
  DiffBase with(const FieldElement& h) const {
    DiffBase b = *this;
    b.extra.push_back(h);
    return b;
  }
};

// Coordinates for differentials. Every generator is rewritten as an
// exponential polynomial in the column indeterminates: exp arguments become
// rational combinations of A-basis columns, exp values become exp of those,
// remaining generators are columns themselves, and constant generators are
// coefficient symbols.
struct Chart {
  std::vector<std::string> column_names;
  FVector point;                  // value of each column indeterminate
  std::vector<ExpPoly> rewrites;  // per generator
  std::vector<FVector> generator_differentials;  // dg in the columns, per generator
  // Relations that the rewrite does not satisfy by construction: exp pairs
  // whose value is not rewritten as exp of the argument, and arguments whose
  // rewrite differs from their basis expansion.
  std::vector<ExpPoly> structural;
  std::vector<std::size_t> constant_generators;

  std::size_t columns() const { return column_names.size(); }
};

Chart make_chart(const Presentation& p, const std::vector<std::size_t>& constant_generators = {});

// The exponential polynomial of a polynomial in the generators, through the
// chart's rewrite.
ExpPoly rewrite_poly(const Chart& chart, const Poly& f);

// dh in the chart's columns (exact quotient rule).
FVector differential(const Presentation& p, const Chart& chart, const FieldElement& h);

// Xi(F/C) as the cokernel of a matrix over F.
struct DiffModule {
  PresentationPtr field;
  Chart chart;
  std::vector<std::string> basis_symbols;  // "d<column>"
  // One row per Groebner generator of the relation ideal, then one per
  // structural relation.
  FMatrix relation_matrix;
  std::vector<std::string> row_sources;
  // dc = 0 for constants that are not chart symbols.
  FMatrix constant_rows;
  // omega_i = dE_i/E_i - da_i for the A-basis columns (symbolic).
  std::vector<std::string> lambda_forms;

  std::size_t columns() const { return chart.columns(); }
  FMatrix all_rows() const;
};

DiffModule xi_presentation(const PresentationPtr& p, const DiffBase& c);

// Cached ranks against one module, for repeated membership queries.
class XiSystem {
 public:
  XiSystem(const PresentationPtr& p, const DiffBase& c);

  const DiffModule& module() const { return module_; }
  std::size_t rank() const { return rank_; }
  std::size_t dimension() const { return module_.columns() - rank_; }
  // dim of the E-derivations vanishing on C, from the kernel.
  std::size_t kernel_dimension() const;
  FVector differential(const FieldElement& h) const;
  bool kills(const FieldElement& h) const;
  // Rank of the images of the given differentials in Xi(F/C).
  std::size_t rank_of(const std::vector<FieldElement>& elements) const;

 private:
  PresentationPtr p_;
  DiffModule module_;
  std::size_t rank_;
};

std::size_t xi_dim(const PresentationPtr& p, const DiffBase& c);
std::size_t eder_dim(const PresentationPtr& p, const DiffBase& c);

bool cl_member(const PresentationPtr& p, const DiffBase& c, const FieldElement& h);
// Generators in cl(C).
std::vector<std::size_t> closure_generators(const PresentationPtr& p, const DiffBase& c);
// cl(C) met with the generators and A(F): the closed generators together with
// the Q-subspace of A(F) killed by every E-derivation vanishing on C.
Subfield closure(const PresentationPtr& p, const DiffBase& c);

// (a in cl(Cb) and a not in cl(C)) implies b in cl(Ca).
bool exchange_check(const PresentationPtr& p, const DiffBase& c, const FieldElement& a, const FieldElement& b);

// An E-derivation on a presented field, given by its values on the columns
// of the absolute chart (no constant generators).
struct Derivation {
  PresentationPtr field;
  std::vector<std::string> columns;
  FVector values;
  std::optional<FieldElement> lambda;
};

FVector derivation_on_generators(const Derivation& d);
FieldElement apply(const Derivation& d, const FieldElement& h);

struct DerivationCheck {
  bool ok = true;
  std::vector<std::string> failures;
};
// The exp rule on every exp pair and Leibniz on every relation generator.
DerivationCheck verify_derivation(const Derivation& d);

// Column assignments; unassigned columns are zero. Throws InputError for
// unknown column names.
Derivation make_derivation(const PresentationPtr& p, const std::vector<std::pair<std::string, FieldElement>>& values);
std::vector<Derivation> eder_basis(const PresentationPtr& p);

class NoExtension : public Error {
 public:
  using Error::Error;
};

// Maps an element of a field whose generators are a subset (by name) of
// the target's generators.
FieldElement embed(const FieldElement& h, const Presentation& from, const Presentation& to);

// Extends d from f1 to f2 (f1's generators appear in f2 by name); unknowns
// without constraints are set to zero. Throws NoExtension when the linear
// system is inconsistent and InputError when d is not a derivation.
Derivation extend_derivation(const PresentationPtr& f1, const PresentationPtr& f2, const Derivation& d);

// The images of omega_i in Omega(F2/F1) for the new A-basis columns.
struct OmegaReport {
  std::size_t n = 0;     // new basis elements
  std::size_t rank = 0;  // rank of their images
  bool dependent() const { return rank < n; }
};
OmegaReport omega_hat(const PresentationPtr& p, const Subfield& base);

struct AxFactReport {
  OmegaReport omega;
  bool applicable = false;
  std::optional<std::vector<Integer>> m;  // over the new basis positions
  std::string b;                          // sum m_i a_i
  std::size_t candidates_tried = 0;
};
// Searches nonzero integer m with |m_i| <= bound, by height and then
// lexicographically, such that b = sum m_i a_i and exp(b) are algebraic over
// the base.
AxFactReport ax_fact_witness(const PresentationPtr& p, const Subfield& base, long bound);

// Positions of the A-basis not lying in the base.
std::vector<std::size_t> new_basis_positions(const Presentation& p);

}  // namespace expfield
