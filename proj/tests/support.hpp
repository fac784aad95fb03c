#pragma once

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "expfield/differentials.hpp"
#include "expfield/document.hpp"
#include "expfield/presentation.hpp"

namespace testing_support {

using namespace expfield;

inline std::string corpus_path(const std::string& file) { return std::string(EXPFIELD_CORPUS_DIR) + "/" + file; }

inline Document corpus(const std::string& file) { return Document::load(corpus_path(file)); }

inline std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(EXPFIELD_CORPUS_DIR))
    if (e.path().extension() == ".efd") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

struct NamedField {
  std::string file;
  Document doc;
  PresentationPtr p;
};

// Every field of every corpus document.
inline std::vector<NamedField> corpus_fields() {
  std::vector<NamedField> out;
  for (const auto& f : corpus_files()) {
    Document d = corpus(f);
    for (const auto& decl : d.fields()) out.push_back({f, d, d.presentation(decl.name)});
  }
  return out;
}

inline FieldElement gen(const Presentation& p, const std::string& name) {
  const auto i = p.generator_index(name);
  if (i < 0) throw std::runtime_error("no generator " + name);
  return p.generator(static_cast<std::size_t>(i));
}

// Rank over the presented field by plain Gaussian elimination.
inline std::size_t field_rank(std::vector<std::vector<FieldElement>> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      const FieldElement f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] = rows[r][k] - f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

// df for a polynomial f in the generators (not reduced first).
inline std::vector<FieldElement> polynomial_differential(const Presentation& p, const Poly& f) {
  std::vector<FieldElement> out;
  for (std::size_t g = 0; g < p.generator_count(); ++g) out.push_back(FieldElement(p.field(), f.partial(g)));
  return out;
}

// dh with respect to the generators.
inline std::vector<FieldElement> generator_differential(const Presentation& p, const FieldElement& h) {
  std::vector<FieldElement> out;
  const FieldElement num(p.field(), h.num());
  const FieldElement den(p.field(), h.den());
  for (std::size_t g = 0; g < p.generator_count(); ++g) {
    const FieldElement dn(p.field(), h.num().partial(g));
    const FieldElement dd(p.field(), h.den().partial(g));
    out.push_back((den * dn - num * dd) / (den * den));
  }
  return out;
}

// Transcendence degree by the Jacobian criterion: in characteristic zero,
// elements are algebraically independent iff their differentials are
// independent in the Kaehler differentials of the field.
inline std::size_t td_oracle(const Presentation& p, const std::vector<FieldElement>& elements) {
  std::vector<std::vector<FieldElement>> relations;
  for (const auto& f : p.field()->basis().basis) relations.push_back(polynomial_differential(p, f));
  auto all = relations;
  for (const auto& h : elements) all.push_back(generator_differential(p, h));
  return field_rank(all) - field_rank(relations);
}

inline std::size_t td_oracle(const Presentation& p, const std::vector<FieldElement>& tuple,
                             const std::vector<FieldElement>& over) {
  auto both = tuple;
  both.insert(both.end(), over.begin(), over.end());
  return td_oracle(p, both) - td_oracle(p, over);
}

// The exp rule and the Leibniz rule on every relation, from the generator
// values alone.
inline bool satisfies_derivation_rules(const Derivation& d) {
  const auto& p = *d.field;
  const FVector dg = derivation_on_generators(d);
  for (const auto& e : p.exps())
    if (!(dg[e.value] == p.generator(e.value) * dg[e.arg])) return false;
  for (const auto& f : p.field()->basis().basis) {
    const auto df = polynomial_differential(p, f);
    FieldElement sum = p.constant(Rational(0));
    for (std::size_t g = 0; g < df.size(); ++g) sum = sum + df[g] * dg[g];
    if (!sum.is_zero()) return false;
  }
  return true;
}

// Random small integer coordinate vectors over the A-basis.
inline std::vector<QVector> random_coordinates(std::mt19937& rng, std::size_t n, std::size_t count, int height = 2) {
  std::uniform_int_distribution<int> d(-height, height);
  std::vector<QVector> out;
  for (std::size_t i = 0; i < count; ++i) {
    QVector v(n, Rational(0));
    for (auto& x : v) x = d(rng);
    out.push_back(v);
  }
  return out;
}

}  // namespace testing_support
