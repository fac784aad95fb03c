#include "expfield/predimension.hpp"

#include "expfield/linear_algebra.hpp"

namespace expfield {

namespace {

std::size_t rank_of(const std::vector<QVector>& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  return q_rank(matrix_from_rows(rows, cols));
}

}  // namespace

std::size_t td(const Presentation& p, const std::vector<FieldElement>& tuple, const Subfield& over) {
  std::vector<FieldElement> base = p.subfield_elements(over);
  std::vector<FieldElement> all = base;
  all.insert(all.end(), tuple.begin(), tuple.end());
  return p.td_absolute(all) - p.td_absolute(base);
}

std::size_t ldim_of_coordinates(const std::vector<QVector>& tuple, const std::vector<QVector>& over) {
  if (tuple.empty()) return 0;
  const std::size_t cols = tuple.front().size();
  std::vector<QVector> all = over;
  all.insert(all.end(), tuple.begin(), tuple.end());
  return rank_of(all, cols) - rank_of(over, cols);
}

std::size_t ldim_q(const Presentation& p, const std::vector<FieldElement>& tuple, const Subfield& over) {
  std::vector<QVector> coords;
  for (const auto& h : tuple) coords.push_back(p.a_coordinates(h));
  return ldim_of_coordinates(coords, p.subfield_a_part(over));
}

long delta_of_coordinates(const Presentation& p, const std::vector<QVector>& coords, const Subfield& over) {
  std::vector<FieldElement> elements;
  for (const auto& c : coords) {
    elements.push_back(p.a_element(c));
    elements.push_back(p.exp_of(c));
  }
  const auto t = td(p, elements, over);
  const auto l = ldim_of_coordinates(coords, p.subfield_a_part(over));
  return static_cast<long>(t) - static_cast<long>(l);
}

DeltaReport delta(const Presentation& p, const std::vector<FieldElement>& tuple, const Subfield& over) {
  DeltaReport r;
  std::vector<QVector> coords;
  std::vector<FieldElement> elements;
  for (const auto& h : tuple) {
    r.tuple.push_back(h.to_string());
    coords.push_back(p.a_coordinates(h));
    elements.push_back(h);
    elements.push_back(p.exp_of(coords.back()));
  }
  r.over = describe_subfield(p, over);
  r.td_value = td(p, elements, over);
  r.ldim_value = ldim_of_coordinates(coords, p.subfield_a_part(over));
  r.delta = static_cast<long>(r.td_value) - static_cast<long>(r.ldim_value);
  return r;
}

std::string describe_coordinates(const Presentation& p, const QVector& coords) {
  return p.a_element(coords).to_string();
}

std::string describe_subfield(const Presentation& p, const Subfield& s) {
  if (s.generators.empty() && s.span.empty()) return "Q";
  std::string out = "{";
  bool first = true;
  for (auto g : s.generators) {
    out += (first ? "" : ", ") + p.generators()[g];
    first = false;
  }
  out += "}";
  if (!s.span.empty()) {
    out += " + span(";
    for (std::size_t i = 0; i < s.span.size(); ++i) out += (i ? ", " : "") + describe_coordinates(p, s.span[i]);
    out += ")";
  }
  return out;
}

}  // namespace expfield
