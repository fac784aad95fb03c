#pragma once

#include <string>
#include <vector>

#include "expfield/presentation.hpp"

namespace expfield {

struct DeltaReport {
  std::vector<std::string> tuple;
  std::string over;
  std::size_t td_value = 0;
  std::size_t ldim_value = 0;
  long delta = 0;
};

// td(tuple / over) = td(tuple u over) - td(over).
std::size_t td(const Presentation& p, const std::vector<FieldElement>& tuple, const Subfield& over);

// Dimension of span(tuple) + A(over) modulo A(over). Throws ExpUndefined when
// an entry is not in A(F).
std::size_t ldim_q(const Presentation& p, const std::vector<FieldElement>& tuple, const Subfield& over);
std::size_t ldim_of_coordinates(const std::vector<QVector>& tuple, const std::vector<QVector>& over);

// delta(x / over) = td(x, exp(x) / over) - ldim_Q(x / over).
DeltaReport delta(const Presentation& p, const std::vector<FieldElement>& tuple, const Subfield& over);
long delta_of_coordinates(const Presentation& p, const std::vector<QVector>& coords, const Subfield& over);

std::string describe_subfield(const Presentation& p, const Subfield& s);
std::string describe_coordinates(const Presentation& p, const QVector& coords);

}  // namespace expfield
