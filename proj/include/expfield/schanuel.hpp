#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expfield/differentials.hpp"
#include "expfield/predimension.hpp"
#include "expfield/search.hpp"

namespace expfield {

struct SearchOptions {
  long bound = 3;
  bool parallel = false;
};

// The minimum of delta did not match the Xi-rank dimension (the bound is too
// small to reach the minimum).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

Subfield full_subfield(const Presentation& p);

// Vectors from `candidates` that extend the span of `known`, chosen greedily.
std::vector<QVector> relative_frame(const std::vector<QVector>& known, const std::vector<QVector>& candidates,
                                    std::size_t n);

struct StrengthReport {
  std::string lower, upper;
  long bound = 0;
  bool strong = true;  // strong up to the bound
  std::optional<DeltaReport> witness;
  std::vector<QVector> witness_coordinates;
  std::size_t new_dimension = 0;  // ldim A(upper) over A(lower)
  std::size_t candidates = 0;
};

// Every subspace of A(upper) over A(lower) spanned by integer combinations
// (height <= bound) of a frame of new A-elements has delta >= 0 over lower.
StrengthReport is_strong(const PresentationPtr& p, const Subfield& lower, const Subfield& upper,
                         const SearchOptions& options = {});
// f1 must be the named base of f2.
StrengthReport is_strong(const PresentationPtr& f1, const PresentationPtr& f2, const SearchOptions& options = {});

struct AxCheckReport {
  bool closed = true;  // C was already cl-closed
  Subfield used;       // C, or cl(C) when C was not closed
  long delta = 0;
  std::size_t dim = 0;
  bool holds = true;
};
// delta(tuple/C) >= dim(tuple/C). A C that is not cl-closed is replaced by
// its closure, or rejected with InputError when strict.
AxCheckReport ax_inequality_check(const PresentationPtr& p, const Subfield& c, const FVector& tuple, bool strict = false);

struct DimReport {
  long min_delta = 0;
  std::size_t xi_rank = 0;
  Subfield c0;
  std::vector<QVector> argmin;  // the extra tuple reaching the minimum
  std::size_t candidates = 0;
};
// min delta(tuple y / cl(0)) over bounded y, checked against the Xi-rank of
// the tuple over cl(0); throws DimensionMismatch when they differ.
DimReport dim_via_min_delta(const PresentationPtr& p, const FVector& tuple, const SearchOptions& options = {});

struct ChainStep {
  Subfield field;
  std::vector<QVector> adjoined;
  long delta = 0;
  std::size_t td_step = 0;
  bool strong = true;
};
struct ChainReport {
  std::vector<ChainStep> steps;
  bool all_strong = true;
  bool transitive = true;
  bool complete = true;  // the last field has all of A(F)
};
// Base = G0 < G1 < ... < Gk with A(Gk) = A(F): each step adjoins the first
// new basis element with a delta-minimal tuple. Throws InputError unless F
// is egg and strong over its base up to the bound.
ChainReport decompose_chain(const PresentationPtr& p, const SearchOptions& options = {});

struct EssentialReport {
  std::vector<std::string> tuple;
  long delta = 0;
  bool essential = true;  // up to the bound
  std::vector<std::string> counter;
  std::vector<QVector> counter_coordinates;
  long counter_delta = 0;
  // For essential tuples with delta < 0: cl membership of each entry over
  // the same constants.
  std::optional<std::vector<bool>> cl_members;
  std::size_t candidates = 0;
};
EssentialReport essential_check(const PresentationPtr& p, const FVector& tuple, const Subfield& over,
                                const SearchOptions& options = {});

}  // namespace expfield
