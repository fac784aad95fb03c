#include "expfield/schanuel.hpp"

#include <algorithm>
#include <set>

#include "expfield/linear_algebra.hpp"

namespace expfield {

namespace {

std::size_t rank_of(const std::vector<QVector>& rows, std::size_t n) {
  if (rows.empty()) return 0;
  return q_rank(matrix_from_rows(rows, n));
}

std::vector<QVector> units(std::size_t n) {
  std::vector<QVector> out;
  for (std::size_t j = 0; j < n; ++j) {
    QVector e(n, Rational(0));
    e[j] = 1;
    out.push_back(e);
  }
  return out;
}

std::vector<QVector> joined(std::vector<QVector> a, const std::vector<QVector>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<QVector> coordinates_of(const Presentation& p, const FVector& tuple) {
  std::vector<QVector> out;
  for (const auto& h : tuple) out.push_back(p.a_coordinates(h));
  return out;
}

// delta for every candidate, in candidate order.
std::vector<long> all_deltas(const Presentation& p, const std::vector<std::vector<QVector>>& tuples, const Subfield& over,
                             bool parallel) {
  std::vector<long> out(tuples.size(), 0);
  if (!parallel) {
    for (std::size_t i = 0; i < tuples.size(); ++i) out[i] = delta_of_coordinates(p, tuples[i], over);
    return out;
  }
  // Errors are reported for the least failing index, as in a serial run.
  std::exception_ptr error;
  std::size_t error_index = tuples.size();
  const long n = static_cast<long>(tuples.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      out[i] = delta_of_coordinates(p, tuples[i], over);
    } catch (...) {
#pragma omp critical(expfield_delta_error)
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<std::string> describe(const Presentation& p, const std::vector<QVector>& coords) {
  std::vector<std::string> out;
  for (const auto& c : coords) out.push_back(describe_coordinates(p, c));
  return out;
}

}  // namespace

Subfield full_subfield(const Presentation& p) {
  Subfield s;
  for (std::size_t g = 0; g < p.generator_count(); ++g) s.generators.push_back(g);
  return s;
}

std::vector<QVector> relative_frame(const std::vector<QVector>& known, const std::vector<QVector>& candidates,
                                    std::size_t n) {
  std::vector<QVector> span = known;
  std::size_t rank = rank_of(span, n);
  std::vector<QVector> frame;
  for (const auto& v : candidates) {
    span.push_back(v);
    const std::size_t r = rank_of(span, n);
    if (r > rank) {
      rank = r;
      frame.push_back(v);
    } else {
      span.pop_back();
    }
  }
  return frame;
}

StrengthReport is_strong(const PresentationPtr& p, const Subfield& lower, const Subfield& upper,
                         const SearchOptions& options) {
  StrengthReport r;
  r.lower = describe_subfield(*p, lower);
  r.upper = describe_subfield(*p, upper);
  r.bound = options.bound;
  const std::size_t n = p->basis_size();
  const auto frame = relative_frame(p->subfield_a_part(lower), p->subfield_a_part(upper), n);
  r.new_dimension = frame.size();
  const auto spaces = bounded_subspaces(frame.size(), options.bound, 1, frame.size());
  r.candidates = spaces.size();
  const auto hit = first_match(spaces.size(), options.parallel, [&](std::size_t i) {
    return delta_of_coordinates(*p, combine(spaces[i].rows, frame), lower) < 0;
  });
  if (hit) {
    r.strong = false;
    r.witness_coordinates = combine(spaces[*hit].rows, frame);
    FVector tuple;
    for (const auto& c : r.witness_coordinates) tuple.push_back(p->a_element(c));
    r.witness = delta(*p, tuple, lower);
  }
  return r;
}

StrengthReport is_strong(const PresentationPtr& f1, const PresentationPtr& f2, const SearchOptions& options) {
  if (f1->name() != f2->data().base_name)
    throw InputError(f2->name() + " is not declared over " + f1->name() + " (use `base " + f1->name() + ";`)");
  StrengthReport r = is_strong(f2, f2->base_subfield(), full_subfield(*f2), options);
  r.lower = f1->name();
  r.upper = f2->name();
  return r;
}

AxCheckReport ax_inequality_check(const PresentationPtr& p, const Subfield& c, const FVector& tuple, bool strict) {
  AxCheckReport r;
  const Subfield cl = closure(p, DiffBase::of(c));
  std::set<std::size_t> gens(c.generators.begin(), c.generators.end());
  for (const auto& e : p->exps())
    if (gens.count(e.arg)) gens.insert(e.value);
  const auto a_part = p->subfield_a_part(c);
  const std::size_t n = p->basis_size();
  r.closed = std::all_of(cl.generators.begin(), cl.generators.end(), [&](std::size_t g) { return gens.count(g) > 0; }) &&
             rank_of(joined(a_part, cl.span), n) == rank_of(a_part, n);
  if (!r.closed && strict)
    throw InputError(describe_subfield(*p, c) + " is not cl-closed; its closure is " + describe_subfield(*p, cl));
  r.used = r.closed ? c : cl;
  r.delta = delta(*p, tuple, r.used).delta;
  r.dim = XiSystem(p, DiffBase::of(r.used)).rank_of(tuple);
  r.holds = r.delta >= static_cast<long>(r.dim);
  return r;
}

DimReport dim_via_min_delta(const PresentationPtr& p, const FVector& tuple, const SearchOptions& options) {
  DimReport r;
  r.c0 = closure(p, DiffBase{});
  const std::size_t n = p->basis_size();
  const auto coords = coordinates_of(*p, tuple);
  const auto frame = relative_frame(joined(p->subfield_a_part(r.c0), coords), units(n), n);
  const auto spaces = bounded_subspaces(frame.size(), options.bound, 0, frame.size());
  r.candidates = spaces.size();
  std::vector<std::vector<QVector>> tuples;
  for (const auto& s : spaces) tuples.push_back(joined(coords, combine(s.rows, frame)));
  const auto deltas = all_deltas(*p, tuples, r.c0, options.parallel);
  const auto best = std::min_element(deltas.begin(), deltas.end()) - deltas.begin();
  r.min_delta = deltas[static_cast<std::size_t>(best)];
  r.argmin = combine(spaces[static_cast<std::size_t>(best)].rows, frame);
  r.xi_rank = XiSystem(p, DiffBase::of(r.c0)).rank_of(tuple);
  if (r.min_delta != static_cast<long>(r.xi_rank))
    throw DimensionMismatch("minimum delta " + std::to_string(r.min_delta) + " over bounded extensions differs from the Xi-rank dimension " +
                            std::to_string(r.xi_rank) + " (bound " + std::to_string(options.bound) + ")");
  return r;
}

ChainReport decompose_chain(const PresentationPtr& p, const SearchOptions& options) {
  if (!p->egg()) throw InputError(p->name() + " is not marked egg");
  const Subfield lower = p->base_subfield();
  const Subfield upper = full_subfield(*p);
  if (!is_strong(p, lower, upper, options).strong)
    throw InputError(p->name() + " is not strong over its base up to bound " + std::to_string(options.bound));
  const std::size_t n = p->basis_size();
  const auto total = units(n);
  ChainReport chain;
  std::vector<Subfield> fields{lower};
  Subfield g = lower;
  while (true) {
    const auto known = p->subfield_a_part(g);
    const std::size_t rank = rank_of(known, n);
    std::optional<QVector> next;
    for (const auto& e : total) {
      if (rank_of(joined(known, {e}), n) > rank) {
        next = e;
        break;
      }
    }
    if (!next) break;
    const auto frame = relative_frame(joined(known, {*next}), total, n);
    const auto spaces = bounded_subspaces(frame.size(), options.bound, 0, frame.size());
    std::vector<std::vector<QVector>> tuples;
    for (const auto& s : spaces) tuples.push_back(joined({*next}, combine(s.rows, frame)));
    const auto deltas = all_deltas(*p, tuples, g, options.parallel);
    // Ties go to the lexicographically least coordinate matrix.
    const long least = *std::min_element(deltas.begin(), deltas.end());
    std::size_t best = tuples.size();
    for (std::size_t i = 0; i < tuples.size(); ++i)
      if (deltas[i] == least && (best == tuples.size() || tuples[i] < tuples[best])) best = i;

    ChainStep step;
    step.adjoined = tuples[best];
    step.delta = deltas[best];
    step.field = g;
    for (const auto& v : step.adjoined) step.field.span.push_back(v);
    step.td_step = td(*p, p->subfield_elements(step.field), g);
    step.strong = is_strong(p, g, step.field, options).strong;
    chain.all_strong = chain.all_strong && step.strong;
    g = step.field;
    fields.push_back(g);
    chain.steps.push_back(std::move(step));
  }
  chain.complete = rank_of(p->subfield_a_part(g), n) == n;
  for (std::size_t i = 0; i + 1 < fields.size(); ++i)
    chain.transitive = chain.transitive && is_strong(p, fields[i], fields.back(), options).strong;
  return chain;
}

EssentialReport essential_check(const PresentationPtr& p, const FVector& tuple, const Subfield& over,
                                const SearchOptions& options) {
  EssentialReport r;
  const std::size_t n = p->basis_size();
  const auto coords = coordinates_of(*p, tuple);
  r.tuple = describe(*p, coords);
  r.delta = delta_of_coordinates(*p, coords, over);
  const auto frame = relative_frame({}, coords, n);
  const std::size_t dim = frame.size();
  const auto spaces = dim < 2 ? std::vector<Subspace>{} : bounded_subspaces(dim, options.bound, 1, dim - 1);
  r.candidates = spaces.size();
  const auto hit = first_match(spaces.size(), options.parallel, [&](std::size_t i) {
    return delta_of_coordinates(*p, combine(spaces[i].rows, frame), over) < r.delta;
  });
  if (hit) {
    r.essential = false;
    r.counter_coordinates = combine(spaces[*hit].rows, frame);
    r.counter = describe(*p, r.counter_coordinates);
    r.counter_delta = delta_of_coordinates(*p, r.counter_coordinates, over);
    return r;
  }
  if (r.delta < 0) {
    const XiSystem sys(p, DiffBase::of(over));
    std::vector<bool> members;
    for (const auto& h : tuple) members.push_back(sys.kills(h));
    r.cl_members = members;
  }
  return r;
}

}  // namespace expfield
