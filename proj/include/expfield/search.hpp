#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <vector>

#include "expfield/rational.hpp"

namespace expfield {

using IntVector = std::vector<long>;

// Nonzero integer vectors of length n with coprime entries, first nonzero
// entry positive and max |entry| <= bound; ordered by max |entry|, then
// lexicographically.
std::vector<IntVector> primitive_vectors(std::size_t n, long bound);

// A Q-subspace of Q^n given by integer generating rows in row-reduced form
// (unique per subspace).
struct Subspace {
  std::vector<IntVector> rows;
  std::size_t dim() const { return rows.size(); }
};

// Distinct subspaces of Q^n with dimension in [min_dim, max_dim] spanned by
// integer vectors of height <= bound, ordered by dimension and then by the
// first generating tuple (in primitive_vectors order) that spans them. Where
// the tuples are too many, hyperplanes are taken as kernels of primitive
// normal vectors instead; throws ResourceLimit if neither is feasible.
std::vector<Subspace> bounded_subspaces(std::size_t n, long bound, std::size_t min_dim, std::size_t max_dim);

// Row-reduced integer form of the span of the given rows.
Subspace span_of(const std::vector<QVector>& rows, std::size_t n);

// Rows times a coordinate frame: each integer row r gives sum_i r_i frame[i].
std::vector<QVector> combine(const std::vector<IntVector>& rows, const std::vector<QVector>& frame);

// Least index in [0, count) satisfying pred, or nullopt. An exception thrown
// by pred at an index below every match is rethrown.
template <class Pred>
std::optional<std::size_t> first_match_serial(std::size_t count, Pred&& pred) {
  for (std::size_t i = 0; i < count; ++i)
    if (pred(i)) return i;
  return std::nullopt;
}

// Same contract as first_match_serial; candidates run in parallel and later
// candidates are skipped once an earlier match is known.
template <class Pred>
std::optional<std::size_t> first_match_parallel(std::size_t count, Pred&& pred) {
  std::atomic<std::size_t> best{count};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_index = count;
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (i >= best.load()) continue;
    {
      std::lock_guard lock(error_mutex);
      if (i > error_index) continue;
    }
    try {
      if (pred(i)) {
        std::size_t current = best.load();
        while (i < current && !best.compare_exchange_weak(current, i)) {
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error && error_index < best.load()) std::rethrow_exception(error);
  if (best.load() < count) return best.load();
  return std::nullopt;
}

template <class Pred>
std::optional<std::size_t> first_match(std::size_t count, bool parallel, Pred&& pred) {
  return parallel ? first_match_parallel(count, pred) : first_match_serial(count, pred);
}

}  // namespace expfield
