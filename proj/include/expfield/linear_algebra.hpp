#pragma once

#include <optional>
#include <vector>

#include "expfield/matrix.hpp"
#include "expfield/rational.hpp"

namespace expfield {

// Rank over Q. Rows are scaled to integers and reduced by fraction-free
// (Bareiss) elimination, so no intermediate rational arithmetic is needed.
std::size_t q_rank(const QMatrix& m);

// Basis of the right kernel, each vector normalized so its first nonzero
// entry is 1. Empty iff q_rank(m) == m.cols().
std::vector<QVector> q_kernel(const QMatrix& m);

// A solution of m x = b with free coordinates zero, or nullopt.
std::optional<QVector> q_solve(const QMatrix& m, const QVector& b);

// Reduced row echelon form with zero rows dropped. Two row sets span the same
// subspace iff their q_rref results are equal.
QMatrix q_rref(const QMatrix& m);

QMatrix matrix_from_rows(const std::vector<QVector>& rows, std::size_t cols);

}  // namespace expfield
