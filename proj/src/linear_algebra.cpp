#include "expfield/linear_algebra.hpp"

#include <numeric>

namespace expfield {

Integer lcm_of_denominators(const QVector& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

QVector primitive_part(const QVector& v) {
  const Integer l = lcm_of_denominators(v);
  Integer g = 0;
  for (const auto& q : v) {
    Integer scaled = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
  }
  if (g == 0) return v;
  QVector out;
  out.reserve(v.size());
  for (const auto& q : v) out.emplace_back(Rational(q * l / g));
  return out;
}

std::size_t q_rank(const QMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < cols; ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }
  Integer previous = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        Integer t = a[rank][col] * a[r][c] - a[r][col] * a[rank][c];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
        a[r][c] = t;
      }
      a[r][col] = 0;
    }
    previous = a[rank][col];
    ++rank;
  }
  return rank;
}

std::vector<QVector> q_kernel(const QMatrix& m) {
  return kernel_basis<Rational>(m, Rational(0), Rational(1));
}

std::optional<QVector> q_solve(const QMatrix& m, const QVector& b) {
  return solve_linear<Rational>(m, b, Rational(0));
}

QMatrix q_rref(const QMatrix& m) {
  QMatrix work = m;
  const auto pivots = rref_in_place(work);
  QMatrix out;
  for (std::size_t r = 0; r < pivots.size(); ++r) out.append_row(work.row(r));
  return out;
}

QMatrix matrix_from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(0, 0);
  if (rows.empty()) return QMatrix(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

}  // namespace expfield
