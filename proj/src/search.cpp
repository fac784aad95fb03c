#include "expfield/search.hpp"

#include <numeric>
#include <set>

#include "expfield/errors.hpp"
#include "expfield/linear_algebra.hpp"

namespace expfield {

namespace {

// Tuples of distinct candidates examined per dimension before switching to
// normal vectors.
constexpr double kTupleLimit = 250000;

long gcd_of(const IntVector& v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

IntVector to_ints(const QVector& v) {
  IntVector out;
  for (const auto& q : v) {
    if (!is_integral(q) || !q.get_num().fits_slong_p()) throw ResourceLimit("subspace coordinates overflow");
    out.push_back(q.get_num().get_si());
  }
  return out;
}

QVector to_rationals(const IntVector& v) {
  QVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

double choose(std::size_t n, std::size_t k) {
  double c = 1;
  for (std::size_t i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c;
}

}  // namespace

std::vector<IntVector> primitive_vectors(std::size_t n, long bound) {
  std::vector<IntVector> out;
  if (n == 0) return out;
  for (long h = 1; h <= bound; ++h) {
    // Odometer over [-h, h]^n in lexicographic order.
    IntVector v(n, -h);
    while (true) {
      long height = 0;
      std::size_t lead = n;
      for (std::size_t i = 0; i < n; ++i) {
        height = std::max(height, v[i] < 0 ? -v[i] : v[i]);
        if (lead == n && v[i] != 0) lead = i;
      }
      if (height == h && lead < n && v[lead] > 0 && gcd_of(v) == 1) out.push_back(v);
      std::size_t i = n;
      while (i > 0 && v[i - 1] == h) v[--i] = -h;
      if (i == 0) break;
      ++v[i - 1];
    }
  }
  return out;
}

Subspace span_of(const std::vector<QVector>& rows, std::size_t n) {
  Subspace s;
  if (rows.empty()) return s;
  const QMatrix r = q_rref(matrix_from_rows(rows, n));
  for (std::size_t i = 0; i < r.rows(); ++i) {
    QVector row(r.row(i).begin(), r.row(i).end());
    s.rows.push_back(to_ints(primitive_part(row)));
  }
  return s;
}

std::vector<QVector> combine(const std::vector<IntVector>& rows, const std::vector<QVector>& frame) {
  std::vector<QVector> out;
  for (const auto& r : rows) {
    QVector v(frame.empty() ? 0 : frame.front().size(), Rational(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] += frame[i][c] * r[i];
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Subspace> bounded_subspaces(std::size_t n, long bound, std::size_t min_dim, std::size_t max_dim) {
  std::vector<Subspace> out;
  max_dim = std::min(max_dim, n);
  if (min_dim > max_dim) return out;
  const auto vectors = primitive_vectors(n, bound);
  for (std::size_t d = min_dim; d <= max_dim; ++d) {
    if (d == 0) {
      out.push_back({});
      continue;
    }
    if (d == n) {
      Subspace full;
      for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n, 0);
        e[i] = 1;
        full.rows.push_back(e);
      }
      out.push_back(full);
      continue;
    }
    if (d == 1) {
      for (const auto& v : vectors) out.push_back({{v}});
      continue;
    }
    std::set<std::vector<IntVector>> seen;
    if (choose(vectors.size(), d) <= kTupleLimit) {
      std::vector<std::size_t> pick(d);
      std::iota(pick.begin(), pick.end(), 0);
      while (true) {
        std::vector<QVector> rows;
        for (auto i : pick) rows.push_back(to_rationals(vectors[i]));
        Subspace s = span_of(rows, n);
        if (s.dim() == d && seen.insert(s.rows).second) out.push_back(std::move(s));
        // Next combination in lexicographic order.
        std::size_t k = d;
        while (k > 0 && pick[k - 1] == vectors.size() - d + k - 1) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t j = k; j < d; ++j) pick[j] = pick[j - 1] + 1;
      }
    } else if (d + 1 == n) {
      for (const auto& normal : vectors) {
        QMatrix m(1, n);
        for (std::size_t c = 0; c < n; ++c) m(0, c) = Rational(normal[c]);
        Subspace s = span_of(q_kernel(m), n);
        if (seen.insert(s.rows).second) out.push_back(std::move(s));
      }
    } else {
      throw ResourceLimit("too many candidate subspaces of dimension " + std::to_string(d) + " in Q^" +
                          std::to_string(n) + " at bound " + std::to_string(bound));
    }
  }
  return out;
}

}  // namespace expfield
