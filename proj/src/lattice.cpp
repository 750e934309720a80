#include "rootcomb/lattice.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "rootcomb/errors.hpp"

namespace rootcomb {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  if (rows.empty() || rows.front().empty()) throw InputError("matrix must have at least one entry");
  IntegerMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) throw InputError("ragged matrix");
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntegerMatrix IntegerMatrix::parse(std::string_view text) {
  std::vector<std::vector<Integer>> rows;
  std::size_t start = 0;
  while (true) {
    auto semi = text.find(';', start);
    std::string_view row = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    std::vector<Integer> entries;
    for (const auto& q : parse_rational_list(row)) {
      if (!is_integer(q)) throw InputError("matrix entries must be integers");
      entries.push_back(q.get_num());
    }
    if (entries.empty()) throw InputError("empty matrix row");
    rows.push_back(std::move(entries));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  IntegerMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) throw InputError("ragged matrix: every row needs the same length");
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols != b.rows) throw InputError("matrix dimensions do not match");
  IntegerMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Integer determinant(const IntegerMatrix& m) {
  if (m.rows != m.cols) throw InputError("determinant of a non-square matrix");
  QMatrix q(m.rows, zero_vector(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) q[i][j] = m(i, j);
  Rational d = determinant(std::move(q));
  return d.get_num();
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows; ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= q * row_src
void add_row(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t j = 0; j < m.cols; ++j) m(dst, j) -= q * m(src, j);
}

void add_col(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t i = 0; i < m.rows; ++i) m(i, dst) -= q * m(i, src);
}

}  // namespace

SNFResult smith_normal_form(const IntegerMatrix& a) {
  SNFResult res{IntegerMatrix::identity(a.rows), a, IntegerMatrix::identity(a.cols), {}};
  IntegerMatrix& d = res.D;
  const std::size_t n = std::min(a.rows, a.cols);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool any = false;
      std::size_t pi = t, pj = t;
      Integer best;
      for (std::size_t i = t; i < d.rows; ++i)
        for (std::size_t j = t; j < d.cols; ++j) {
          if (d(i, j) == 0) continue;
          Integer v = abs(d(i, j));
          if (!any || v < best) {
            best = v;
            pi = i;
            pj = j;
            any = true;
          }
        }
      if (!any) break;
      swap_rows(d, t, pi);
      swap_rows(res.U, t, pi);
      swap_cols(d, t, pj);
      swap_cols(res.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);  // truncating division
        add_row(d, i, t, q);
        add_row(res.U, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        add_col(d, j, t, q);
        add_col(res.V, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce the divisibility chain: fold an offending row into row t.
      bool divides = true;
      for (std::size_t i = t + 1; i < d.rows && divides; ++i)
        for (std::size_t j = t + 1; j < d.cols; ++j) {
          if (d(i, j) % d(t, t) != 0) {
            add_row(d, t, i, Integer(-1));
            add_row(res.U, t, i, Integer(-1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < d.cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < res.U.cols; ++j) res.U(t, j) = -res.U(t, j);
    }
  }
  for (std::size_t t = 0; t < n; ++t) res.divisors.push_back(d(t, t));
  return res;
}

Lattice::Lattice(QMatrix b, std::size_t dim) : basis(std::move(b)), ambient_dim(dim) {
  for (const auto& v : basis)
    if (v.size() != ambient_dim) throw InputError("lattice basis vector has the wrong dimension");
  if (!is_independent(basis, ambient_dim)) throw InputError("lattice basis is linearly dependent");
}

Lattice lattice_from_generators(const QMatrix& generators, std::size_t ambient_dim) {
  Integer denom(1);
  for (const auto& v : generators) {
    if (v.size() != ambient_dim) throw InputError("generator has the wrong dimension");
    for (const auto& q : v) denom = lcm(denom, q.get_den());
  }
  std::vector<std::vector<Integer>> rows;
  for (const auto& v : generators) {
    std::vector<Integer> row;
    for (const auto& q : v) {
      Rational s = q * Rational(denom);
      row.push_back(s.get_num());
    }
    rows.push_back(std::move(row));
  }
  // Integer row echelon form by repeated Euclidean reduction in each column.
  std::size_t r = 0;
  for (std::size_t c = 0; c < ambient_dim && r < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q = rows[i][c] / rows[r][c];
        for (std::size_t j = 0; j < ambient_dim; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) {
        ++r;
        break;
      }
    }
  }
  QMatrix basis;
  for (std::size_t i = 0; i < r; ++i) {
    QVector v(ambient_dim);
    for (std::size_t j = 0; j < ambient_dim; ++j) {
      v[j] = Rational(rows[i][j], denom);
      v[j].canonicalize();
    }
    basis.push_back(std::move(v));
  }
  return Lattice(std::move(basis), ambient_dim);
}

std::vector<Integer> quotient_divisors(const Lattice& sub, const Lattice& super) {
  if (sub.ambient_dim != super.ambient_dim) throw InputError("lattices live in different ambient spaces");
  if (sub.rank() != super.rank())
    throw InputError("rank mismatch: sublattice has rank " + std::to_string(sub.rank()) + ", superlattice " +
                     std::to_string(super.rank()));
  const std::size_t k = sub.rank();
  if (k == 0) return {};
  IntegerMatrix change(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    auto coeffs = express_in_rows(super.basis, sub.basis[i], super.ambient_dim);
    if (!coeffs) throw InputError("sublattice vector lies outside the span of the superlattice");
    for (std::size_t j = 0; j < k; ++j) {
      if (!is_integer((*coeffs)[j])) throw InputError("sublattice is not contained in the superlattice");
      change(i, j) = (*coeffs)[j].get_num();
    }
  }
  return smith_normal_form(change).divisors;
}

Integer lattice_index(const Lattice& sub, const Lattice& super) {
  Integer idx(1);
  for (const auto& d : quotient_divisors(sub, super)) idx *= d;
  return idx;
}

}  // namespace rootcomb
