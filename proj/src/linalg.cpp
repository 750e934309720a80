#include "rootcomb/linalg.hpp"

#include <algorithm>
#include <utility>

#include "rootcomb/errors.hpp"

namespace rootcomb {

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

bool is_digit_run(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!is_digit_run(num) || (slash != std::string_view::npos && !is_digit_run(den))) {
    throw InputError("not an exact rational: '" + std::string(text) + "'");
  }
  Integer n(std::string(num), 10);
  Integer d(1);
  if (slash != std::string_view::npos) {
    d = Integer(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  }
  if (!s.empty() && s.front() == '-') n = -n;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

QVector parse_rational_list(std::string_view text) {
  QVector out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

bool in_fraction_lattice(const Rational& q, const Integer& n) {
  Rational scaled = q * Rational(n);
  return is_integer(scaled);
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

QVector zero_vector(std::size_t n) { return QVector(n, Rational(0)); }

Rational dot(const QVector& a, const QVector& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

Echelon rref(const QMatrix& m, std::size_t cols) {
  QMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    Rational p = a[row][col];
    for (auto& x : a[row]) x /= p;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t c = 0; c < cols; ++c) a[r][c] -= f * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  a.resize(row);
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const QMatrix& m, std::size_t cols) { return rref(m, cols).rows.size(); }

bool is_independent(const QMatrix& rows, std::size_t cols) { return rank(rows, cols) == rows.size(); }

QMatrix nullspace(const QMatrix& m, std::size_t cols) {
  Echelon e = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  QMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector v = zero_vector(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b, std::size_t cols) {
  QMatrix aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    QVector row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  Echelon e = rref(aug, cols + 1);
  QVector x = zero_vector(cols);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == cols) return std::nullopt;
    x[e.pivots[r]] = e.rows[r][cols];
  }
  return x;
}

std::optional<QVector> express_in_rows(const QMatrix& rows, const QVector& v, std::size_t cols) {
  // Solve rows^T c = v.
  QMatrix t = transpose(rows, cols);
  return solve(t, v, rows.size());
}

bool in_row_span(const QMatrix& rows, const QVector& v, std::size_t cols) {
  return express_in_rows(rows, v, cols).has_value();
}

Rational determinant(QMatrix a) {
  const std::size_t n = a.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) return Rational(0);
    if (sel != col) {
      std::swap(a[sel], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  const std::size_t n = m.size();
  QMatrix aug(n, zero_vector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  Echelon e = rref(aug, 2 * n);
  if (e.rows.size() < n || e.pivots[n - 1] >= n) return std::nullopt;
  QMatrix inv(n, zero_vector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
  return inv;
}

QMatrix transpose(const QMatrix& m, std::size_t cols) {
  QMatrix t(cols, zero_vector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

QVector mat_vec(const QMatrix& m, const QVector& v) {
  QVector out;
  out.reserve(m.size());
  for (const auto& row : m) out.push_back(dot(row, v));
  return out;
}

}  // namespace rootcomb
