#pragma once

// Exact rational linear algebra on small dense matrices.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rootcomb {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;
/// Row-major: a vector of rows.
using QMatrix = std::vector<QVector>;

/// Canonical "p/q" (q > 0, reduced) or "p" for integers.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p", "-p" or "p/q". Anything else (decimals, junk, q = 0) throws InputError.
Rational parse_rational(std::string_view text);
/// Comma-separated list of rationals, e.g. "1/2,-1,0".
QVector parse_rational_list(std::string_view text);

bool is_integer(const Rational& q);
/// True iff q lies in (1/n)Z.
bool in_fraction_lattice(const Rational& q, const Integer& n);

Integer lcm(const Integer& a, const Integer& b);

QVector zero_vector(std::size_t n);
Rational dot(const QVector& a, const QVector& b);
bool is_zero(const QVector& v);

struct Echelon {
  QMatrix rows;                  // nonzero rows of the reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form; `cols` is needed when `m` has no rows.
Echelon rref(const QMatrix& m, std::size_t cols);
std::size_t rank(const QMatrix& m, std::size_t cols);
bool is_independent(const QMatrix& rows, std::size_t cols);

/// Basis of {x : m x = 0}: one vector per free column, with a 1 in that
/// column and the pivot values read off the reduced echelon form.
QMatrix nullspace(const QMatrix& m, std::size_t cols);

/// Some x with a x = b, or nullopt when the system is inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b, std::size_t cols);

/// Coefficients c with sum_i c_i rows[i] = v, when v lies in the row span.
std::optional<QVector> express_in_rows(const QMatrix& rows, const QVector& v, std::size_t cols);

/// v in the row space of `rows`.
bool in_row_span(const QMatrix& rows, const QVector& v, std::size_t cols);

Rational determinant(QMatrix m);
std::optional<QMatrix> inverse(const QMatrix& m);
QMatrix transpose(const QMatrix& m, std::size_t cols);
QVector mat_vec(const QMatrix& m, const QVector& v);

}  // namespace rootcomb
