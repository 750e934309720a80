#pragma once

// Smith normal form over Z and the quotient invariants of full-rank sublattices.

#include <cstddef>
#include <string_view>
#include <vector>

#include "rootcomb/linalg.hpp"

namespace rootcomb {

/// Dense integer matrix, row-major, arbitrary precision entries.
struct IntegerMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> data;

  IntegerMatrix() = default;
  IntegerMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Integer(0)) {}
  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows);
  /// "a,b;c,d" -- rows separated by ';', entries by ','.
  static IntegerMatrix parse(std::string_view text);

  Integer& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  bool operator==(const IntegerMatrix&) const = default;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
Integer determinant(const IntegerMatrix& m);

/// U A V = D with U, V unimodular and D diagonal with d_1 | d_2 | ... (all >= 0).
struct SNFResult {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;
  std::vector<Integer> divisors;  // min(rows, cols) diagonal entries of D
};

SNFResult smith_normal_form(const IntegerMatrix& a);

/// A lattice given by a linearly independent basis of rational vectors.
struct Lattice {
  QMatrix basis;  // one row per basis vector
  std::size_t ambient_dim = 0;

  Lattice() = default;
  Lattice(QMatrix b, std::size_t dim);
  std::size_t rank() const { return basis.size(); }
};

/// A Z-basis of the lattice generated by arbitrary (possibly dependent) rational vectors.
Lattice lattice_from_generators(const QMatrix& generators, std::size_t ambient_dim);

/// Elementary divisors of super / sub (all positive). Requires equal rank and
/// every sub basis vector to be an integer combination of the super basis.
std::vector<Integer> quotient_divisors(const Lattice& sub, const Lattice& super);

/// [super : sub], the product of the quotient divisors.
Integer lattice_index(const Lattice& sub, const Lattice& super);

}  // namespace rootcomb
